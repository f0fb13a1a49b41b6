#ifndef SENSIVAR_ODE_HPP
#define SENSIVAR_ODE_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "sensivar/matrix.hpp"

namespace sensivar {

// Deterministic dynamical-model support: the discrete logistic map and a
// fixed-step classical Runge-Kutta integrator with time-point extraction.

// Iterates X <- X + r X (1 - X/K) exactly steps+1 times starting at n0
// (a 0..steps loop, so steps=20 applies the update 21 times).
double logistic_map(double r, double k, double n0, std::int64_t steps);

struct TimeGrid {
    std::vector<double> times;       // strictly increasing integration grid
    std::vector<double> time_output; // subset of times to record

    void validate() const;
};

TimeGrid make_time_grid(double from, double to, double step,
                        std::vector<double> time_output);

using Derivative =
    std::function<void(double t, std::span<const double> state, std::span<double> dstate)>;

// Classical 4th-order Runge-Kutta over grid.times; returns one row per
// time_output entry. Throws DivergenceError (with the time stamp) when a
// non-finite state appears.
Matrix rk4_integrate(const Derivative& derivative, std::span<const double> state0,
                     const TimeGrid& grid);

struct BudwormParams {
    double r_b = 0.0, k = 0.0, beta = 0.0, alpha = 0.0, r_s = 0.0;
    double k_s = 0.0, k_e = 0.0, r_e = 0.0, p = 0.0, t_e = 0.0;

    static BudwormParams from_row(std::span<const double> row);
    void validate() const;
};

// State is (B, S, E): budworm density, branch density, energy reserve.
void budworm_derivative(std::span<const double> state, const BudwormParams& params,
                        std::span<double> dstate);

inline constexpr std::array<double, 3> kBudwormInitialState = {0.1, 7.0, 1.0};

// Fixed integration step for the budworm system. The predation term makes
// the B equation the fastest mode near the initial state; over the full
// parameter box |df_B/dB| stays below ~180/month, so 1/128 month keeps the
// classical RK4 update inside its stability interval with margin.
inline constexpr double kBudwormStep = 1.0 / 128.0;

// Integrates the budworm system over the grid for one parameter row.
Matrix budworm_trajectory(const BudwormParams& params, const TimeGrid& grid,
                          std::span<const double> state0 = kBudwormInitialState);

} // namespace sensivar

#endif
