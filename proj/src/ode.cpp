#include "sensivar/ode.hpp"

#include <algorithm>
#include <cmath>

#include "sensivar/errors.hpp"

namespace sensivar {

double logistic_map(double r, double k, double n0, std::int64_t steps) {
    if (steps < 0) throw ConfigError("logistic map step count must be non-negative");
    double x = n0;
    for (std::int64_t i = 0; i <= steps; ++i) x = x + r * x * (1.0 - x / k);
    return x;
}

void TimeGrid::validate() const {
    if (times.empty() || time_output.empty())
        throw ConfigError("time grid and output times must be non-empty");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw ConfigError("integration grid must be strictly increasing");
    for (double t : time_output)
        if (std::find(times.begin(), times.end(), t) == times.end())
            throw ConfigError("output time " + std::to_string(t) +
                              " is not on the integration grid");
}

TimeGrid make_time_grid(double from, double to, double step, std::vector<double> time_output) {
    if (!(step > 0.0) || !(to > from))
        throw ConfigError("time grid requires to > from and step > 0");
    TimeGrid grid;
    const auto count = static_cast<std::size_t>(std::llround((to - from) / step));
    for (std::size_t i = 0; i <= count; ++i)
        grid.times.push_back(from + static_cast<double>(i) * step);
    grid.time_output = std::move(time_output);
    if (grid.time_output.empty()) grid.time_output = grid.times;
    grid.validate();
    return grid;
}

Matrix rk4_integrate(const Derivative& derivative, std::span<const double> state0,
                     const TimeGrid& grid) {
    grid.validate();
    const std::size_t dim = state0.size();
    std::vector<double> state(state0.begin(), state0.end());
    std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);

    Matrix out(grid.time_output.size(), dim);
    std::size_t out_row = 0;

    auto check_finite = [&](double t) {
        for (double v : state)
            if (!std::isfinite(v))
                throw DivergenceError("trajectory diverged at t=" + std::to_string(t));
    };
    auto record = [&](double t) {
        if (out_row < grid.time_output.size() && t == grid.time_output[out_row]) {
            for (std::size_t c = 0; c < dim; ++c) out(out_row, c) = state[c];
            ++out_row;
        }
    };

    check_finite(grid.times.front());
    record(grid.times.front());

    for (std::size_t i = 0; i + 1 < grid.times.size(); ++i) {
        const double t = grid.times[i];
        const double h = grid.times[i + 1] - t;

        derivative(t, state, k1);
        for (std::size_t c = 0; c < dim; ++c) tmp[c] = state[c] + 0.5 * h * k1[c];
        derivative(t + 0.5 * h, tmp, k2);
        for (std::size_t c = 0; c < dim; ++c) tmp[c] = state[c] + 0.5 * h * k2[c];
        derivative(t + 0.5 * h, tmp, k3);
        for (std::size_t c = 0; c < dim; ++c) tmp[c] = state[c] + h * k3[c];
        derivative(t + h, tmp, k4);
        for (std::size_t c = 0; c < dim; ++c)
            state[c] += h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);

        check_finite(grid.times[i + 1]);
        record(grid.times[i + 1]);
    }
    if (out_row != grid.time_output.size())
        throw ConfigError("not every output time was visited by the grid");
    return out;
}

BudwormParams BudwormParams::from_row(std::span<const double> row) {
    if (row.size() != 10)
        throw ConfigError("budworm model expects 10 parameters, got " +
                          std::to_string(row.size()));
    BudwormParams p;
    p.r_b = row[0];
    p.k = row[1];
    p.beta = row[2];
    p.alpha = row[3];
    p.r_s = row[4];
    p.k_s = row[5];
    p.k_e = row[6];
    p.r_e = row[7];
    p.p = row[8];
    p.t_e = row[9];
    p.validate();
    return p;
}

void BudwormParams::validate() const {
    for (double v : {r_b, k, beta, alpha, r_s, k_s, k_e, r_e, p, t_e})
        if (!(v > 0.0))
            throw ConfigError("budworm parameters must be strictly positive");
}

void budworm_derivative(std::span<const double> state, const BudwormParams& params,
                        std::span<double> dstate) {
    const double b = state[0], s = state[1], e = state[2];
    if (!(s > 0.0) || !(e > 0.0))
        throw DivergenceError("budworm derivative needs S > 0 and E > 0");
    const double e2 = e * e;
    const double te2 = params.t_e * params.t_e;
    const double alpha_s = params.alpha * s;
    dstate[0] = params.r_b * b * (1.0 - b / (params.k * s) * (te2 + e2) / e2) -
                params.beta * b * b / (alpha_s * alpha_s + b * b);
    dstate[1] = params.r_s * s * (1.0 - s * params.k_e / (e * params.k_s));
    dstate[2] = params.r_e * e * (1.0 - e / params.k_e) -
                params.p * (b / s) * e2 / (te2 + e2);
}

Matrix budworm_trajectory(const BudwormParams& params, const TimeGrid& grid,
                          std::span<const double> state0) {
    return rk4_integrate(
        [&params](double, std::span<const double> state, std::span<double> dstate) {
            budworm_derivative(state, params, dstate);
        },
        state0, grid);
}

} // namespace sensivar
