#include "doctest.h"

#include <cmath>

#include "sensivar/errors.hpp"
#include "sensivar/ode.hpp"

using namespace sensivar;

TEST_CASE("logistic map fixed points and convergence") {
    CHECK(logistic_map(0.0, 123.0, 7.0, 20) == 7.0);
    CHECK(logistic_map(1.3, 40.0, 40.0, 50) == 40.0);
    CHECK(logistic_map(0.6, 100.0, 3.0, 200) == doctest::Approx(100.0).epsilon(0.005));
    CHECK_THROWS_AS(logistic_map(0.5, 1.0, 1.0, -1), ConfigError);
}

TEST_CASE("logistic map applies steps+1 updates") {
    // steps = 0 still applies one update (a 0..steps inclusive loop)
    const double r = 0.5, k = 10.0, n0 = 2.0;
    CHECK(logistic_map(r, k, n0, 0) == n0 + r * n0 * (1.0 - n0 / k));
}

TEST_CASE("rk4 on flat, linear and exponential problems") {
    auto grid = make_time_grid(0.0, 1.0, 0.01, {0.5, 1.0});

    const auto flat = rk4_integrate(
        [](double, std::span<const double>, std::span<double> d) { d[0] = 0.0; },
        std::vector<double>{5.0}, grid);
    CHECK(flat(0, 0) == 5.0);
    CHECK(flat(1, 0) == 5.0);

    const auto ramp = rk4_integrate(
        [](double, std::span<const double>, std::span<double> d) { d[0] = 1.0; },
        std::vector<double>{0.0}, grid);
    CHECK(ramp(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(ramp(1, 0) == doctest::Approx(1.0).epsilon(1e-12));

    const auto decay = rk4_integrate(
        [](double, std::span<const double> s, std::span<double> d) { d[0] = -s[0]; },
        std::vector<double>{1.0}, grid);
    CHECK(std::abs(decay(1, 0) - std::exp(-1.0)) < 1e-6);
}

TEST_CASE("rk4 global error decays at fourth order") {
    auto error_at = [](double step) {
        auto grid = make_time_grid(0.0, 1.0, step, {1.0});
        const auto out = rk4_integrate(
            [](double, std::span<const double> s, std::span<double> d) { d[0] = -s[0]; },
            std::vector<double>{1.0}, grid);
        return std::abs(out(0, 0) - std::exp(-1.0));
    };
    const double e1 = error_at(0.1), e2 = error_at(0.05), e3 = error_at(0.025);
    const double slope1 = std::log2(e1 / e2);
    const double slope2 = std::log2(e2 / e3);
    CHECK(slope1 == doctest::Approx(4.0).epsilon(0.08));
    CHECK(slope2 == doctest::Approx(4.0).epsilon(0.08));
}

TEST_CASE("rk4 surfaces divergence with a time stamp") {
    // dX/dt = X^2 from X0=1 blows up at t=1.
    auto grid = make_time_grid(0.0, 2.0, 0.01, {2.0});
    try {
        rk4_integrate(
            [](double, std::span<const double> s, std::span<double> d) { d[0] = s[0] * s[0]; },
            std::vector<double>{1.0}, grid);
        FAIL("expected DivergenceError");
    } catch (const DivergenceError& e) {
        CHECK(std::string(e.what()).find("t=") != std::string::npos);
    }
}

TEST_CASE("extraction equals the corresponding full-trajectory rows") {
    auto deriv = [](double t, std::span<const double> s, std::span<double> d) {
        d[0] = std::sin(t) - 0.1 * s[0];
        d[1] = 0.05 * s[0];
    };
    auto full_grid = make_time_grid(0.0, 10.0, 0.1, {});
    auto sub_grid = make_time_grid(0.0, 10.0, 0.1, {2.0, 5.0, 10.0});
    const std::vector<double> x0 = {1.0, 0.0};
    const auto full = rk4_integrate(deriv, x0, full_grid);
    const auto sub = rk4_integrate(deriv, x0, sub_grid);
    auto row_of = [&](double t) {
        for (std::size_t i = 0; i < full_grid.time_output.size(); ++i)
            if (full_grid.time_output[i] == t) return i;
        REQUIRE(false);
        return std::size_t{0};
    };
    for (std::size_t r = 0; r < sub_grid.time_output.size(); ++r) {
        const std::size_t fr = row_of(sub_grid.time_output[r]);
        CHECK(sub(r, 0) == full(fr, 0));
        CHECK(sub(r, 1) == full(fr, 1));
    }
}

TEST_CASE("time grid validation") {
    CHECK_THROWS_AS(make_time_grid(0.0, 0.0, 0.1, {}), ConfigError);
    CHECK_THROWS_AS(make_time_grid(0.0, 1.0, -0.1, {}), ConfigError);
    CHECK_THROWS_AS(make_time_grid(0.0, 1.0, 0.1, {0.55}), ConfigError);

    TimeGrid grid;
    grid.times = {0.0, 1.0, 0.5};
    grid.time_output = {1.0};
    CHECK_THROWS_AS(grid.validate(), ConfigError);
}

TEST_CASE("budworm derivative structure") {
    BudwormParams p;
    p.r_b = 1.56;
    p.k = 227.5;
    p.beta = 31600.0;
    p.alpha = 1.5;
    p.r_s = 0.1225;
    p.k_s = 24720.0;
    p.k_e = 1.1;
    p.r_e = 0.96;
    p.p = 0.001725;
    p.t_e = 0.8;

    std::vector<double> d(3);
    budworm_derivative(std::vector<double>{0.0, 10.0, 1.0}, p, d);
    CHECK(d[0] == 0.0); // extinction is invariant

    budworm_derivative(std::vector<double>{0.0, 10.0, p.k_e}, p, d);
    CHECK(d[2] == doctest::Approx(0.0)); // logistic at capacity, no predation

    CHECK_THROWS_AS(budworm_derivative(std::vector<double>{1.0, 0.0, 1.0}, p, d),
                    DivergenceError);
    CHECK_THROWS_AS(BudwormParams::from_row(std::vector<double>{1, 2, 3}), ConfigError);

    BudwormParams bad = p;
    bad.k_e = 0.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("budworm mean-parameter trajectory rises then plateaus") {
    BudwormParams p;
    p.r_b = 1.56;
    p.k = 227.5;
    p.beta = 31600.0;
    p.alpha = 1.5;
    p.r_s = 0.1225;
    p.k_s = 24720.0;
    p.k_e = 1.1;
    p.r_e = 0.96;
    p.p = 0.001725;
    p.t_e = 0.8;

    auto grid = make_time_grid(0.0, 150.0, kBudwormStep,
                               {25.0, 50.0, 75.0, 100.0, 125.0, 150.0});
    const auto traj = budworm_trajectory(p, grid);

    // positivity over the recorded horizon
    for (std::size_t r = 0; r < traj.rows(); ++r)
        for (std::size_t c = 0; c < 3; ++c) CHECK(traj(r, c) > 0.0);

    const double b100 = traj(3, 0), b125 = traj(4, 0), b150 = traj(5, 0);
    const double s100 = traj(3, 1), s150 = traj(5, 1);
    CHECK(b150 > 1e6);              // outbreak happened
    CHECK(s150 > 15000.0);          // forest matured
    CHECK(b150 < 1e7);
    // plateau: late-time relative drift is small
    CHECK(std::abs(b150 - b125) / b150 < 0.05);
    CHECK(std::abs(b150 - b100) / b150 < 0.10);
    CHECK(std::abs(s150 - s100) / s150 < 0.10);
    // rise: early values well below the plateau
    CHECK(traj(0, 0) < 0.1 * b150);
    CHECK(traj(0, 1) < 0.2 * s150);
}
