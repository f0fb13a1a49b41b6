#include "doctest.h"

#include <cmath>
#include <functional>

#include "sensivar/errors.hpp"
#include "sensivar/rng.hpp"
#include "sensivar/sampling.hpp"
#include "sensivar/testfunctions.hpp"
#include "sensivar/vars.hpp"

using namespace sensivar;

namespace {

std::vector<double> evaluate_star(const StarSample& star,
                                  const std::function<double(std::span<const double>)>& fn) {
    std::vector<double> y(star.points.rows());
    for (std::size_t r = 0; r < star.points.rows(); ++r) y[r] = fn(star.points.row(r));
    return y;
}

} // namespace

TEST_CASE("section variogram over an identity ramp") {
    // 4-point grid of step 0.25 under y = x: lag-1 pairs all differ by 0.25.
    const std::vector<double> section = {0.1, 0.35, 0.6, 0.85};
    CHECK(section_variogram(section, 1) == doctest::Approx(0.25 * 0.25 / 2.0));
    // 2 pairs at lag 2, both differ by 0.5
    CHECK(section_variogram(section, 2) == doctest::Approx(0.5 * 0.5 / 2.0));
    CHECK_THROWS_AS(section_variogram(section, 4), ConfigError);

    // adding a constant leaves the variogram unchanged
    std::vector<double> shifted = section;
    for (double& v : shifted) v += 37.0;
    CHECK(section_variogram(shifted, 1) == section_variogram(section, 1));
}

TEST_CASE("constant output collapses both statistics") {
    const auto star = vars_matrices(5, 0.25, {"a", "b"}, Generator::QRN, 0);
    std::vector<double> y(static_cast<std::size_t>(star.total_runs()), 3.25);
    for (std::int64_t dim = 0; dim < 2; ++dim) {
        CHECK(variogram(y, star, dim) == 0.0);
        CHECK(covariogram(y, star, dim) == 0.0);
    }
    CHECK_THROWS_AS(vars_to(y, star), ConstantOutputError);
}

TEST_CASE("section covariogram against explicit pair enumeration") {
    Rng rng(13);
    std::vector<double> section(9);
    for (double& v : section) v = rng.next_double() * 4.0 - 1.0;

    for (std::int64_t lag : {std::int64_t{1}, std::int64_t{2}, std::int64_t{3}}) {
        // oracle: enumerate the lag-separated pairs directly
        std::vector<double> lo, hi;
        for (std::size_t j = 0; j + static_cast<std::size_t>(lag) < section.size(); ++j) {
            lo.push_back(section[j]);
            hi.push_back(section[j + static_cast<std::size_t>(lag)]);
        }
        double mlo = 0.0, mhi = 0.0;
        for (std::size_t j = 0; j < lo.size(); ++j) {
            mlo += lo[j];
            mhi += hi[j];
        }
        mlo /= static_cast<double>(lo.size());
        mhi /= static_cast<double>(hi.size());
        double cov = 0.0;
        for (std::size_t j = 0; j < lo.size(); ++j) cov += (lo[j] - mlo) * (hi[j] - mhi);
        cov /= static_cast<double>(lo.size()) - 1.0;
        CHECK(section_covariogram(section, lag) == doctest::Approx(cov).epsilon(1e-14));
    }

    // covariance symmetry under joint sign flip
    std::vector<double> flipped = section;
    for (double& v : flipped) v = -v;
    CHECK(section_covariogram(flipped, 1) ==
          doctest::Approx(section_covariogram(section, 1)).epsilon(1e-14));
}

TEST_CASE("variogram pair enumeration audit") {
    // every ordered in-section pair at the lag enters exactly once: compare
    // against a direct double loop over grid positions.
    const auto star = vars_matrices(3, 0.125, {"a"}, Generator::R, 7);
    std::vector<double> y(static_cast<std::size_t>(star.total_runs()));
    Rng rng(2);
    for (double& v : y) v = rng.next_double();

    for (std::int64_t lag : {std::int64_t{1}, std::int64_t{3}}) {
        double acc = 0.0;
        for (std::int64_t v = 0; v < star.n_star(); ++v) {
            const auto& slots = star.slots(v, 0);
            double sum = 0.0;
            std::size_t count = 0;
            for (std::size_t a = 0; a < slots.size(); ++a)
                for (std::size_t b = 0; b < slots.size(); ++b)
                    if (b > a && b - a == static_cast<std::size_t>(lag)) {
                        const double d = y[static_cast<std::size_t>(slots[b])] -
                                         y[static_cast<std::size_t>(slots[a])];
                        sum += d * d;
                        ++count;
                    }
            acc += 0.5 * sum / static_cast<double>(count);
        }
        acc /= static_cast<double>(star.n_star());
        CHECK(variogram(y, star, 0, lag) == doctest::Approx(acc).epsilon(1e-14));
    }
}

TEST_CASE("vars_to on a single identity input") {
    const auto star = vars_matrices(64, 0.02, {"x"}, Generator::QRN, 0);
    const auto y = evaluate_star(star, [](std::span<const double> x) { return x[0]; });
    const auto result = vars_to(y, star);
    CHECK(result.ti[0] == doctest::Approx(1.0).epsilon(0.02));
    CHECK(result.total_runs == star.total_runs());
}

TEST_CASE("vars_to splits an additive model evenly") {
    const auto star = vars_matrices(128, 0.05, {"x1", "x2"}, Generator::QRN, 0);
    const auto y =
        evaluate_star(star, [](std::span<const double> x) { return x[0] + x[1]; });
    const auto result = vars_to(y, star);
    CHECK(result.ti[0] == doctest::Approx(0.5).epsilon(0.1));
    CHECK(result.ti[1] == doctest::Approx(0.5).epsilon(0.1));
    CHECK(std::abs(result.ti[0] - result.ti[1]) < 0.05);
}

TEST_CASE("vars_to is scale and shift invariant") {
    const auto star = vars_matrices(32, 0.1, {"x1", "x2", "x3"}, Generator::QRN, 0);
    const auto y = evaluate_star(star, [](std::span<const double> x) {
        return x[0] * x[0] + 0.3 * x[1] + x[0] * x[2];
    });
    std::vector<double> scaled(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) scaled[i] = -2.3 * y[i] + 7.7;
    const auto r1 = vars_to(y, star);
    const auto r2 = vars_to(scaled, star);
    for (std::size_t i = 0; i < r1.ti.size(); ++i)
        CHECK(std::abs(r1.ti[i] - r2.ti[i]) <= 1e-12 * std::max(1.0, std::abs(r1.ti[i])));
}

TEST_CASE("vars_to on the G function reproduces the published ordering") {
    std::vector<std::string> params;
    for (int i = 1; i <= 8; ++i) params.push_back("X" + std::to_string(i));
    const auto star = vars_matrices(100, 0.1, params, Generator::QRN, 0);
    const auto y = evaluate_star(star, [](std::span<const double> x) { return sobol_g(x); });
    const auto result = vars_to(y, star);

    CHECK(result.total_runs == 7300);
    CHECK(result.ti[0] == doctest::Approx(0.82).epsilon(0.07));
    CHECK(result.ti[0] > result.ti[1]);
    CHECK(result.ti[1] > result.ti[2]);
    CHECK(result.ti[2] > result.ti[3]);
    for (std::size_t i = 4; i < 8; ++i) CHECK(result.ti[3] > result.ti[i]);
}

TEST_CASE("misaligned star outputs are rejected") {
    const auto star = vars_matrices(4, 0.25, {"a", "b"}, Generator::QRN, 0);
    std::vector<double> y(static_cast<std::size_t>(star.total_runs()) - 1, 1.0);
    CHECK_THROWS_AS(vars_to(y, star), AlignmentError);
}
