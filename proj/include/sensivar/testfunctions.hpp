#ifndef SENSIVAR_TESTFUNCTIONS_HPP
#define SENSIVAR_TESTFUNCTIONS_HPP

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sensivar/matrix.hpp"

namespace sensivar {

// Benchmark functions with known behavior, used as models and as oracles.

// sin(x1) + a sin(x2)^2 + b x3^4 sin(x1) with a=2, b=1. Inputs live on
// (-pi, pi); with rescale_unit_cube the inputs are taken in [0,1) and mapped
// affinely onto that range first.
double ishigami(std::span<const double> x, bool rescale_unit_cube = false);

// prod_i (|4 x_i - 2| + a_i) / (1 + a_i) with the fixed eight-dimensional
// coefficient vector a = (0, 1, 4.5, 9, 99, 99, 99, 99).
double sobol_g(std::span<const double> x);
inline constexpr std::array<double, 8> kSobolGCoefficients = {0, 1, 4.5, 9, 99, 99, 99, 99};

// sum_i (-1)^i prod_{j<=i} x_j
double bratley1992(std::span<const double> x);

// prod_i |4 x_i - 2|
double bratley1988(std::span<const double> x);

// 3 x1^2 + 2 x1 x2 - 2 x3 (three-dimensional polynomial demo).
double becker_poly(std::span<const double> x);

// a1'x + a2'sin(x) + a3'cos(x) + x'Mx over 15 inputs, coefficient data
// loaded from a bundled CSV asset.
struct OakleyCoefficients {
    std::array<double, 15> a1{}, a2{}, a3{};
    Matrix m; // 15 x 15
};

// Loads (and caches) the coefficient asset. Empty path means the bundled
// default, overridable with the SENSIVAR_DATA_DIR environment variable.
const OakleyCoefficients& oakley_coefficients(const std::string& path = {});
double oakley(std::span<const double> x, const OakleyCoefficients& coef);
double oakley(std::span<const double> x);

// Randomly structured benchmark combining univariate effects with pairwise
// and three-way interaction products. The drawn structure is fully
// determined by (k, seed).
enum class UnivariateFn : std::uint8_t {
    cubic,
    discontinuous,
    exponential,
    inverse,
    linear,
    no_effect,
    non_monotonic,
    periodic,
    quadratic,
    trigonometric,
};

std::string to_string(UnivariateFn fn);
UnivariateFn parse_univariate_fn(const std::string& name);
double evaluate_univariate(UnivariateFn fn, double x);

struct MetafunctionSpec {
    std::int64_t k = 0;
    std::vector<UnivariateFn> assignments;        // one per input
    std::vector<std::array<std::int32_t, 2>> pairs;   // 1-based input indices
    std::vector<std::array<std::int32_t, 3>> triples; // 1-based input indices
    std::vector<double> alpha, beta, gamma;

    void validate() const;
    std::string to_json() const;
    static MetafunctionSpec from_json(const std::string& text);
};

// Structure draw: every input gets a univariate function, floor(0.5k)
// distinct pairs and floor(0.2k) distinct triples are sampled, and all
// coefficients are standard-normal.
MetafunctionSpec draw_metafunction_spec(std::int64_t k, std::uint64_t seed);

double evaluate_metafunction(const MetafunctionSpec& spec, std::span<const double> x);
std::vector<double> metafunction(const Matrix& x, std::uint64_t seed);

// Closed-form first and total-order indices where available.
struct AnalyticIndices {
    std::vector<double> si;
    std::vector<double> ti;
};

// function_id in {"sobol_g", "ishigami"}; anything else throws.
AnalyticIndices analytic_indices(const std::string& function_id);

} // namespace sensivar

#endif
