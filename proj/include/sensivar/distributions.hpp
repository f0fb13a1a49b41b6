#ifndef SENSIVAR_DISTRIBUTIONS_HPP
#define SENSIVAR_DISTRIBUTIONS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sensivar/matrix.hpp"

namespace sensivar {

// Inverse-CDF transforms mapping unit-hypercube samples to parameter
// distributions. All transforms are element-wise and never reorder rows.

double quantile_uniform(double p, double a, double b);

// Wichura's AS241 rational approximation of the standard normal quantile,
// absolute error below 1e-9 across the full double range of p.
// Throws for p outside (0,1).
double quantile_normal(double p, double mean = 0.0, double sd = 1.0);

// floor(lo + p*(hi - lo + 1)), clamped to hi.
std::int64_t quantile_discrete_uniform(double p, std::int64_t lo, std::int64_t hi);

struct MarginalSpec {
    enum class Kind { uniform, normal, discrete_uniform };

    std::string name;
    Kind kind = Kind::uniform;
    double a = 0.0, b = 1.0;        // uniform bounds
    double mean = 0.0, sd = 1.0;    // normal parameters
    std::int64_t lo = 0, hi = 1;    // discrete-uniform bounds

    static MarginalSpec uniform(std::string name, double a, double b);
    static MarginalSpec normal(std::string name, double mean, double sd);
    static MarginalSpec discrete_uniform(std::string name, std::int64_t lo, std::int64_t hi);

    double transform(double p) const;
};

// Applies marginals[c] to column c in place. The marginal count must equal
// the column count; names, when set on both sides, must line up.
void apply_marginals(Matrix& samples, const std::vector<MarginalSpec>& marginals,
                     const std::vector<std::string>& param_names = {});

} // namespace sensivar

#endif
