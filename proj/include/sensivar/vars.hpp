#ifndef SENSIVAR_VARS_HPP
#define SENSIVAR_VARS_HPP

#include <span>
#include <vector>

#include "sensivar/sampling.hpp"

namespace sensivar {

// Variogram-based total-order sensitivity (VARS-TO) over star samples.

// Directional variogram of one cross-section at an integer lag step m:
// half the mean squared difference over all in-section pairs exactly m grid
// steps apart.
double section_variogram(std::span<const double> section, std::int64_t lag_steps);

// Sample covariance of the lag-separated pairs of one cross-section, with
// the pair means computed within the section.
double section_covariogram(std::span<const double> section, std::int64_t lag_steps);

// Per-parameter directional statistics at lag = lag_steps * h, averaged over
// stars. `y` holds the star-sample outputs in emission order.
double variogram(std::span<const double> y, const StarSample& star, std::int64_t dim,
                 std::int64_t lag_steps = 1);
double covariogram(std::span<const double> y, const StarSample& star, std::int64_t dim,
                   std::int64_t lag_steps = 1);

struct VarsResult {
    std::vector<double> ti;
    std::vector<std::string> params;
    std::int64_t n_star = 0;
    double h = 0.0;
    std::int64_t total_runs = 0;
};

// Ti = (E[gamma(h_i)] + E[C(h_i)]) / V(y) at the smallest lag, with V(y)
// the sample variance pooled over every star-sample output.
VarsResult vars_to(std::span<const double> y, const StarSample& star);

} // namespace sensivar

#endif
