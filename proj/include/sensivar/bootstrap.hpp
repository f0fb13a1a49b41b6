#ifndef SENSIVAR_BOOTSTRAP_HPP
#define SENSIVAR_BOOTSTRAP_HPP

#include <cstdint>
#include <span>
#include <string>

#include "sensivar/boot_config.hpp"
#include "sensivar/estimators.hpp"

namespace sensivar {

// Joint row-resampling of block outputs. One resampled base-row index
// vector per replicate is applied to every block so the A/B/AB pairings
// survive resampling; each replicate draws its indices from its own seed
// substream, making results independent of evaluation order.

struct BootstrapStats {
    double bias = 0.0;
    double std_error = 0.0;
    double low_ci = 0.0;
    double high_ci = 0.0;
};

// Linear interpolation between order statistics (the common "type 7" rule).
double quantile_type7(std::span<const double> sorted, double p);

// original = full-sample estimate; bias = mean(replicates) - original;
// normal CI: (original - bias) +/- z[(1+conf)/2] * std_error;
// percentile CI: empirical ((1-conf)/2, (1+conf)/2) replicate quantiles.
BootstrapStats summarize_replicates(std::span<const double> replicates,
                                    double original, BootConfig::CiType type,
                                    double conf);

// Recomputes every index row per replicate and attaches the statistics to
// the table rows. Throws ConfigError for replicates < 2.
IndexTable bootstrap_indices(std::span<const double> y,
                             std::span<const BlockTag> tags,
                             const SampleDesign& design,
                             const EstimatorConfig& config,
                             const BootConfig& boot,
                             const BootstrapHook& hook = {});

} // namespace sensivar

#endif
