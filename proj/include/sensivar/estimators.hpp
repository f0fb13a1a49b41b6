#ifndef SENSIVAR_ESTIMATORS_HPP
#define SENSIVAR_ESTIMATORS_HPP

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sensivar/boot_config.hpp"
#include "sensivar/sampling.hpp"

namespace sensivar {

enum class FirstEstimator { sobol, saltelli, jansen, azzini };
enum class TotalEstimator { jansen, sobol, homma, saltelli, janon, glen, azzini };

std::string to_string(FirstEstimator e);
std::string to_string(TotalEstimator e);
FirstEstimator parse_first_estimator(const std::string& name);
TotalEstimator parse_total_estimator(const std::string& name);

struct EstimatorConfig {
    FirstEstimator first = FirstEstimator::saltelli;
    TotalEstimator total = TotalEstimator::jansen;
    IndexOrder order = IndexOrder::first;
};

// Pooled output statistics over the A and B blocks:
//   f0 = (1/2N) sum(yA + yB)
//   vy = (1/(2N-1)) sum((yA-f0)^2 + (yB-f0)^2)
struct VarianceSummary {
    double f0 = 0.0;
    double vy = 0.0;
};

// Throws ConstantOutputError when vy == 0 (indices undefined).
VarianceSummary estimate_variance_summary(std::span<const double> y_a,
                                          std::span<const double> y_b);

// Sample blocks each estimator consumes.
std::vector<BlockKind> required_blocks(FirstEstimator e);
std::vector<BlockKind> required_blocks(TotalEstimator e);

// Checks that the (first, total) pair's block requirements are covered by
// the design's blocks; throws CombinationError naming what is missing.
void validate_combination(FirstEstimator first, TotalEstimator total,
                          std::span<const BlockKind> blocks);

// Single-index estimators. Inputs are raw block outputs of one parameter;
// each function centers them at summary.f0 before applying its formula, so
// every estimate is exactly invariant under output shifts (the f0^2
// cross-terms of the textbook forms vanish identically after centering).
// Blocks an estimator does not use may be passed empty.
double estimate_first(FirstEstimator e, std::span<const double> y_a,
                      std::span<const double> y_b, std::span<const double> y_ab,
                      std::span<const double> y_ba, const VarianceSummary& summary);
double estimate_total(TotalEstimator e, std::span<const double> y_a,
                      std::span<const double> y_b, std::span<const double> y_ab,
                      std::span<const double> y_ba, const VarianceSummary& summary);

// Block outputs reassembled from a tagged output vector, ordered by base row
// within each block.
struct GatheredBlocks {
    std::int64_t n = 0;
    std::vector<double> y_a, y_b;
    std::vector<std::vector<double>> y_ab1, y_ba1; // per parameter
    std::vector<std::vector<double>> y_ab2, y_ba2; // per pair, ranked
    std::vector<std::vector<double>> y_ab3, y_ba3; // per triple, ranked
};

std::size_t pair_rank(std::size_t i, std::size_t j, std::size_t k);
std::size_t triple_rank(std::size_t i, std::size_t j, std::size_t l, std::size_t k);

// Deconstructs Y by block tags. Validates length, rejects NaN values naming
// the offending rows, and verifies every expected block is complete.
GatheredBlocks gather_blocks(std::span<const double> y,
                             std::span<const BlockTag> tags,
                             const SampleDesign& design);

enum class Sensitivity { Si, Ti, Sij, Sijk };
std::string to_string(Sensitivity s);

struct IndexRowSpec {
    Sensitivity kind = Sensitivity::Si;
    std::array<std::int32_t, 3> members = {0, 0, 0}; // 1-based parameter indices
};

// Fixed row order of an index table: Si per parameter, Ti per parameter,
// then Sij pairs and Sijk triples in lexicographic order.
std::vector<IndexRowSpec> index_row_layout(std::size_t k, IndexOrder order);

// Point estimates for every row of index_row_layout, in order. Higher-order
// rows are closed indices computed with the first-order estimator on the
// multi-swapped blocks, minus their lower-order terms.
std::vector<double> compute_index_values(const GatheredBlocks& blocks,
                                         const EstimatorConfig& config,
                                         const VarianceSummary& summary);

struct IndexRow {
    double original = 0.0;
    std::optional<double> bias, std_error, low_ci, high_ci;
    Sensitivity sensitivity = Sensitivity::Si;
    std::string parameters;
};

struct IndexTable {
    std::vector<IndexRow> rows;
    std::string first_estimator;
    std::string total_estimator;
    std::int64_t total_runs = 0;
    double sum_first_order = 0.0;

    const IndexRow& find(Sensitivity kind, const std::string& parameters) const;
};

std::string join_parameters(const std::vector<std::string>& params,
                            const IndexRowSpec& spec);

// Observation hook for bootstrap instrumentation: called once per
// (replicate, block) with the resampled base-row indices.
using BootstrapHook =
    std::function<void(std::int64_t replicate, const std::string& block,
                       std::span<const std::size_t> indices)>;

// Full analysis: deconstructs Y by tags, validates the estimator/design
// combination and emits the index table (with bootstrap statistics when
// `boot` is given).
IndexTable sobol_indices(std::span<const double> y, std::span<const BlockTag> tags,
                         const SampleDesign& design, const EstimatorConfig& config,
                         const std::optional<BootConfig>& boot = {},
                         const BootstrapHook& hook = {});

// Convenience overload using the design's canonical block order.
IndexTable sobol_indices(std::span<const double> y, const SampleDesign& design,
                         const EstimatorConfig& config,
                         const std::optional<BootConfig>& boot = {},
                         const BootstrapHook& hook = {});

// Si and Ti of an inert column: `design` must carry the sampled-but-ignored
// parameter as its last column. The resulting magnitudes approximate the
// Monte Carlo error floor at the design's sample size.
IndexTable sobol_dummy(std::span<const double> y, std::span<const BlockTag> tags,
                       const SampleDesign& design, const EstimatorConfig& config,
                       const std::optional<BootConfig>& boot = {},
                       const BootstrapHook& hook = {});

IndexTable sobol_dummy(std::span<const double> y, const SampleDesign& design,
                       const EstimatorConfig& config,
                       const std::optional<BootConfig>& boot = {},
                       const BootstrapHook& hook = {});

} // namespace sensivar

#endif
