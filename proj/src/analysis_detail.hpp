#ifndef SENSIVAR_ANALYSIS_DETAIL_HPP
#define SENSIVAR_ANALYSIS_DETAIL_HPP

#include "sensivar/bootstrap.hpp"
#include "sensivar/estimators.hpp"

// Internal plumbing shared between the estimator orchestration and the
// bootstrap loop. Not part of the public interface.

namespace sensivar::detail {

// Point estimates for the active row plan (full table or the inert-column
// Si/Ti pair when dummy_only).
std::vector<double> plan_values(const GatheredBlocks& blocks, const EstimatorConfig& config,
                                bool dummy_only);

std::vector<IndexRowSpec> plan_layout(const SampleDesign& design, const EstimatorConfig& config,
                                      bool dummy_only);

IndexTable assemble_table(const SampleDesign& design, const EstimatorConfig& config,
                          const std::vector<IndexRowSpec>& layout,
                          const std::vector<double>& values, bool dummy_only);

IndexTable run_analysis(std::span<const double> y, std::span<const BlockTag> tags,
                        const SampleDesign& design, const EstimatorConfig& config,
                        const std::optional<BootConfig>& boot, const BootstrapHook& hook,
                        bool dummy_only);

} // namespace sensivar::detail

#endif
