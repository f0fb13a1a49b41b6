#include "sensivar/bootstrap.hpp"

#include <algorithm>
#include <cmath>

#include "analysis_detail.hpp"
#include "sensivar/distributions.hpp"
#include "sensivar/errors.hpp"
#include "sensivar/rng.hpp"

namespace sensivar {

BootConfig::CiType parse_ci_type(const std::string& name) {
    if (name == "normal" || name == "norm") return BootConfig::CiType::normal;
    if (name == "percentile" || name == "percent") return BootConfig::CiType::percentile;
    throw ConfigError("unknown confidence-interval type '" + name + "'");
}

std::string to_string(BootConfig::CiType type) {
    return type == BootConfig::CiType::normal ? "normal" : "percentile";
}

double quantile_type7(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw ConfigError("quantile of an empty sample");
    if (sorted.size() == 1) return sorted[0];
    const double h = p * (static_cast<double>(sorted.size()) - 1.0);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= sorted.size()) return sorted[sorted.size() - 1];
    const double frac = h - std::floor(h);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

BootstrapStats summarize_replicates(std::span<const double> replicates, double original,
                                    BootConfig::CiType type, double conf) {
    const std::size_t r = replicates.size();
    if (r < 2) throw ConfigError("bootstrap needs at least 2 replicates");
    if (!(conf > 0.0 && conf < 1.0)) throw ConfigError("confidence level must be in (0,1)");

    double mean = 0.0;
    for (double v : replicates) mean += v;
    mean /= static_cast<double>(r);
    double ss = 0.0;
    for (double v : replicates) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / (static_cast<double>(r) - 1.0));

    BootstrapStats stats;
    stats.bias = mean - original;
    stats.std_error = sd;
    if (type == BootConfig::CiType::normal) {
        const double z = quantile_normal((1.0 + conf) / 2.0);
        const double center = original - stats.bias;
        stats.low_ci = center - z * sd;
        stats.high_ci = center + z * sd;
    } else {
        std::vector<double> sorted(replicates.begin(), replicates.end());
        std::sort(sorted.begin(), sorted.end());
        stats.low_ci = quantile_type7(sorted, (1.0 - conf) / 2.0);
        stats.high_ci = quantile_type7(sorted, (1.0 + conf) / 2.0);
    }
    return stats;
}

namespace {

void resample_into(const std::vector<double>& src, std::vector<double>& dst,
                   std::span<const std::size_t> idx) {
    for (std::size_t v = 0; v < idx.size(); ++v) dst[v] = src[idx[v]];
}

// Enumerates every block vector with a stable label, pairing source and
// destination storage.
template <typename Fn>
void for_each_block(const GatheredBlocks& src, GatheredBlocks& dst, Fn&& fn) {
    fn("A", src.y_a, dst.y_a);
    if (!src.y_b.empty()) fn("B", src.y_b, dst.y_b);
    auto family = [&](const char* prefix, const auto& s, auto& d) {
        for (std::size_t i = 0; i < s.size(); ++i)
            fn(prefix + std::to_string(i + 1), s[i], d[i]);
    };
    family("AB_", src.y_ab1, dst.y_ab1);
    family("BA_", src.y_ba1, dst.y_ba1);
    family("AB2_", src.y_ab2, dst.y_ab2);
    family("BA2_", src.y_ba2, dst.y_ba2);
    family("AB3_", src.y_ab3, dst.y_ab3);
    family("BA3_", src.y_ba3, dst.y_ba3);
}

} // namespace

namespace detail {

IndexTable run_analysis(std::span<const double> y, std::span<const BlockTag> tags,
                        const SampleDesign& design, const EstimatorConfig& config,
                        const std::optional<BootConfig>& boot, const BootstrapHook& hook,
                        bool dummy_only) {
    validate_design(design);
    validate_combination(config.first, config.total, design.blocks);
    if (!dummy_only && static_cast<int>(config.order) > static_cast<int>(design.order))
        throw DesignError("estimator order exceeds the design's block order");

    const GatheredBlocks blocks = gather_blocks(y, tags, design);
    const auto layout = plan_layout(design, config, dummy_only);
    const auto original = plan_values(blocks, config, dummy_only);
    IndexTable table = assemble_table(design, config, layout, original, dummy_only);
    if (!boot) return table;

    const BootConfig& bc = *boot;
    if (bc.replicates < 2) throw ConfigError("bootstrap needs at least 2 replicates");

    const auto n = static_cast<std::size_t>(design.n_base);
    GatheredBlocks scratch = blocks;
    std::vector<std::size_t> idx(n);
    Matrix replicate_values(static_cast<std::size_t>(bc.replicates), layout.size());

    for (std::int64_t rep = 0; rep < bc.replicates; ++rep) {
        // Per-replicate substream: resampling is independent of evaluation order.
        Rng rng(derive_seed(bc.seed, static_cast<std::uint64_t>(rep)));
        for (std::size_t v = 0; v < n; ++v)
            idx[v] = static_cast<std::size_t>(rng.next_below(n));

        // The same index vector feeds every block, preserving row pairings.
        for_each_block(blocks, scratch,
                       [&](const std::string& label, const std::vector<double>& src,
                           std::vector<double>& dst) {
                           resample_into(src, dst, idx);
                           if (hook) hook(rep, label, idx);
                       });

        const auto values = plan_values(scratch, config, dummy_only);
        for (std::size_t r = 0; r < values.size(); ++r)
            replicate_values(static_cast<std::size_t>(rep), r) = values[r];
    }

    for (std::size_t r = 0; r < layout.size(); ++r) {
        const auto column = replicate_values.column(r);
        const BootstrapStats stats =
            summarize_replicates(column, original[r], bc.ci_type, bc.conf);
        table.rows[r].bias = stats.bias;
        table.rows[r].std_error = stats.std_error;
        table.rows[r].low_ci = stats.low_ci;
        table.rows[r].high_ci = stats.high_ci;
    }
    return table;
}

} // namespace detail

IndexTable bootstrap_indices(std::span<const double> y, std::span<const BlockTag> tags,
                             const SampleDesign& design, const EstimatorConfig& config,
                             const BootConfig& boot, const BootstrapHook& hook) {
    return detail::run_analysis(y, tags, design, config, boot, hook, false);
}

} // namespace sensivar
