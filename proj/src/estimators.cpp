#include "sensivar/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "analysis_detail.hpp"
#include "sensivar/bootstrap.hpp"
#include "sensivar/errors.hpp"

namespace sensivar {

std::string to_string(FirstEstimator e) {
    switch (e) {
        case FirstEstimator::sobol: return "sobol";
        case FirstEstimator::saltelli: return "saltelli";
        case FirstEstimator::jansen: return "jansen";
        case FirstEstimator::azzini: return "azzini";
    }
    return "?";
}

std::string to_string(TotalEstimator e) {
    switch (e) {
        case TotalEstimator::jansen: return "jansen";
        case TotalEstimator::sobol: return "sobol";
        case TotalEstimator::homma: return "homma";
        case TotalEstimator::saltelli: return "saltelli";
        case TotalEstimator::janon: return "janon";
        case TotalEstimator::glen: return "glen";
        case TotalEstimator::azzini: return "azzini";
    }
    return "?";
}

FirstEstimator parse_first_estimator(const std::string& name) {
    if (name == "sobol") return FirstEstimator::sobol;
    if (name == "saltelli") return FirstEstimator::saltelli;
    if (name == "jansen") return FirstEstimator::jansen;
    if (name == "azzini") return FirstEstimator::azzini;
    throw ConfigError("unknown first-order estimator '" + name + "'");
}

TotalEstimator parse_total_estimator(const std::string& name) {
    if (name == "jansen") return TotalEstimator::jansen;
    if (name == "sobol") return TotalEstimator::sobol;
    if (name == "homma") return TotalEstimator::homma;
    if (name == "saltelli") return TotalEstimator::saltelli;
    if (name == "janon") return TotalEstimator::janon;
    if (name == "glen") return TotalEstimator::glen;
    if (name == "azzini") return TotalEstimator::azzini;
    throw ConfigError("unknown total-order estimator '" + name + "'");
}

VarianceSummary estimate_variance_summary(std::span<const double> y_a,
                                          std::span<const double> y_b) {
    const std::size_t n = y_a.size();
    if (n < 2 || y_b.size() != n)
        throw AlignmentError("variance summary needs two blocks of equal length >= 2");
    double sum = 0.0;
    for (std::size_t v = 0; v < n; ++v) sum += y_a[v] + y_b[v];
    const double f0 = sum / (2.0 * static_cast<double>(n));
    double ss = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
        const double da = y_a[v] - f0;
        const double db = y_b[v] - f0;
        ss += da * da + db * db;
    }
    const double vy = ss / (2.0 * static_cast<double>(n) - 1.0);
    if (vy == 0.0)
        throw ConstantOutputError("model output is constant; sensitivity indices are undefined");
    return {f0, vy};
}

std::vector<BlockKind> required_blocks(FirstEstimator e) {
    switch (e) {
        case FirstEstimator::sobol: return {BlockKind::A, BlockKind::B, BlockKind::BA};
        case FirstEstimator::saltelli:
        case FirstEstimator::jansen: return {BlockKind::A, BlockKind::B, BlockKind::AB};
        case FirstEstimator::azzini:
            return {BlockKind::A, BlockKind::B, BlockKind::AB, BlockKind::BA};
    }
    return {};
}

std::vector<BlockKind> required_blocks(TotalEstimator e) {
    switch (e) {
        case TotalEstimator::jansen:
        case TotalEstimator::sobol:
        case TotalEstimator::homma:
        case TotalEstimator::janon:
        case TotalEstimator::glen: return {BlockKind::A, BlockKind::B, BlockKind::AB};
        case TotalEstimator::saltelli: return {BlockKind::A, BlockKind::B, BlockKind::BA};
        case TotalEstimator::azzini:
            return {BlockKind::A, BlockKind::B, BlockKind::AB, BlockKind::BA};
    }
    return {};
}

void validate_combination(FirstEstimator first, TotalEstimator total,
                          std::span<const BlockKind> blocks) {
    std::vector<BlockKind> required = required_blocks(first);
    for (BlockKind kind : required_blocks(total))
        if (std::find(required.begin(), required.end(), kind) == required.end())
            required.push_back(kind);

    std::string missing;
    for (BlockKind kind : required) {
        if (std::find(blocks.begin(), blocks.end(), kind) == blocks.end()) {
            if (!missing.empty()) missing += ", ";
            missing += to_string(kind);
        }
    }
    if (!missing.empty())
        throw CombinationError("estimator combination first=" + to_string(first) +
                               ", total=" + to_string(total) +
                               " requires sample matrices the design lacks: " + missing);
}

namespace {

double mean_of(std::span<const double> x) {
    double sum = 0.0;
    for (double v : x) sum += v;
    return sum / static_cast<double>(x.size());
}

void require_block(std::span<const double> block, const char* estimator, const char* name) {
    if (block.empty())
        throw DesignError(std::string(estimator) + " estimator requires the " + name +
                          " block outputs");
}

// Formulas below operate on outputs centered at the pooled f0, which removes
// every f0^2 cross-term from the published forms.

double first_centered(FirstEstimator e, std::span<const double> a,
                      std::span<const double> b, std::span<const double> ab,
                      std::span<const double> ba, double vy) {
    const std::size_t n = a.size();
    const double dn = static_cast<double>(n);
    switch (e) {
        case FirstEstimator::sobol: {
            require_block(ba, "sobol first-order", "BA(i)");
            double sum = 0.0;
            for (std::size_t v = 0; v < n; ++v) sum += a[v] * ba[v];
            return sum / dn / vy;
        }
        case FirstEstimator::saltelli: {
            require_block(b, "saltelli first-order", "B");
            require_block(ab, "saltelli first-order", "AB(i)");
            double sum = 0.0;
            for (std::size_t v = 0; v < n; ++v) sum += b[v] * (ab[v] - a[v]);
            return sum / dn / vy;
        }
        case FirstEstimator::jansen: {
            require_block(b, "jansen first-order", "B");
            require_block(ab, "jansen first-order", "AB(i)");
            double sum = 0.0;
            for (std::size_t v = 0; v < n; ++v) {
                const double d = b[v] - ab[v];
                sum += d * d;
            }
            return (vy - sum / (2.0 * dn)) / vy;
        }
        case FirstEstimator::azzini: {
            require_block(b, "azzini first-order", "B");
            require_block(ab, "azzini first-order", "AB(i)");
            require_block(ba, "azzini first-order", "BA(i)");
            double num = 0.0, den = 0.0;
            for (std::size_t v = 0; v < n; ++v) {
                num += (ba[v] - b[v]) * (a[v] - ab[v]);
                const double dab = a[v] - b[v];
                const double dsw = ba[v] - ab[v];
                den += dab * dab + dsw * dsw;
            }
            if (den == 0.0)
                throw ConstantOutputError("azzini first-order denominator is zero");
            return 2.0 * num / den;
        }
    }
    return 0.0;
}

double total_centered(TotalEstimator e, std::span<const double> a,
                      std::span<const double> b, std::span<const double> ab,
                      std::span<const double> ba, double vy) {
    const std::size_t n = a.size();
    const double dn = static_cast<double>(n);
    switch (e) {
        case TotalEstimator::jansen: {
            require_block(ab, "jansen total-order", "AB(i)");
            double sum = 0.0;
            for (std::size_t v = 0; v < n; ++v) {
                const double d = a[v] - ab[v];
                sum += d * d;
            }
            return sum / (2.0 * dn) / vy;
        }
        case TotalEstimator::sobol: {
            require_block(ab, "sobol total-order", "AB(i)");
            double sum = 0.0;
            for (std::size_t v = 0; v < n; ++v) sum += a[v] * (a[v] - ab[v]);
            return sum / dn / vy;
        }
        case TotalEstimator::homma: {
            require_block(ab, "homma total-order", "AB(i)");
            double sum = 0.0;
            for (std::size_t v = 0; v < n; ++v) sum += a[v] * ab[v];
            return (vy - sum / dn) / vy;
        }
        case TotalEstimator::saltelli: {
            require_block(b, "saltelli total-order", "B");
            require_block(ba, "saltelli total-order", "BA(i)");
            double num = 0.0, den = 0.0;
            for (std::size_t v = 0; v < n; ++v) {
                num += b[v] * ba[v];
                den += a[v] * a[v];
            }
            if (den == 0.0)
                throw ConstantOutputError("saltelli total-order denominator is zero");
            return 1.0 - num / den;
        }
        case TotalEstimator::janon: {
            require_block(ab, "janon total-order", "AB(i)");
            // Self-contained normalization over the (A, AB(i)) pool.
            double m = 0.0;
            for (std::size_t v = 0; v < n; ++v) m += (a[v] + ab[v]) / 2.0;
            m /= dn;
            double num = 0.0, den = 0.0;
            for (std::size_t v = 0; v < n; ++v) {
                num += a[v] * ab[v];
                den += (a[v] * a[v] + ab[v] * ab[v]) / 2.0;
            }
            num = num / dn - m * m;
            den = den / dn - m * m;
            if (den == 0.0)
                throw ConstantOutputError("janon total-order denominator is zero");
            return 1.0 - num / den;
        }
        case TotalEstimator::glen: {
            require_block(ab, "glen total-order", "AB(i)");
            const double ma = mean_of(a);
            const double mb = mean_of(ab);
            double cov = 0.0, va = 0.0, vb = 0.0;
            for (std::size_t v = 0; v < n; ++v) {
                const double da = a[v] - ma;
                const double db = ab[v] - mb;
                cov += da * db;
                va += da * da;
                vb += db * db;
            }
            const double dnm1 = dn - 1.0;
            va /= dnm1;
            vb /= dnm1;
            if (va * vb <= 0.0)
                throw ConstantOutputError("glen total-order variance is zero");
            return 1.0 - (cov / dnm1) / std::sqrt(va * vb);
        }
        case TotalEstimator::azzini: {
            require_block(b, "azzini total-order", "B");
            require_block(ab, "azzini total-order", "AB(i)");
            require_block(ba, "azzini total-order", "BA(i)");
            double num = 0.0, den = 0.0;
            for (std::size_t v = 0; v < n; ++v) {
                const double d1 = b[v] - ba[v];
                const double d2 = a[v] - ab[v];
                const double d3 = a[v] - b[v];
                const double d4 = ba[v] - ab[v];
                num += d1 * d1 + d2 * d2;
                den += d3 * d3 + d4 * d4;
            }
            if (den == 0.0)
                throw ConstantOutputError("azzini total-order denominator is zero");
            return num / den;
        }
    }
    return 0.0;
}

std::vector<double> centered_copy(std::span<const double> x, double f0) {
    std::vector<double> out(x.begin(), x.end());
    for (double& v : out) v -= f0;
    return out;
}

void center_in_place(std::vector<double>& x, double f0) {
    for (double& v : x) v -= f0;
}

void center_blocks(GatheredBlocks& blocks, double f0) {
    center_in_place(blocks.y_a, f0);
    center_in_place(blocks.y_b, f0);
    for (auto* family : {&blocks.y_ab1, &blocks.y_ba1, &blocks.y_ab2, &blocks.y_ba2,
                         &blocks.y_ab3, &blocks.y_ba3})
        for (auto& vec : *family) center_in_place(vec, f0);
}

} // namespace

namespace {

void check_block_lengths(std::span<const double> y_a, std::span<const double> y_b,
                         std::span<const double> y_ab, std::span<const double> y_ba) {
    if (y_a.empty()) throw AlignmentError("estimators need the A block outputs");
    for (auto block : {y_b, y_ab, y_ba})
        if (!block.empty() && block.size() != y_a.size())
            throw AlignmentError("all block output vectors must share the base sample size");
}

} // namespace

double estimate_first(FirstEstimator e, std::span<const double> y_a,
                      std::span<const double> y_b, std::span<const double> y_ab,
                      std::span<const double> y_ba, const VarianceSummary& summary) {
    check_block_lengths(y_a, y_b, y_ab, y_ba);
    const auto a = centered_copy(y_a, summary.f0);
    const auto b = centered_copy(y_b, summary.f0);
    const auto ab = centered_copy(y_ab, summary.f0);
    const auto ba = centered_copy(y_ba, summary.f0);
    return first_centered(e, a, b, ab, ba, summary.vy);
}

double estimate_total(TotalEstimator e, std::span<const double> y_a,
                      std::span<const double> y_b, std::span<const double> y_ab,
                      std::span<const double> y_ba, const VarianceSummary& summary) {
    check_block_lengths(y_a, y_b, y_ab, y_ba);
    const auto a = centered_copy(y_a, summary.f0);
    const auto b = centered_copy(y_b, summary.f0);
    const auto ab = centered_copy(y_ab, summary.f0);
    const auto ba = centered_copy(y_ba, summary.f0);
    return total_centered(e, a, b, ab, ba, summary.vy);
}

std::size_t pair_rank(std::size_t i, std::size_t j, std::size_t k) {
    // 1-based i < j <= k, lexicographic rank.
    return (i - 1) * (2 * k - i) / 2 + (j - i - 1);
}

std::size_t triple_rank(std::size_t i, std::size_t j, std::size_t l, std::size_t k) {
    auto c3 = [](std::size_t m) { return m >= 3 ? m * (m - 1) * (m - 2) / 6 : 0; };
    auto c2 = [](std::size_t m) { return m >= 2 ? m * (m - 1) / 2 : 0; };
    // Count triples before (i,j,l) in lexicographic order.
    return c3(k) - c3(k - i + 1) + c2(k - i) - c2(k - j + 1) + (l - j - 1);
}

GatheredBlocks gather_blocks(std::span<const double> y,
                             std::span<const BlockTag> tags,
                             const SampleDesign& design) {
    validate_design(design);
    if (y.size() != tags.size())
        throw AlignmentError("output vector has " + std::to_string(y.size()) +
                             " rows but " + std::to_string(tags.size()) +
                             " block tags were provided");
    const auto expected = static_cast<std::size_t>(total_rows(design));
    if (y.size() != expected)
        throw AlignmentError("output vector has " + std::to_string(y.size()) +
                             " rows; the design requires " + std::to_string(expected));

    std::string bad_rows;
    int bad_count = 0;
    for (std::size_t r = 0; r < y.size(); ++r) {
        if (std::isnan(y[r])) {
            if (bad_count < 8) {
                if (!bad_rows.empty()) bad_rows += ", ";
                bad_rows += std::to_string(r + 1);
            }
            ++bad_count;
        }
    }
    if (bad_count > 0)
        throw InvalidOutputError("model output contains " + std::to_string(bad_count) +
                                 " NaN value(s) at row(s): " + bad_rows +
                                 (bad_count > 8 ? ", ..." : ""));

    const auto n = static_cast<std::size_t>(design.n_base);
    const std::size_t k = design.k();
    const std::size_t pairs = design.order != IndexOrder::first ? k * (k - 1) / 2 : 0;
    const std::size_t triples = design.order == IndexOrder::third ? k * (k - 1) * (k - 2) / 6 : 0;
    const double unfilled = std::numeric_limits<double>::quiet_NaN();

    GatheredBlocks out;
    out.n = design.n_base;
    out.y_a.assign(n, unfilled);
    if (design.has_block(BlockKind::B)) out.y_b.assign(n, unfilled);
    if (design.has_block(BlockKind::AB)) {
        out.y_ab1.assign(k, std::vector<double>(n, unfilled));
        out.y_ab2.assign(pairs, std::vector<double>(n, unfilled));
        out.y_ab3.assign(triples, std::vector<double>(n, unfilled));
    }
    if (design.has_block(BlockKind::BA)) {
        out.y_ba1.assign(k, std::vector<double>(n, unfilled));
        out.y_ba2.assign(pairs, std::vector<double>(n, unfilled));
        out.y_ba3.assign(triples, std::vector<double>(n, unfilled));
    }

    auto slot = [&](const BlockTag& tag) -> std::vector<double>* {
        const bool is_ab = tag.kind == BlockKind::AB;
        const int swapped = (tag.cols[0] > 0 ? 1 : 0) + (tag.cols[1] > 0 ? 1 : 0) +
                            (tag.cols[2] > 0 ? 1 : 0);
        switch (tag.kind) {
            case BlockKind::A: return &out.y_a;
            case BlockKind::B: return out.y_b.empty() ? nullptr : &out.y_b;
            case BlockKind::AB:
            case BlockKind::BA: {
                auto& fam1 = is_ab ? out.y_ab1 : out.y_ba1;
                auto& fam2 = is_ab ? out.y_ab2 : out.y_ba2;
                auto& fam3 = is_ab ? out.y_ab3 : out.y_ba3;
                if (swapped == 1) {
                    const auto i = static_cast<std::size_t>(tag.cols[0]);
                    if (fam1.empty() || i < 1 || i > k) return nullptr;
                    return &fam1[i - 1];
                }
                if (swapped == 2) {
                    const auto i = static_cast<std::size_t>(tag.cols[0]);
                    const auto j = static_cast<std::size_t>(tag.cols[1]);
                    if (fam2.empty() || i < 1 || j <= i || j > k) return nullptr;
                    return &fam2[pair_rank(i, j, k)];
                }
                if (swapped == 3) {
                    const auto i = static_cast<std::size_t>(tag.cols[0]);
                    const auto j = static_cast<std::size_t>(tag.cols[1]);
                    const auto l = static_cast<std::size_t>(tag.cols[2]);
                    if (fam3.empty() || i < 1 || j <= i || l <= j || l > k) return nullptr;
                    return &fam3[triple_rank(i, j, l, k)];
                }
                return nullptr;
            }
        }
        return nullptr;
    };

    for (std::size_t r = 0; r < tags.size(); ++r) {
        const BlockTag& tag = tags[r];
        std::vector<double>* dst = slot(tag);
        if (dst == nullptr)
            throw AlignmentError("row " + std::to_string(r + 1) + " carries block tag '" +
                                 to_string(tag) + "' which the design does not contain");
        if (tag.base_row < 0 || tag.base_row >= design.n_base)
            throw AlignmentError("row " + std::to_string(r + 1) + " has base-row index " +
                                 std::to_string(tag.base_row + 1) + " outside 1.." +
                                 std::to_string(design.n_base));
        auto& cell = (*dst)[static_cast<std::size_t>(tag.base_row)];
        if (!std::isnan(cell))
            throw AlignmentError("duplicate block tag '" + to_string(tag) + "' for base row " +
                                 std::to_string(tag.base_row + 1));
        cell = y[r];
    }

    auto check_complete = [&](const std::vector<double>& vec, const std::string& label) {
        for (std::size_t v = 0; v < vec.size(); ++v)
            if (std::isnan(vec[v]))
                throw AlignmentError("block " + label + " is missing base row " +
                                     std::to_string(v + 1));
    };
    check_complete(out.y_a, "A");
    if (!out.y_b.empty()) check_complete(out.y_b, "B");
    for (std::size_t i = 0; i < out.y_ab1.size(); ++i)
        check_complete(out.y_ab1[i], "AB_" + std::to_string(i + 1));
    for (std::size_t i = 0; i < out.y_ba1.size(); ++i)
        check_complete(out.y_ba1[i], "BA_" + std::to_string(i + 1));
    for (const auto& vec : out.y_ab2) check_complete(vec, "AB(ij)");
    for (const auto& vec : out.y_ba2) check_complete(vec, "BA(ij)");
    for (const auto& vec : out.y_ab3) check_complete(vec, "AB(ijl)");
    for (const auto& vec : out.y_ba3) check_complete(vec, "BA(ijl)");
    return out;
}

std::string to_string(Sensitivity s) {
    switch (s) {
        case Sensitivity::Si: return "Si";
        case Sensitivity::Ti: return "Ti";
        case Sensitivity::Sij: return "Sij";
        case Sensitivity::Sijk: return "Sijk";
    }
    return "?";
}

std::vector<IndexRowSpec> index_row_layout(std::size_t k, IndexOrder order) {
    std::vector<IndexRowSpec> layout;
    for (std::size_t i = 1; i <= k; ++i)
        layout.push_back({Sensitivity::Si, {static_cast<std::int32_t>(i), 0, 0}});
    for (std::size_t i = 1; i <= k; ++i)
        layout.push_back({Sensitivity::Ti, {static_cast<std::int32_t>(i), 0, 0}});
    if (order != IndexOrder::first)
        for (std::size_t i = 1; i <= k; ++i)
            for (std::size_t j = i + 1; j <= k; ++j)
                layout.push_back({Sensitivity::Sij,
                                  {static_cast<std::int32_t>(i), static_cast<std::int32_t>(j), 0}});
    if (order == IndexOrder::third)
        for (std::size_t i = 1; i <= k; ++i)
            for (std::size_t j = i + 1; j <= k; ++j)
                for (std::size_t l = j + 1; l <= k; ++l)
                    layout.push_back({Sensitivity::Sijk,
                                      {static_cast<std::int32_t>(i), static_cast<std::int32_t>(j),
                                       static_cast<std::int32_t>(l)}});
    return layout;
}

std::string join_parameters(const std::vector<std::string>& params, const IndexRowSpec& spec) {
    std::string out;
    for (std::int32_t member : spec.members) {
        if (member <= 0) break;
        if (!out.empty()) out += ".";
        out += params[static_cast<std::size_t>(member - 1)];
    }
    return out;
}

namespace {

std::span<const double> maybe(const std::vector<std::vector<double>>& family, std::size_t idx) {
    if (family.empty()) return {};
    return family[idx];
}

// All point estimates over centered blocks, in index_row_layout order.
std::vector<double> values_on_centered(const GatheredBlocks& blocks,
                                       const EstimatorConfig& config, double vy,
                                       std::size_t k) {
    std::vector<double> values;
    std::vector<double> si(k);
    for (std::size_t i = 0; i < k; ++i) {
        si[i] = first_centered(config.first, blocks.y_a, blocks.y_b,
                               maybe(blocks.y_ab1, i), maybe(blocks.y_ba1, i), vy);
        values.push_back(si[i]);
    }
    for (std::size_t i = 0; i < k; ++i)
        values.push_back(total_centered(config.total, blocks.y_a, blocks.y_b,
                                        maybe(blocks.y_ab1, i), maybe(blocks.y_ba1, i), vy));

    if (config.order != IndexOrder::first) {
        std::vector<double> closed2(k * (k - 1) / 2);
        for (std::size_t i = 1; i <= k; ++i) {
            for (std::size_t j = i + 1; j <= k; ++j) {
                const std::size_t rank = pair_rank(i, j, k);
                const double closed =
                    first_centered(config.first, blocks.y_a, blocks.y_b,
                                   maybe(blocks.y_ab2, rank), maybe(blocks.y_ba2, rank), vy);
                closed2[rank] = closed;
                values.push_back(closed - si[i - 1] - si[j - 1]);
            }
        }
        if (config.order == IndexOrder::third) {
            for (std::size_t i = 1; i <= k; ++i) {
                for (std::size_t j = i + 1; j <= k; ++j) {
                    for (std::size_t l = j + 1; l <= k; ++l) {
                        const std::size_t rank = triple_rank(i, j, l, k);
                        const double closed = first_centered(
                            config.first, blocks.y_a, blocks.y_b, maybe(blocks.y_ab3, rank),
                            maybe(blocks.y_ba3, rank), vy);
                        const double sij = closed2[pair_rank(i, j, k)] - si[i - 1] - si[j - 1];
                        const double sil = closed2[pair_rank(i, l, k)] - si[i - 1] - si[l - 1];
                        const double sjl = closed2[pair_rank(j, l, k)] - si[j - 1] - si[l - 1];
                        values.push_back(closed - sij - sil - sjl - si[i - 1] - si[j - 1] -
                                         si[l - 1]);
                    }
                }
            }
        }
    }
    return values;
}

} // namespace

std::vector<double> compute_index_values(const GatheredBlocks& blocks,
                                         const EstimatorConfig& config,
                                         const VarianceSummary& summary) {
    GatheredBlocks centered = blocks;
    center_blocks(centered, summary.f0);
    const std::size_t k = std::max(centered.y_ab1.size(), centered.y_ba1.size());
    return values_on_centered(centered, config, summary.vy, k);
}

const IndexRow& IndexTable::find(Sensitivity kind, const std::string& parameters) const {
    for (const auto& row : rows)
        if (row.sensitivity == kind && row.parameters == parameters) return row;
    throw Error("index table has no " + to_string(kind) + " row for '" + parameters + "'");
}

namespace detail {

std::vector<double> plan_values(const GatheredBlocks& blocks, const EstimatorConfig& config,
                                bool dummy_only) {
    const VarianceSummary summary = estimate_variance_summary(blocks.y_a, blocks.y_b);
    if (!dummy_only) return compute_index_values(blocks, config, summary);

    GatheredBlocks centered = blocks;
    center_blocks(centered, summary.f0);
    const std::size_t k = std::max(centered.y_ab1.size(), centered.y_ba1.size());
    const std::size_t last = k - 1;
    return {first_centered(config.first, centered.y_a, centered.y_b,
                           maybe(centered.y_ab1, last), maybe(centered.y_ba1, last),
                           summary.vy),
            total_centered(config.total, centered.y_a, centered.y_b,
                           maybe(centered.y_ab1, last), maybe(centered.y_ba1, last),
                           summary.vy)};
}

std::vector<IndexRowSpec> plan_layout(const SampleDesign& design, const EstimatorConfig& config,
                                      bool dummy_only) {
    const auto k = static_cast<std::int32_t>(design.k());
    if (dummy_only)
        return {{Sensitivity::Si, {k, 0, 0}}, {Sensitivity::Ti, {k, 0, 0}}};
    return index_row_layout(design.k(), config.order);
}

IndexTable assemble_table(const SampleDesign& design, const EstimatorConfig& config,
                          const std::vector<IndexRowSpec>& layout,
                          const std::vector<double>& values, bool dummy_only) {
    IndexTable table;
    table.first_estimator = to_string(config.first);
    table.total_estimator = to_string(config.total);
    table.total_runs = total_rows(design);
    for (std::size_t r = 0; r < layout.size(); ++r) {
        IndexRow row;
        row.original = values[r];
        row.sensitivity = layout[r].kind;
        row.parameters = join_parameters(design.params, layout[r]);
        table.rows.push_back(std::move(row));
        if (!dummy_only && layout[r].kind == Sensitivity::Si)
            table.sum_first_order += values[r];
    }
    return table;
}

} // namespace detail

IndexTable sobol_indices(std::span<const double> y, std::span<const BlockTag> tags,
                         const SampleDesign& design, const EstimatorConfig& config,
                         const std::optional<BootConfig>& boot, const BootstrapHook& hook) {
    return detail::run_analysis(y, tags, design, config, boot, hook, false);
}

IndexTable sobol_indices(std::span<const double> y, const SampleDesign& design,
                         const EstimatorConfig& config,
                         const std::optional<BootConfig>& boot, const BootstrapHook& hook) {
    const auto tags = block_tags(design);
    return detail::run_analysis(y, tags, design, config, boot, hook, false);
}

IndexTable sobol_dummy(std::span<const double> y, std::span<const BlockTag> tags,
                       const SampleDesign& design, const EstimatorConfig& config,
                       const std::optional<BootConfig>& boot, const BootstrapHook& hook) {
    return detail::run_analysis(y, tags, design, config, boot, hook, true);
}

IndexTable sobol_dummy(std::span<const double> y, const SampleDesign& design,
                       const EstimatorConfig& config,
                       const std::optional<BootConfig>& boot, const BootstrapHook& hook) {
    const auto tags = block_tags(design);
    return detail::run_analysis(y, tags, design, config, boot, hook, true);
}

} // namespace sensivar
