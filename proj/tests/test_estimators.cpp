#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "test_helpers.hpp"
#include "sensivar/errors.hpp"
#include "sensivar/estimators.hpp"
#include "sensivar/rng.hpp"
#include "sensivar/testfunctions.hpp"

using namespace sensivar;
using helpers::design;

namespace {

const std::vector<FirstEstimator> kFirsts = {FirstEstimator::sobol, FirstEstimator::saltelli,
                                             FirstEstimator::jansen, FirstEstimator::azzini};
const std::vector<TotalEstimator> kTotals = {
    TotalEstimator::jansen, TotalEstimator::sobol,  TotalEstimator::homma,
    TotalEstimator::saltelli, TotalEstimator::janon, TotalEstimator::glen,
    TotalEstimator::azzini};

std::vector<BlockKind> all_blocks() {
    return {BlockKind::A, BlockKind::B, BlockKind::AB, BlockKind::BA};
}

} // namespace

TEST_CASE("variance summary matches hand arithmetic") {
    const std::vector<double> y_a = {0.0, 2.0};
    const std::vector<double> y_b = {1.0, 1.0};
    const auto s = estimate_variance_summary(y_a, y_b);
    CHECK(s.f0 == doctest::Approx(1.0));
    CHECK(s.vy == doctest::Approx(2.0 / 3.0));

    const std::vector<double> c = {3.0, 3.0, 3.0};
    CHECK_THROWS_AS(estimate_variance_summary(c, c), ConstantOutputError);

    // f0 is linear under output scaling
    const std::vector<double> y_a2 = {0.0, 4.0};
    const std::vector<double> y_b2 = {2.0, 2.0};
    CHECK(estimate_variance_summary(y_a2, y_b2).f0 == doctest::Approx(2.0));
}

TEST_CASE("combination validation follows the design table") {
    const std::vector<BlockKind> no_b = {BlockKind::A, BlockKind::AB, BlockKind::BA};
    CHECK_THROWS_AS(validate_combination(FirstEstimator::sobol, TotalEstimator::glen, no_b),
                    CombinationError);

    const std::vector<BlockKind> abab = {BlockKind::A, BlockKind::B, BlockKind::AB};
    CHECK_NOTHROW(validate_combination(FirstEstimator::saltelli, TotalEstimator::jansen, abab));
    CHECK_NOTHROW(validate_combination(FirstEstimator::jansen, TotalEstimator::glen, abab));
    CHECK_THROWS_AS(validate_combination(FirstEstimator::azzini, TotalEstimator::jansen, abab),
                    CombinationError);
    CHECK_THROWS_AS(validate_combination(FirstEstimator::saltelli, TotalEstimator::azzini, abab),
                    CombinationError);

    const std::vector<BlockKind> abba = {BlockKind::A, BlockKind::B, BlockKind::BA};
    CHECK_NOTHROW(validate_combination(FirstEstimator::sobol, TotalEstimator::saltelli, abba));
    CHECK_THROWS_AS(validate_combination(FirstEstimator::sobol, TotalEstimator::jansen, abba),
                    CombinationError);

    const auto all = all_blocks();
    CHECK_NOTHROW(validate_combination(FirstEstimator::azzini, TotalEstimator::azzini, all));
    CHECK_NOTHROW(validate_combination(FirstEstimator::sobol, TotalEstimator::glen, all));
}

TEST_CASE("single-input identity model drives Si and Ti to one") {
    auto d = design(all_blocks(), 1 << 12, 1);
    const auto sm = sobol_matrices(d);
    const auto y = helpers::evaluate_rows(sm, [](std::span<const double> x) { return x[0]; });
    const auto blocks = gather_blocks(y, sm.tags, d);
    const auto summary = estimate_variance_summary(blocks.y_a, blocks.y_b);
    for (auto first : kFirsts) {
        const double si = estimate_first(first, blocks.y_a, blocks.y_b, blocks.y_ab1[0],
                                         blocks.y_ba1[0], summary);
        CHECK(si == doctest::Approx(1.0).epsilon(0.02));
    }
    for (auto total : kTotals) {
        const double ti = estimate_total(total, blocks.y_a, blocks.y_b, blocks.y_ab1[0],
                                         blocks.y_ba1[0], summary);
        CHECK(ti == doctest::Approx(1.0).epsilon(0.02));
    }
}

TEST_CASE("additive two-input model splits the variance evenly") {
    auto d = design(all_blocks(), 1 << 12, 2);
    EstimatorConfig config{FirstEstimator::saltelli, TotalEstimator::jansen, IndexOrder::first};
    const auto table = helpers::run_model(
        d, [](std::span<const double> x) { return x[0] + x[1]; }, config);
    CHECK(table.find(Sensitivity::Si, "x1").original == doctest::Approx(0.5).epsilon(0.06));
    CHECK(table.find(Sensitivity::Si, "x2").original == doctest::Approx(0.5).epsilon(0.06));
}

TEST_CASE("sobol G estimates land on the published desk-scale values") {
    auto d = design({BlockKind::A, BlockKind::B, BlockKind::AB}, 1 << 10, 8);
    EstimatorConfig config{FirstEstimator::saltelli, TotalEstimator::jansen, IndexOrder::first};
    const auto table = helpers::run_model(d, [](std::span<const double> x) { return sobol_g(x); },
                                          config);
    CHECK(table.rows.size() == 16); // 8 Si + 8 Ti
    CHECK(table.find(Sensitivity::Si, "x1").original == doctest::Approx(0.724).epsilon(0.07));
    CHECK(table.find(Sensitivity::Si, "x2").original == doctest::Approx(0.184).epsilon(0.22));
    CHECK(table.find(Sensitivity::Ti, "x1").original == doctest::Approx(0.799).epsilon(0.05));
    CHECK(table.find(Sensitivity::Ti, "x2").original == doctest::Approx(0.243).epsilon(0.13));
    CHECK(table.total_runs == 10240);
}

TEST_CASE("ishigami has a pure-interaction third input") {
    auto d = design({BlockKind::A, BlockKind::B, BlockKind::AB}, 1 << 13, 3);
    EstimatorConfig config{FirstEstimator::saltelli, TotalEstimator::jansen, IndexOrder::first};
    const auto table = helpers::run_model(
        d, [](std::span<const double> x) { return ishigami(x, true); }, config);

    const double s3 = table.find(Sensitivity::Si, "x3").original;
    const double t3 = table.find(Sensitivity::Ti, "x3").original;
    CHECK(std::abs(s3) < 0.02);
    CHECK(t3 > 0.1);

    // independent nested-MC oracle for the same quantity
    const double t3_oracle = oracles::total_index_nested_mc(
        [](std::span<const double> x) { return ishigami(x, true); }, 3, 2, 384, 384, 17);
    CHECK(t3 == doctest::Approx(t3_oracle).epsilon(0.12));
    CHECK(t3 == doctest::Approx(analytic_indices("ishigami").ti[2]).epsilon(0.05));
}

TEST_CASE("closed pair index of a product model") {
    // y = x1*x2 on U(0,1)^2: V = 7/144, V1 = V2 = 1/48, so S1 = S2 = 3/7 and
    // the closed pair variance is the full variance (Sc = 1, S12 = 1/7).
    auto d = design(all_blocks(), 1 << 13, 2, IndexOrder::second);
    EstimatorConfig config{FirstEstimator::azzini, TotalEstimator::azzini, IndexOrder::second};
    const auto table = helpers::run_model(
        d, [](std::span<const double> x) { return x[0] * x[1]; }, config);
    CHECK(table.find(Sensitivity::Si, "x1").original == doctest::Approx(3.0 / 7.0).epsilon(0.05));
    CHECK(table.find(Sensitivity::Si, "x2").original == doctest::Approx(3.0 / 7.0).epsilon(0.05));
    CHECK(table.find(Sensitivity::Sij, "x1.x2").original ==
          doctest::Approx(1.0 / 7.0).epsilon(0.25));
}

TEST_CASE("purely additive models have vanishing pair indices") {
    auto d = design(all_blocks(), 1 << 12, 3, IndexOrder::second);
    EstimatorConfig config{FirstEstimator::jansen, TotalEstimator::jansen, IndexOrder::second};
    const auto table = helpers::run_model(
        d, [](std::span<const double> x) { return x[0] + x[1] + x[2]; }, config);
    for (const auto& row : table.rows)
        if (row.sensitivity == Sensitivity::Sij) CHECK(std::abs(row.original) < 0.03);
}

TEST_CASE("third-order layout carries the full inclusion-exclusion chain") {
    auto d = design({BlockKind::A, BlockKind::B, BlockKind::AB}, 1 << 11, 3, IndexOrder::third);
    EstimatorConfig config{FirstEstimator::saltelli, TotalEstimator::jansen, IndexOrder::third};
    const auto table = helpers::run_model(
        d, [](std::span<const double> x) { return x[0] * x[1] * x[2]; }, config);
    // rows: 3 Si + 3 Ti + 3 Sij + 1 Sijk
    CHECK(table.rows.size() == 10);
    const auto& triple = table.rows.back();
    CHECK(triple.sensitivity == Sensitivity::Sijk);
    CHECK(triple.parameters == "x1.x2.x3");
    // closed triple of a 3-input model explains everything:
    // Sijk = 1 - sum(Sij) - sum(Si)
    double sum = triple.original;
    for (const auto& row : table.rows)
        if (row.sensitivity == Sensitivity::Si || row.sensitivity == Sensitivity::Sij)
            sum += row.original;
    CHECK(sum == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("all estimators are invariant under output scaling and shifting") {
    auto d = design(all_blocks(), 1 << 9, 4);
    const auto sm = sobol_matrices(d);
    const auto y = helpers::evaluate_rows(
        sm, [](std::span<const double> x) { return bratley1992(x); });
    std::vector<double> transformed(y.size());
    const double a = 3.7, b = 11.3;
    for (std::size_t i = 0; i < y.size(); ++i) transformed[i] = a * y[i] + b;

    for (auto first : kFirsts) {
        for (auto total : kTotals) {
            EstimatorConfig config{first, total, IndexOrder::first};
            const auto t1 = sobol_indices(y, sm.tags, d, config);
            const auto t2 = sobol_indices(transformed, sm.tags, d, config);
            for (std::size_t r = 0; r < t1.rows.size(); ++r) {
                const double ref = t1.rows[r].original;
                CHECK(std::abs(t2.rows[r].original - ref) <=
                      1e-12 * std::max(1.0, std::abs(ref)));
            }
        }
    }
}

TEST_CASE("estimators agree with each other and the analytic oracle") {
    auto d = design(all_blocks(), 1 << 13, 8);
    const auto sm = sobol_matrices(d);
    const auto y = helpers::evaluate_rows(sm, [](std::span<const double> x) { return sobol_g(x); });
    const auto blocks = gather_blocks(y, sm.tags, d);
    const auto summary = estimate_variance_summary(blocks.y_a, blocks.y_b);
    const auto oracle = analytic_indices("sobol_g");

    for (std::size_t i = 0; i < 8; ++i) {
        std::vector<double> firsts, totals;
        for (auto e : kFirsts)
            firsts.push_back(estimate_first(e, blocks.y_a, blocks.y_b, blocks.y_ab1[i],
                                            blocks.y_ba1[i], summary));
        for (auto e : kTotals)
            totals.push_back(estimate_total(e, blocks.y_a, blocks.y_b, blocks.y_ab1[i],
                                            blocks.y_ba1[i], summary));
        for (double si : firsts) {
            CHECK(std::abs(si - oracle.si[i]) < 0.02);
            for (double sj : firsts) CHECK(std::abs(si - sj) < 0.02);
        }
        for (double ti : totals) {
            CHECK(std::abs(ti - oracle.ti[i]) < 0.02);
            for (double tj : totals) CHECK(std::abs(ti - tj) < 0.02);
        }
    }
}

TEST_CASE("analysis is tag-driven, not positional") {
    auto d = design({BlockKind::A, BlockKind::B, BlockKind::AB}, 256, 3);
    const auto sm = sobol_matrices(d);
    const auto y = helpers::evaluate_rows(
        sm, [](std::span<const double> x) { return x[0] + 2.0 * x[1] * x[2]; });
    EstimatorConfig config{FirstEstimator::saltelli, TotalEstimator::jansen, IndexOrder::first};
    const auto reference = sobol_indices(y, sm.tags, d, config);

    // permute rows (keeping tag-output pairing) and re-run
    std::vector<std::size_t> perm(y.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    Rng rng(31);
    for (std::size_t i = perm.size(); i > 1; --i)
        std::swap(perm[i - 1], perm[rng.next_below(i)]);

    std::vector<double> y2(y.size());
    std::vector<BlockTag> tags2(y.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
        y2[i] = y[perm[i]];
        tags2[i] = sm.tags[perm[i]];
    }
    const auto shuffled = sobol_indices(y2, tags2, d, config);
    for (std::size_t r = 0; r < reference.rows.size(); ++r)
        CHECK(shuffled.rows[r].original == reference.rows[r].original);
}

TEST_CASE("misaligned or invalid outputs are rejected") {
    auto d = design({BlockKind::A, BlockKind::B, BlockKind::AB}, 64, 2);
    const auto sm = sobol_matrices(d);
    auto y = helpers::evaluate_rows(sm, [](std::span<const double> x) { return x[0]; });
    EstimatorConfig config{FirstEstimator::saltelli, TotalEstimator::jansen, IndexOrder::first};

    std::vector<double> short_y(y.begin(), y.end() - 1);
    CHECK_THROWS_AS(sobol_indices(short_y, d, config), AlignmentError);

    auto bad = y;
    bad[5] = std::nan("");
    bad[17] = std::nan("");
    try {
        sobol_indices(bad, sm.tags, d, config);
        FAIL("expected InvalidOutputError");
    } catch (const InvalidOutputError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("6") != std::string::npos);
        CHECK(msg.find("18") != std::string::npos);
    }
}

TEST_CASE("estimator order must not exceed the design order") {
    auto d = design({BlockKind::A, BlockKind::B, BlockKind::AB}, 64, 3, IndexOrder::first);
    const auto sm = sobol_matrices(d);
    const auto y = helpers::evaluate_rows(sm, [](std::span<const double> x) { return x[0]; });
    EstimatorConfig config{FirstEstimator::saltelli, TotalEstimator::jansen, IndexOrder::second};
    CHECK_THROWS_AS(sobol_indices(y, sm.tags, d, config), DesignError);
}

TEST_CASE("dummy column indices sit at the error floor") {
    // 8 real inputs plus one inert column the model never reads.
    auto d = design({BlockKind::A, BlockKind::B, BlockKind::AB}, 1 << 10, 9);
    const auto sm = sobol_matrices(d);
    const auto y = helpers::evaluate_rows(
        sm, [](std::span<const double> x) { return sobol_g(x.subspan(0, 8)); });
    EstimatorConfig config{FirstEstimator::jansen, TotalEstimator::homma, IndexOrder::first};
    const auto table = sobol_dummy(y, sm.tags, d, config);
    REQUIRE(table.rows.size() == 2);
    CHECK(table.rows[0].sensitivity == Sensitivity::Si);
    CHECK(table.rows[1].sensitivity == Sensitivity::Ti);
    CHECK(std::abs(table.rows[0].original) < 0.05);
    CHECK(std::abs(table.rows[1].original) < 0.05);

    // constant model propagates the constant-output error
    std::vector<double> constant(y.size(), 4.0);
    CHECK_THROWS_AS(sobol_dummy(constant, sm.tags, d, config), ConstantOutputError);
}

TEST_CASE("sobol_indices consumes exactly total_rows outputs on random designs") {
    Rng rng(23);
    for (int trial = 0; trial < 12; ++trial) {
        const auto k = static_cast<std::size_t>(1 + rng.next_below(5));
        const auto n = static_cast<std::int64_t>(4 + rng.next_below(28));
        const IndexOrder order = k >= 2 && trial % 2 ? IndexOrder::second : IndexOrder::first;
        auto d = design(all_blocks(), n, k, order, Generator::R, 600 + trial);
        const auto sm = sobol_matrices(d);
        const auto y = helpers::evaluate_rows(
            sm, [](std::span<const double> x) { return bratley1988(x); });
        EstimatorConfig config{FirstEstimator::azzini, TotalEstimator::azzini, order};

        REQUIRE(y.size() == static_cast<std::size_t>(total_rows(d)));
        CHECK_NOTHROW(sobol_indices(y, sm.tags, d, config));

        std::vector<double> extended = y;
        extended.push_back(0.5);
        CHECK_THROWS_AS(sobol_indices(extended, d, config), AlignmentError);
    }
}

TEST_CASE("closed pair index dominates its singletons") {
    auto d = design(all_blocks(), 1 << 11, 3, IndexOrder::second);
    const auto sm = sobol_matrices(d);
    const auto y = helpers::evaluate_rows(
        sm, [](std::span<const double> x) { return ishigami(x, true); });
    const auto blocks = gather_blocks(y, sm.tags, d);
    const auto summary = estimate_variance_summary(blocks.y_a, blocks.y_b);

    for (std::size_t i = 1; i <= 3; ++i) {
        const double si = estimate_first(FirstEstimator::jansen, blocks.y_a, blocks.y_b,
                                         blocks.y_ab1[i - 1], {}, summary);
        for (std::size_t j = i + 1; j <= 3; ++j) {
            const double sj = estimate_first(FirstEstimator::jansen, blocks.y_a, blocks.y_b,
                                             blocks.y_ab1[j - 1], {}, summary);
            const std::size_t rank = pair_rank(i, j, 3);
            const double closed = estimate_first(FirstEstimator::jansen, blocks.y_a, blocks.y_b,
                                                 blocks.y_ab2[rank], {}, summary);
            CHECK(closed >= std::max(si, sj) - 0.02);
        }
    }
}
