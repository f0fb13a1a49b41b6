#include "doctest.h"

#include <cmath>
#include <cstdio>

#include "test_helpers.hpp"
#include "sensivar/analysis.hpp"
#include "sensivar/errors.hpp"
#include "sensivar/rng.hpp"
#include "sensivar/testfunctions.hpp"

using namespace sensivar;

namespace {

AnalysisConfig minimal_config() {
    AnalysisConfig config;
    config.design.n_base = 64;
    config.design.params = {"x1", "x2"};
    config.design.blocks = {BlockKind::A, BlockKind::B, BlockKind::AB};
    config.model.name = "bratley1992";
    return config;
}

} // namespace

TEST_CASE("config JSON parsing covers every field") {
    const std::string text = R"({
      "design": {"n_base": 128, "params": ["r", "K", "N0"],
                 "blocks": ["A", "B", "AB", "BA"], "order": "second",
                 "generator": "LHS", "seed": 9},
      "marginals": [
        {"name": "r", "dist": "normal", "mean": 1.7, "sd": 0.3},
        {"name": "K", "dist": "normal", "mean": 40, "sd": 1},
        {"name": "N0", "dist": "uniform", "a": 10, "b": 50}
      ],
      "estimators": {"first": "azzini", "total": "azzini", "order": "second"},
      "boot": {"replicates": 200, "ci": "percent", "conf": 0.9, "seed": 3},
      "dummy": false,
      "model": {"builtin": "logistic", "steps": 20},
      "group_by": []
    })";
    const AnalysisConfig config = parse_analysis_config(text);
    CHECK(config.design.n_base == 128);
    CHECK(config.design.order == IndexOrder::second);
    CHECK(config.design.generator == Generator::LHS);
    CHECK(config.marginals.size() == 3);
    CHECK(config.estimators.first == FirstEstimator::azzini);
    CHECK(config.boot->replicates == 200);
    CHECK(config.boot->ci_type == BootConfig::CiType::percentile);
    CHECK(config.model.name == "logistic");
}

TEST_CASE("config parsing rejects bad input with config errors") {
    CHECK_THROWS_AS(parse_analysis_config("{not json"), ConfigError);
    CHECK_THROWS_AS(parse_analysis_config(R"({"design": {"params": ["a"]}})"), ConfigError);
    CHECK_THROWS_AS(parse_analysis_config(R"({
        "design": {"n_base": 8, "params": ["a"]},
        "marginals": [{"dist": "beta", "a": 1, "b": 2}]
      })"),
                    ConfigError);
    // marginal count mismatch
    CHECK_THROWS_AS(parse_analysis_config(R"({
        "design": {"n_base": 8, "params": ["a", "b"]},
        "marginals": [{"dist": "uniform", "a": 0, "b": 1}]
      })"),
                    ConfigError);
    // incompatible estimator combination for the blocks
    CHECK_THROWS_AS(parse_analysis_config(R"({
        "design": {"n_base": 8, "params": ["a"], "blocks": ["A", "B", "AB"]},
        "estimators": {"first": "sobol", "total": "glen"}
      })"),
                    ConfigError);
    // reserved parameter name under dummy mode
    CHECK_THROWS_AS(parse_analysis_config(R"({
        "design": {"n_base": 8, "params": ["dummy", "b"]},
        "dummy": true
      })"),
                    ConfigError);
    CHECK_THROWS_AS(parse_analysis_config(R"({
        "design": {"n_base": 8, "params": ["a"]},
        "model": {"builtin": "no_such_model"}
      })"),
                    ConfigError);
}

TEST_CASE("build_sample applies marginals and keeps the inert column uniform") {
    AnalysisConfig config = minimal_config();
    config.marginals = {MarginalSpec::uniform("x1", 10, 50),
                        MarginalSpec::normal("x2", 0, 2)};
    config.dummy = true;
    const SampleMatrix sample = build_sample(config);
    CHECK(sample.params == std::vector<std::string>{"x1", "x2", "dummy"});
    CHECK(sample.values.rows() ==
          static_cast<std::size_t>(total_rows(config.extended_design())));
    for (std::size_t r = 0; r < sample.values.rows(); ++r) {
        CHECK(sample.values(r, 0) >= 10.0);
        CHECK(sample.values(r, 0) < 50.0);
        CHECK(sample.values(r, 2) >= 0.0);
        CHECK(sample.values(r, 2) < 1.0);
    }
}

TEST_CASE("third-order analysis runs end-to-end from a config") {
    const auto config = parse_analysis_config(R"({
      "design": {"n_base": 512, "params": ["x1", "x2", "x3"], "seed": 2},
      "estimators": {"first": "saltelli", "total": "jansen", "order": "third"},
      "model": {"builtin": "bratley1988"}
    })");
    CHECK(config.design.order == IndexOrder::third); // promoted from the estimators
    const SampleMatrix sample = build_sample(config);
    const auto y = run_scalar_model(config, sample);
    const auto result = analyze_scalar(config, y);
    // 3 Si + 3 Ti + 3 Sij + 1 Sijk
    CHECK(result.table.rows.size() == 10);
    CHECK(result.table.rows.back().sensitivity == Sensitivity::Sijk);
}

TEST_CASE("external identity model reproduces the first column") {
    AnalysisConfig config = minimal_config();
    config.model.kind = ModelSpec::Kind::external;
    config.model.command = "awk -F, '{print $1}'";
    const SampleMatrix sample = build_sample(config);
    const auto y = run_scalar_model(config, sample);
    REQUIRE(y.size() == sample.values.rows());
    for (std::size_t r = 0; r < y.size(); ++r) CHECK(y[r] == sample.values(r, 0));
}

TEST_CASE("external failures surface as model or alignment errors") {
    AnalysisConfig config = minimal_config();
    const SampleMatrix sample = build_sample(config);

    config.model.kind = ModelSpec::Kind::external;
    config.model.command = "false";
    CHECK_THROWS_AS(run_scalar_model(config, sample), ModelError);

    config.model.command = "awk -F, 'NR > 1 {print $1}'"; // one row short
    try {
        run_scalar_model(config, sample);
        FAIL("expected AlignmentError");
    } catch (const AlignmentError& e) {
        CHECK(std::string(e.what()).find("deficit 1") != std::string::npos);
    }

    config.model.command = "awk -F, '{print \"oops\"}'";
    CHECK_THROWS_AS(run_scalar_model(config, sample), ModelError);
}

TEST_CASE("dummy analysis splits real and inert rows") {
    AnalysisConfig config = minimal_config();
    config.design.n_base = 256;
    config.dummy = true;
    config.estimators = {FirstEstimator::jansen, TotalEstimator::homma, IndexOrder::first};
    const SampleMatrix sample = build_sample(config);
    const auto y = run_scalar_model(config, sample);
    const AnalysisResult result = analyze_scalar(config, y);

    CHECK(result.table.rows.size() == 4); // 2 Si + 2 Ti, no dummy rows
    for (const auto& row : result.table.rows) CHECK(row.parameters.find("dummy") == std::string::npos);
    REQUIRE(result.dummy_table.has_value());
    CHECK(result.dummy_table->rows.size() == 2);
    CHECK(result.dummy_table->rows[0].parameters == "dummy");
    CHECK(std::abs(result.dummy_table->rows[0].original) < 0.15);

    double sum = 0.0;
    for (const auto& row : result.table.rows)
        if (row.sensitivity == Sensitivity::Si) sum += row.original;
    CHECK(result.table.sum_first_order == sum);
}

TEST_CASE("grouped analysis equals manual slicing") {
    AnalysisConfig config = minimal_config();
    config.design.n_base = 32;
    config.group_by = {"time", "variable"};

    // synthetic long table: 2 times x 2 variables over the design rows
    const auto rows = static_cast<std::size_t>(total_rows(config.design));
    CsvTable y_table;
    y_table.header = {"row", "time", "u", "v"};
    std::vector<std::vector<double>> slices(4, std::vector<double>(rows));
    Rng rng(8);
    for (std::size_t t = 0; t < 2; ++t) {
        for (std::size_t r = 0; r < rows; ++r) {
            const double u = rng.next_double() + static_cast<double>(t);
            const double v = 2.0 * rng.next_double() - u;
            slices[t * 2 + 0][r] = u;
            slices[t * 2 + 1][r] = v;
            y_table.rows.push_back({std::to_string(r + 1), std::to_string(25 * (t + 1)),
                                    format_double(u), format_double(v)});
        }
    }

    const GroupedTables grouped = analyze_grouped(config, y_table);
    REQUIRE(grouped.tables.size() == 4);
    CHECK(grouped.group_names == std::vector<std::string>{"time", "variable"});
    CHECK(grouped.keys[0] == std::vector<std::string>{"25", "u"});
    CHECK(grouped.keys[3] == std::vector<std::string>{"50", "v"});

    for (std::size_t t = 0; t < 2; ++t) {
        for (std::size_t v = 0; v < 2; ++v) {
            const auto manual = analyze_scalar(config, slices[t * 2 + v]);
            const auto& g = grouped.find(
                {std::to_string(25 * (t + 1)), v == 0 ? "u" : "v"});
            REQUIRE(g.rows.size() == manual.table.rows.size());
            for (std::size_t r = 0; r < g.rows.size(); ++r)
                CHECK(g.rows[r].original == manual.table.rows[r].original);
        }
    }
}

TEST_CASE("grouped analysis rejects broken tables") {
    AnalysisConfig config = minimal_config();
    config.group_by = {"epoch"};
    CsvTable y_table;
    y_table.header = {"time", "value"};
    y_table.rows.push_back({"1", "0.5"});
    CHECK_THROWS_AS(analyze_grouped(config, y_table), ConfigError); // unknown column

    config.group_by = {"time"};
    CHECK_THROWS_AS(analyze_grouped(config, y_table), AlignmentError); // wrong group size
}

TEST_CASE("budworm long output feeds the grouped pipeline") {
    AnalysisConfig config = example3_config();
    config.design.n_base = 8;
    config.boot.reset();
    const SampleMatrix sample = build_sample(config);
    const LongTable table = evaluate_budworm_model(config.model, sample.values);
    CHECK(table.values.rows() == sample.values.rows() * 6);
    CHECK(table.value_names == std::vector<std::string>{"B", "S", "E"});

    CsvTable csv;
    csv.header = {"row", "time", "B", "S", "E"};
    for (std::size_t r = 0; r < table.values.rows(); ++r)
        csv.rows.push_back({std::to_string(table.sample_row[r]), table.keys[r][0],
                            format_double(table.values(r, 0)),
                            format_double(table.values(r, 1)),
                            format_double(table.values(r, 2))});

    const GroupedTables grouped = analyze_grouped(config, csv);
    CHECK(grouped.tables.size() == 18); // 6 times x 3 variables
    for (const auto& t : grouped.tables) CHECK(t.rows.size() == 20);
}

TEST_CASE("summary text mirrors the run header") {
    IndexTable table;
    table.first_estimator = "saltelli";
    table.total_estimator = "jansen";
    table.total_runs = 10240;
    table.sum_first_order = 0.9419303;
    const std::string text = summary_text(table);
    CHECK(text.find("First-order estimator: saltelli | Total-order estimator: jansen") !=
          std::string::npos);
    CHECK(text.find("Total number of model runs: 10240") != std::string::npos);
    CHECK(text.find("Sum of first order indices: 0.9419303") != std::string::npos);
}

TEST_CASE("external sobol G through the pipe matches the builtin bitwise") {
    AnalysisConfig config = minimal_config();
    config.design.params = {"x1", "x2", "x3", "x4", "x5", "x6", "x7", "x8"};
    config.design.n_base = 32;
    const SampleMatrix sample = build_sample(config);

    AnalysisConfig external = config;
    external.model.kind = ModelSpec::Kind::external;
    external.model.command = std::string(SENSIVAR_CLI_PATH) + " testfun --function sobol_g";
    const auto y_ext = run_scalar_model(external, sample);

    AnalysisConfig builtin = config;
    builtin.model.name = "sobol_g";
    const auto y_builtin = run_scalar_model(builtin, sample);
    REQUIRE(y_ext.size() == y_builtin.size());
    for (std::size_t r = 0; r < y_ext.size(); ++r)
        CHECK(std::abs(y_ext[r] - y_builtin[r]) <= 1e-12 * std::max(1.0, std::abs(y_builtin[r])));
}
