// sensivar command-line interface: sampling designs, model execution,
// variance-based sensitivity indices, VARS-TO and plots.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "sensivar/analysis.hpp"
#include "sensivar/errors.hpp"
#include "sensivar/plot.hpp"
#include "sensivar/testfunctions.hpp"

using namespace sensivar;

namespace {

struct Overrides {
    std::optional<std::int64_t> n_base;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> generator, first, total, order;
    std::optional<std::int64_t> boot_replicates;
    std::optional<std::string> boot_ci;
    std::optional<double> boot_conf;
    std::optional<std::uint64_t> boot_seed;
    bool no_boot = false;
    bool dummy = false;
    std::optional<std::int64_t> n_star;
    std::optional<double> h;
    std::optional<std::string> builtin, external;
    std::optional<std::uint64_t> model_seed;
};

void add_override_flags(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--n-base", o.n_base, "base sample size N");
    cmd->add_option("--seed", o.seed, "design seed");
    cmd->add_option("--generator", o.generator, "QRN, LHS or R");
    cmd->add_option("--first", o.first, "first-order estimator");
    cmd->add_option("--total", o.total, "total-order estimator");
    cmd->add_option("--order", o.order, "first, second or third");
    cmd->add_option("--boot-replicates", o.boot_replicates, "bootstrap replicates");
    cmd->add_option("--boot-ci", o.boot_ci, "normal or percentile");
    cmd->add_option("--boot-conf", o.boot_conf, "confidence level");
    cmd->add_option("--boot-seed", o.boot_seed, "bootstrap seed");
    cmd->add_flag("--no-boot", o.no_boot, "point estimates only");
    cmd->add_flag("--dummy", o.dummy, "append an inert column");
    cmd->add_option("--n-star", o.n_star, "VARS star centers");
    cmd->add_option("--delta-h", o.h, "VARS grid resolution");
    cmd->add_option("--builtin", o.builtin, "builtin model name");
    cmd->add_option("--external", o.external, "external model command");
    cmd->add_option("--model-seed", o.model_seed, "model seed (metafunction)");
}

AnalysisConfig load_config(const std::string& path, const Overrides& o) {
    AnalysisConfig config = load_analysis_config(path);
    if (o.n_base) config.design.n_base = *o.n_base;
    if (o.seed) config.design.seed = *o.seed;
    if (o.generator) config.design.generator = parse_generator(*o.generator);
    if (o.first) config.estimators.first = parse_first_estimator(*o.first);
    if (o.total) config.estimators.total = parse_total_estimator(*o.total);
    if (o.order) {
        config.estimators.order = parse_index_order(*o.order);
        config.design.order = config.estimators.order;
    }
    if (o.no_boot) config.boot.reset();
    if (o.boot_replicates || o.boot_ci || o.boot_conf || o.boot_seed) {
        BootConfig boot = config.boot.value_or(BootConfig{});
        if (o.boot_replicates) boot.replicates = *o.boot_replicates;
        if (o.boot_ci) boot.ci_type = parse_ci_type(*o.boot_ci);
        if (o.boot_conf) boot.conf = *o.boot_conf;
        if (o.boot_seed) boot.seed = *o.boot_seed;
        config.boot = boot;
    }
    if (o.dummy) config.dummy = true;
    if (o.n_star) config.n_star = *o.n_star;
    if (o.h) config.h = *o.h;
    if (o.external) {
        config.model.kind = ModelSpec::Kind::external;
        config.model.command = *o.external;
    } else if (o.builtin) {
        config.model.kind = ModelSpec::Kind::builtin;
        config.model.name = *o.builtin;
    }
    if (o.model_seed) config.model.seed = *o.model_seed;
    config.validate();
    return config;
}

void print_table(const IndexTable& table) {
    std::printf("\n%s\n", summary_text(table).c_str());
    std::printf("%10s %10s %10s %10s %10s %12s  %s\n", "original", "bias", "std.error",
                "low.ci", "high.ci", "sensitivity", "parameters");
    for (const auto& row : table.rows) {
        auto cell = [](const std::optional<double>& v) {
            char buf[16];
            if (v) std::snprintf(buf, sizeof buf, "%10.3f", *v);
            else std::snprintf(buf, sizeof buf, "%10s", "");
            return std::string(buf);
        };
        std::printf("%10.3f %s %s %s %s %12s  %s\n", row.original, cell(row.bias).c_str(),
                    cell(row.std_error).c_str(), cell(row.low_ci).c_str(),
                    cell(row.high_ci).c_str(), to_string(row.sensitivity).c_str(),
                    row.parameters.c_str());
    }
}

Matrix strip_last_column(const Matrix& values) {
    Matrix out(values.rows(), values.cols() - 1);
    for (std::size_t r = 0; r < values.rows(); ++r)
        for (std::size_t c = 0; c + 1 < values.cols(); ++c) out(r, c) = values(r, c);
    return out;
}

int run_cli(int argc, char** argv) {
    CLI::App app{"variance-based global sensitivity analysis toolkit"};
    app.require_subcommand(1);

    Overrides o;
    std::string config_path, matrix_path, y_path, out_path = "-", out_prefix = "indices";
    std::string out_dir = ".";

    auto* sample = app.add_subcommand("sample", "generate a block-tagged sample matrix");
    sample->add_option("--config", config_path, "JSON config")->required();
    sample->add_option("--out", out_path, "output CSV ('-' for stdout)");
    add_override_flags(sample, o);

    auto* run = app.add_subcommand("run", "evaluate the model over a sample matrix");
    run->add_option("--config", config_path, "JSON config")->required();
    run->add_option("--matrix", matrix_path, "sample matrix CSV")->required();
    run->add_option("--out", out_path, "output CSV ('-' for stdout)");
    add_override_flags(run, o);

    auto* analyze = app.add_subcommand("analyze", "compute sensitivity indices from outputs");
    analyze->add_option("--config", config_path, "JSON config")->required();
    analyze->add_option("--y", y_path, "model output CSV")->required();
    analyze->add_option("--out", out_prefix, "output path prefix");
    add_override_flags(analyze, o);

    auto* dummy = app.add_subcommand("dummy", "inert-column error floor for a builtin model");
    dummy->add_option("--config", config_path, "JSON config")->required();
    dummy->add_option("--out", out_prefix, "output path prefix");
    add_override_flags(dummy, o);

    auto* vars_sample = app.add_subcommand("vars-sample", "generate a VARS star design");
    vars_sample->add_option("--config", config_path, "JSON config")->required();
    vars_sample->add_option("--out", out_path, "output CSV ('-' for stdout)");
    add_override_flags(vars_sample, o);

    auto* vars_analyze = app.add_subcommand("vars-analyze", "VARS-TO from star outputs");
    vars_analyze->add_option("--config", config_path, "JSON config")->required();
    vars_analyze->add_option("--y", y_path, "star-sample output CSV")->required();
    vars_analyze->add_option("--out", out_prefix, "output path prefix");
    add_override_flags(vars_analyze, o);

    std::string fn_name;
    std::uint64_t fn_seed = 0;
    std::int64_t fn_steps = 20;
    bool fn_rescale = false, fn_list = false;
    auto* testfun = app.add_subcommand("testfun",
                                       "evaluate a builtin function on CSV rows from stdin");
    testfun->add_option("--function", fn_name, "builtin function name");
    testfun->add_option("--seed", fn_seed, "metafunction seed");
    testfun->add_option("--steps", fn_steps, "logistic iterations");
    testfun->add_flag("--rescale", fn_rescale, "map unit-cube inputs onto (-pi, pi)");
    testfun->add_flag("--list", fn_list, "list builtin functions");

    std::string plot_kind, indices_path, dummy_path;
    std::size_t plot_bins = 30, plot_smpl = 0;
    std::int64_t plot_n = 0;
    bool plot_hexbin = false;
    auto* plot = app.add_subcommand("plot", "emit SVG plots");
    plot->add_option("--kind", plot_kind, "uncertainty, scatter, multiscatter or indices")
        ->required();
    plot->add_option("--matrix", matrix_path, "sample matrix CSV");
    plot->add_option("--y", y_path, "model output CSV");
    plot->add_option("--n", plot_n, "base sample size (A-block length)");
    plot->add_option("--indices", indices_path, "index table CSV");
    plot->add_option("--dummy-indices", dummy_path, "dummy index table CSV");
    plot->add_option("--bins", plot_bins, "bin count");
    plot->add_option("--smpl", plot_smpl, "multiscatter subsample size");
    plot->add_flag("--hexbin", plot_hexbin, "hexagon density mode for scatter");
    plot->add_option("--out", out_path, "output SVG path")->required();

    std::string which;
    auto* reproduce = app.add_subcommand("reproduce", "run a bundled example end to end");
    reproduce->add_option("name", which, "example1, example2, example3 or annex-vars")
        ->required();
    reproduce->add_option("--out", out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    auto emit = [&](const std::string& text) {
        if (out_path == "-") std::fwrite(text.data(), 1, text.size(), stdout);
        else write_text_atomic(out_path, text);
    };

    if (sample->parsed()) {
        const AnalysisConfig config = load_config(config_path, o);
        emit(matrix_csv(build_sample(config)));
        return 0;
    }

    if (run->parsed()) {
        const AnalysisConfig config = load_config(config_path, o);
        if (is_star_csv(matrix_path)) {
            // star designs: evaluate every point row-wise
            const Matrix points = read_star_points_csv(matrix_path);
            if (config.model.kind == ModelSpec::Kind::builtin) {
                if (builtin_is_multivariate(config.model.name))
                    throw ConfigError("star designs need a scalar model");
                emit(y_csv(evaluate_builtin(config.model, points)));
            } else {
                const CsvTable table = run_external_model(config.model.command, points);
                if (table.header.size() != 1)
                    throw ModelError("star designs need one output column");
                std::string text = "y\n";
                for (const auto& row : table.rows) text += row[0] + "\n";
                emit(text);
            }
            return 0;
        }
        const SampleMatrix sample_matrix = read_matrix_csv(matrix_path);
        if (config.model.kind == ModelSpec::Kind::builtin &&
            builtin_is_multivariate(config.model.name)) {
            const Matrix inputs = config.dummy ? strip_last_column(sample_matrix.values)
                                               : sample_matrix.values;
            const LongTable table = evaluate_budworm_model(config.model, inputs);
            std::vector<double> times;
            for (const auto& key : table.keys)
                times.push_back(parse_double(key[0], "time key"));
            emit(long_csv(table.value_names, table.sample_row, times, table.values));
        } else {
            emit(y_csv(run_scalar_model(config, sample_matrix)));
        }
        return 0;
    }

    if (analyze->parsed()) {
        const AnalysisConfig config = load_config(config_path, o);
        if (config.group_by.empty()) {
            const auto y = read_y_csv(y_path);
            const AnalysisResult result = analyze_scalar(config, y);
            write_index_table_csv(result.table, out_prefix + ".csv");
            write_index_table_json(result.table, out_prefix + ".json");
            if (result.dummy_table)
                write_index_table_csv(*result.dummy_table, out_prefix + "_dummy.csv");
            print_table(result.table);
            if (result.dummy_table) print_table(*result.dummy_table);
        } else {
            const CsvTable y_table = read_csv(y_path);
            const GroupedTables grouped = analyze_grouped(config, y_table);
            write_text_atomic(out_prefix + ".csv", grouped_tables_csv(grouped));
            write_text_atomic(out_prefix + ".json", grouped_tables_json(grouped));
            if (!grouped.dummy_tables.empty())
                write_text_atomic(out_prefix + "_dummy.csv", grouped_tables_csv(grouped, true));
            std::printf("wrote %zu grouped index tables to %s.csv\n", grouped.tables.size(),
                        out_prefix.c_str());
        }
        return 0;
    }

    if (dummy->parsed()) {
        AnalysisConfig config = load_config(config_path, o);
        config.dummy = true;
        if (config.model.kind != ModelSpec::Kind::builtin)
            throw ConfigError("the dummy subcommand drives builtin models only; use "
                              "sample/run/analyze --dummy for external models");
        const SampleMatrix sample_matrix = build_sample(config);
        const auto y = run_scalar_model(config, sample_matrix);
        const AnalysisResult result = analyze_scalar(config, y);
        write_index_table_csv(*result.dummy_table, out_prefix + ".csv");
        write_index_table_json(*result.dummy_table, out_prefix + ".json");
        print_table(*result.dummy_table);
        return 0;
    }

    if (vars_sample->parsed()) {
        const AnalysisConfig config = load_config(config_path, o);
        emit(star_csv(vars_matrices(config.n_star, config.h, config.design.params,
                                    config.design.generator, config.design.seed)));
        return 0;
    }

    if (vars_analyze->parsed()) {
        const AnalysisConfig config = load_config(config_path, o);
        const StarSample star = vars_matrices(config.n_star, config.h, config.design.params,
                                              config.design.generator, config.design.seed);
        const auto y = read_y_csv(y_path);
        const VarsResult result = vars_to(y, star);
        write_text_atomic(out_prefix + ".csv", vars_result_csv(result));
        write_text_atomic(out_prefix + ".json", vars_result_json(result));
        std::printf("\n%s\n", vars_summary_text(result).c_str());
        for (std::size_t i = 0; i < result.ti.size(); ++i)
            std::printf("%14.10f  %s\n", result.ti[i], result.params[i].c_str());
        return 0;
    }

    if (testfun->parsed()) {
        if (fn_list) {
            for (const auto& name : builtin_model_names())
                if (name != "budworm") std::printf("%s\n", name.c_str());
            return 0;
        }
        if (fn_name.empty()) throw ConfigError("testfun needs --function or --list");
        ModelSpec model;
        model.name = fn_name;
        model.seed = fn_seed;
        model.steps = fn_steps;
        model.rescale = fn_rescale;
        if (!is_builtin_model(fn_name) || builtin_is_multivariate(fn_name))
            throw ConfigError("'" + fn_name + "' is not a scalar builtin function");

        std::vector<std::vector<double>> rows;
        std::string line;
        while (std::getline(std::cin, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            std::vector<double> row;
            std::stringstream ss(line);
            std::string cell;
            while (std::getline(ss, cell, ','))
                row.push_back(parse_double(cell, "stdin row " + std::to_string(rows.size() + 1)));
            rows.push_back(std::move(row));
        }
        if (rows.empty()) return 0;
        Matrix inputs(rows.size(), rows[0].size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != rows[0].size())
                throw ModelError("stdin row " + std::to_string(r + 1) + " has " +
                                 std::to_string(rows[r].size()) + " columns, expected " +
                                 std::to_string(rows[0].size()));
            for (std::size_t c = 0; c < rows[r].size(); ++c) inputs(r, c) = rows[r][c];
        }
        for (double v : evaluate_builtin(model, inputs)) std::printf("%.17g\n", v);
        return 0;
    }

    if (plot->parsed()) {
        std::string svg;
        if (plot_kind == "uncertainty") {
            const auto y = read_y_csv(y_path);
            if (plot_n <= 0 || static_cast<std::size_t>(plot_n) > y.size())
                throw ConfigError("uncertainty plot needs --n within the output length");
            svg = plot_uncertainty(
                std::span<const double>(y.data(), static_cast<std::size_t>(plot_n)), plot_bins);
        } else if (plot_kind == "scatter" || plot_kind == "multiscatter") {
            const SampleMatrix m = read_matrix_csv(matrix_path);
            const auto y = read_y_csv(y_path);
            std::vector<std::size_t> a_rows;
            for (std::size_t r = 0; r < m.tags.size(); ++r)
                if (m.tags[r].kind == BlockKind::A) a_rows.push_back(r);
            if (a_rows.empty()) throw ConfigError("matrix has no A-block rows");
            if (y.size() < m.tags.size())
                throw AlignmentError("output vector is shorter than the matrix");
            Matrix a_block(a_rows.size(), m.values.cols());
            std::vector<double> y_a(a_rows.size());
            for (std::size_t i = 0; i < a_rows.size(); ++i) {
                y_a[i] = y[a_rows[i]];
                for (std::size_t c = 0; c < m.values.cols(); ++c)
                    a_block(i, c) = m.values(a_rows[i], c);
            }
            svg = plot_kind == "scatter"
                      ? plot_scatter(a_block, y_a, m.params, plot_bins,
                                     plot_hexbin ? ScatterMethod::hexbin
                                                 : ScatterMethod::points)
                      : plot_multiscatter(a_block, y_a, m.params, plot_smpl);
        } else if (plot_kind == "indices") {
            const IndexTable table = read_index_table_csv(indices_path);
            std::optional<IndexTable> dummy_table;
            if (!dummy_path.empty()) dummy_table = read_index_table_csv(dummy_path);
            svg = plot_indices(table, dummy_table ? &*dummy_table : nullptr);
        } else {
            throw ConfigError("unknown plot kind '" + plot_kind + "'");
        }
        write_svg(svg, out_path);
        return 0;
    }

    if (reproduce->parsed()) {
        const std::string dir = (std::filesystem::path(out_dir) / which).string();
        if (which == "example1") {
            const auto result = reproduce_example1(dir);
            print_table(result.indices);
            print_table(result.dummy);
        } else if (which == "example2") {
            const auto result = reproduce_example2(dir);
            print_table(result.indices);
            print_table(result.dummy);
        } else if (which == "example3") {
            const auto result = reproduce_example3(dir);
            std::printf("computed %zu grouped index tables\n", result.groups.tables.size());
        } else if (which == "annex-vars") {
            const auto result = reproduce_annex_vars(dir);
            std::printf("\n%s\n", vars_summary_text(result).c_str());
            for (std::size_t i = 0; i < result.ti.size(); ++i)
                std::printf("%14.10f  %s\n", result.ti[i], result.params[i].c_str());
        } else {
            throw ConfigError("unknown reproduction '" + which +
                              "' (expected example1, example2, example3 or annex-vars)");
        }
        std::printf("artifacts written to %s\n", dir.c_str());
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const AlignmentError& e) {
        std::fprintf(stderr, "alignment error: %s\n", e.what());
        return 4;
    } catch (const ModelError& e) {
        std::fprintf(stderr, "model error: %s\n", e.what());
        return 3;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "unexpected error: %s\n", e.what());
        return 1;
    }
}
