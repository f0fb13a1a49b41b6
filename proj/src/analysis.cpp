#include "sensivar/analysis.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <unistd.h>

#include "json.hpp"

#include "sensivar/errors.hpp"
#include "sensivar/plot.hpp"
#include "sensivar/rng.hpp"
#include "sensivar/testfunctions.hpp"

namespace sensivar {

namespace {

constexpr const char* kDummyName = "dummy";

} // namespace

void AnalysisConfig::validate() const {
    validate_design(design);
    if (!marginals.empty() && marginals.size() != design.k())
        throw ConfigError("config has " + std::to_string(marginals.size()) +
                          " marginals for " + std::to_string(design.k()) + " parameters");
    if (dummy)
        for (const auto& p : design.params)
            if (p == kDummyName)
                throw ConfigError("dummy analysis reserves the parameter name 'dummy'");
    validate_combination(estimators.first, estimators.total, design.blocks);
    if (model.kind == ModelSpec::Kind::builtin && !is_builtin_model(model.name))
        throw ConfigError("unknown builtin model '" + model.name + "'");
    if (model.kind == ModelSpec::Kind::external && model.command.empty())
        throw ConfigError("external model command is empty");
}

SampleDesign AnalysisConfig::extended_design() const {
    SampleDesign extended = design;
    extended.params.push_back(kDummyName);
    return extended;
}

namespace {

MarginalSpec parse_marginal(const nlohmann::json& j) {
    const std::string name = j.value("name", "");
    const std::string dist = j.at("dist").get<std::string>();
    if (dist == "uniform")
        return MarginalSpec::uniform(name, j.at("a").get<double>(), j.at("b").get<double>());
    if (dist == "normal")
        return MarginalSpec::normal(name, j.at("mean").get<double>(), j.at("sd").get<double>());
    if (dist == "discrete_uniform")
        return MarginalSpec::discrete_uniform(name, j.at("lo").get<std::int64_t>(),
                                              j.at("hi").get<std::int64_t>());
    throw ConfigError("unknown marginal distribution '" + dist + "'");
}

std::vector<BlockKind> parse_blocks(const nlohmann::json& j) {
    std::vector<BlockKind> blocks;
    for (const auto& b : j) {
        const std::string name = b.get<std::string>();
        if (name == "A") blocks.push_back(BlockKind::A);
        else if (name == "B") blocks.push_back(BlockKind::B);
        else if (name == "AB") blocks.push_back(BlockKind::AB);
        else if (name == "BA") blocks.push_back(BlockKind::BA);
        else throw ConfigError("unknown block '" + name + "'");
    }
    return blocks;
}

} // namespace

AnalysisConfig parse_analysis_config(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }

    try {
        AnalysisConfig config;
        const auto& d = j.at("design");
        config.design.n_base = d.at("n_base").get<std::int64_t>();
        config.design.params = d.at("params").get<std::vector<std::string>>();
        if (d.contains("blocks")) config.design.blocks = parse_blocks(d.at("blocks"));
        if (d.contains("order"))
            config.design.order = parse_index_order(d.at("order").get<std::string>());
        if (d.contains("generator"))
            config.design.generator = parse_generator(d.at("generator").get<std::string>());
        config.design.seed = d.value("seed", std::uint64_t{0});

        if (j.contains("marginals"))
            for (const auto& m : j.at("marginals")) config.marginals.push_back(parse_marginal(m));

        if (j.contains("estimators")) {
            const auto& e = j.at("estimators");
            if (e.contains("first"))
                config.estimators.first = parse_first_estimator(e.at("first").get<std::string>());
            if (e.contains("total"))
                config.estimators.total = parse_total_estimator(e.at("total").get<std::string>());
            if (e.contains("order")) {
                config.estimators.order = parse_index_order(e.at("order").get<std::string>());
                // the design must carry the swap blocks the estimators consume
                if (!d.contains("order")) config.design.order = config.estimators.order;
            } else {
                config.estimators.order = config.design.order;
            }
        } else {
            config.estimators.order = config.design.order;
        }

        if (j.contains("boot") && !j.at("boot").is_null()) {
            const auto& b = j.at("boot");
            BootConfig boot;
            boot.replicates = b.value("replicates", std::int64_t{1000});
            if (b.contains("ci")) boot.ci_type = parse_ci_type(b.at("ci").get<std::string>());
            boot.conf = b.value("conf", 0.95);
            boot.seed = b.value("seed", std::uint64_t{0});
            config.boot = boot;
        }

        config.dummy = j.value("dummy", false);

        if (j.contains("model")) {
            const auto& m = j.at("model");
            if (m.contains("external")) {
                config.model.kind = ModelSpec::Kind::external;
                config.model.command = m.at("external").get<std::string>();
            } else {
                config.model.kind = ModelSpec::Kind::builtin;
                config.model.name = m.value("builtin", std::string("sobol_g"));
            }
            config.model.seed = m.value("seed", std::uint64_t{0});
            config.model.rescale = m.value("rescale", false);
            config.model.steps = m.value("steps", std::int64_t{20});
            if (m.contains("times")) {
                const auto& t = m.at("times");
                config.model.ode_from = t.value("from", 0.0);
                config.model.ode_to = t.value("to", 150.0);
                config.model.ode_step = t.value("step", kBudwormStep);
            }
            if (m.contains("time_output"))
                config.model.time_output = m.at("time_output").get<std::vector<double>>();
        }

        if (j.contains("group_by"))
            config.group_by = j.at("group_by").get<std::vector<std::string>>();

        if (j.contains("vars")) {
            config.n_star = j.at("vars").value("n_star", std::int64_t{100});
            config.h = j.at("vars").value("h", 0.1);
        }

        config.validate();
        return config;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config field error: ") + e.what());
    }
}

AnalysisConfig load_analysis_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_analysis_config(ss.str());
}

std::vector<std::string> builtin_model_names() {
    return {"ishigami", "sobol_g",   "bratley1992", "bratley1988", "oakley",
            "becker_poly", "metafunction", "logistic",   "budworm"};
}

bool is_builtin_model(const std::string& name) {
    const auto names = builtin_model_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

bool builtin_is_multivariate(const std::string& name) { return name == "budworm"; }

std::vector<double> evaluate_builtin(const ModelSpec& model, const Matrix& inputs) {
    if (model.name == "metafunction") return metafunction(inputs, model.seed);

    std::vector<double> y(inputs.rows());
    for (std::size_t r = 0; r < inputs.rows(); ++r) {
        const auto row = inputs.row(r);
        if (model.name == "ishigami") y[r] = ishigami(row, model.rescale);
        else if (model.name == "sobol_g") y[r] = sobol_g(row);
        else if (model.name == "bratley1992") y[r] = bratley1992(row);
        else if (model.name == "bratley1988") y[r] = bratley1988(row);
        else if (model.name == "oakley") y[r] = oakley(row);
        else if (model.name == "becker_poly") y[r] = becker_poly(row);
        else if (model.name == "logistic") {
            if (row.size() != 3)
                throw ConfigError("logistic model expects 3 columns (r, K, N0)");
            y[r] = logistic_map(row[0], row[1], row[2], model.steps);
        } else {
            throw ConfigError("builtin model '" + model.name + "' is not a scalar model");
        }
    }
    return y;
}

LongTable evaluate_budworm_model(const ModelSpec& model, const Matrix& inputs) {
    const TimeGrid grid =
        make_time_grid(model.ode_from, model.ode_to, model.ode_step, model.time_output);
    LongTable table;
    table.group_names = {"time"};
    table.value_names = {"B", "S", "E"};
    const std::size_t per_row = grid.time_output.size();
    table.values = Matrix(inputs.rows() * per_row, 3);
    for (std::size_t r = 0; r < inputs.rows(); ++r) {
        const auto params = BudwormParams::from_row(inputs.row(r));
        const Matrix traj = budworm_trajectory(params, grid);
        for (std::size_t t = 0; t < per_row; ++t) {
            const std::size_t out_row = r * per_row + t;
            table.sample_row.push_back(static_cast<std::int64_t>(r + 1));
            table.keys.push_back({format_double(grid.time_output[t])});
            for (std::size_t c = 0; c < 3; ++c) table.values(out_row, c) = traj(t, c);
        }
    }
    return table;
}

namespace {

std::string fresh_temp_path(const char* tag) {
    static std::uint64_t counter = 0;
    std::uint64_t state = static_cast<std::uint64_t>(::getpid()) ^ (++counter << 32) ^
                          static_cast<std::uint64_t>(
                              std::chrono::steady_clock::now().time_since_epoch().count());
    const std::uint64_t nonce = splitmix64(state);
    return (std::filesystem::temp_directory_path() /
            ("sensivar-" + std::string(tag) + "-" + std::to_string(nonce)))
        .string();
}

bool looks_numeric(const std::string& cell) {
    if (cell.empty()) return false;
    char* end = nullptr;
    std::strtod(cell.c_str(), &end);
    return end != cell.c_str() && *end == '\0';
}

} // namespace

CsvTable run_external_model(const std::string& command, const Matrix& inputs) {
    const std::string in_path = fresh_temp_path("in");
    const std::string out_path = fresh_temp_path("out");

    std::string stdin_text;
    for (std::size_t r = 0; r < inputs.rows(); ++r) {
        for (std::size_t c = 0; c < inputs.cols(); ++c) {
            if (c) stdin_text += ",";
            stdin_text += format_double(inputs(r, c));
        }
        stdin_text += "\n";
    }
    write_text_atomic(in_path, stdin_text);

    const std::string shell_command =
        "( " + command + " ) < '" + in_path + "' > '" + out_path + "'";
    const int status = std::system(shell_command.c_str());
    std::filesystem::remove(in_path);
    if (status != 0) {
        std::filesystem::remove(out_path);
        throw ModelError("external model command failed (status " + std::to_string(status) +
                         "): " + command);
    }

    std::ifstream out(out_path);
    if (!out) throw ModelError("external model produced no output file");
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(out, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    out.close();
    std::filesystem::remove(out_path);

    if (lines.empty())
        throw AlignmentError("external model wrote no rows; expected " +
                             std::to_string(inputs.rows()));

    CsvTable table;
    std::size_t first_data = 0;
    {
        std::stringstream ss(lines[0]);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!looks_numeric(cells[0])) {
            table.header = cells;
            first_data = 1;
        } else {
            table.header.assign(cells.size(), "");
            if (cells.size() == 1) table.header[0] = "y";
            else
                for (std::size_t c = 0; c < cells.size(); ++c)
                    table.header[c] = "y" + std::to_string(c + 1);
        }
    }
    for (std::size_t i = first_data; i < lines.size(); ++i) {
        std::stringstream ss(lines[i]);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() != table.header.size())
            throw ModelError("external model row " + std::to_string(i - first_data + 1) +
                             " has " + std::to_string(cells.size()) + " columns, expected " +
                             std::to_string(table.header.size()));
        for (const auto& c : cells)
            if (!looks_numeric(c))
                throw ModelError("external model wrote a non-numeric value '" + c +
                                 "' at row " + std::to_string(i - first_data + 1));
        table.rows.push_back(std::move(cells));
    }

    if (table.rows.size() != inputs.rows())
        throw AlignmentError("external model wrote " + std::to_string(table.rows.size()) +
                             " rows; expected " + std::to_string(inputs.rows()) +
                             " (deficit " +
                             std::to_string(static_cast<long long>(inputs.rows()) -
                                            static_cast<long long>(table.rows.size())) +
                             ")");
    return table;
}

SampleMatrix build_sample(const AnalysisConfig& config) {
    config.validate();
    const SampleDesign design = config.dummy ? config.extended_design() : config.design;
    SampleMatrix sample = sobol_matrices(design);
    if (!config.marginals.empty()) {
        // transform the real parameter columns; the inert column stays uniform
        for (std::size_t c = 0; c < config.marginals.size(); ++c)
            for (std::size_t r = 0; r < sample.values.rows(); ++r)
                sample.values(r, c) = config.marginals[c].transform(sample.values(r, c));
    }
    return sample;
}

namespace {

Matrix strip_dummy_column(const Matrix& values, bool dummy) {
    if (!dummy) return values;
    Matrix out(values.rows(), values.cols() - 1);
    for (std::size_t r = 0; r < values.rows(); ++r)
        for (std::size_t c = 0; c + 1 < values.cols(); ++c) out(r, c) = values(r, c);
    return out;
}

} // namespace

std::vector<double> run_scalar_model(const AnalysisConfig& config, const SampleMatrix& sample) {
    const Matrix inputs = strip_dummy_column(sample.values, config.dummy);
    if (config.model.kind == ModelSpec::Kind::builtin)
        return evaluate_builtin(config.model, inputs);

    const CsvTable table = run_external_model(config.model.command, inputs);
    if (table.header.size() != 1)
        throw ModelError("scalar analysis expects one output column, the external model wrote " +
                         std::to_string(table.header.size()));
    std::vector<double> y(table.rows.size());
    for (std::size_t r = 0; r < y.size(); ++r)
        y[r] = parse_double(table.rows[r][0], "external output row " + std::to_string(r + 1));
    return y;
}

namespace {

// Splits the table computed over the extended design into the real-parameter
// table and the inert-column Si/Ti pair.
AnalysisResult split_extended_table(const IndexTable& full, const SampleDesign& extended,
                                    IndexOrder order) {
    const std::size_t k_ext = extended.params.size();
    const auto layout = index_row_layout(k_ext, order);
    AnalysisResult result;
    result.table.first_estimator = full.first_estimator;
    result.table.total_estimator = full.total_estimator;
    result.table.total_runs = full.total_runs;

    IndexTable dummy;
    dummy.first_estimator = full.first_estimator;
    dummy.total_estimator = full.total_estimator;
    dummy.total_runs = full.total_runs;

    for (std::size_t r = 0; r < full.rows.size(); ++r) {
        bool involves_dummy = false;
        for (std::int32_t member : layout[r].members)
            involves_dummy |= (member == static_cast<std::int32_t>(k_ext));
        if (!involves_dummy) {
            result.table.rows.push_back(full.rows[r]);
            if (layout[r].kind == Sensitivity::Si)
                result.table.sum_first_order += full.rows[r].original;
        } else if (layout[r].kind == Sensitivity::Si || layout[r].kind == Sensitivity::Ti) {
            dummy.rows.push_back(full.rows[r]);
        }
    }
    result.dummy_table = std::move(dummy);
    return result;
}

} // namespace

AnalysisResult analyze_scalar(const AnalysisConfig& config, std::span<const double> y) {
    config.validate();
    if (!config.dummy) {
        AnalysisResult result;
        result.table = sobol_indices(y, config.design, config.estimators, config.boot);
        return result;
    }
    const SampleDesign extended = config.extended_design();
    const IndexTable full = sobol_indices(y, extended, config.estimators, config.boot);
    return split_extended_table(full, extended, config.estimators.order);
}

const IndexTable& GroupedTables::find(const std::vector<std::string>& key) const {
    for (std::size_t g = 0; g < keys.size(); ++g)
        if (keys[g] == key) return tables[g];
    std::string text;
    for (const auto& part : key) text += part + " ";
    throw Error("no group for key: " + text);
}

GroupedTables analyze_grouped(const AnalysisConfig& config, const CsvTable& y_table) {
    config.validate();
    if (config.group_by.empty())
        throw ConfigError("grouped analysis needs group_by columns");

    const bool melt_variables =
        std::find(config.group_by.begin(), config.group_by.end(), "variable") !=
        config.group_by.end();

    std::vector<std::string> key_columns;
    for (const auto& g : config.group_by) {
        if (g == "variable") continue;
        if (!y_table.has_column(g))
            throw ConfigError("group column '" + g + "' is not in the output table");
        key_columns.push_back(g);
    }

    std::vector<std::size_t> value_cols;
    for (std::size_t c = 0; c < y_table.header.size(); ++c) {
        const std::string& name = y_table.header[c];
        if (name == "row") continue;
        if (std::find(key_columns.begin(), key_columns.end(), name) != key_columns.end())
            continue;
        value_cols.push_back(c);
    }
    if (value_cols.empty()) throw ConfigError("output table has no value columns");
    if (!melt_variables && value_cols.size() > 1)
        throw ConfigError("multiple value columns require grouping by 'variable'");

    const bool has_row = y_table.has_column("row");
    const std::size_t row_col = has_row ? y_table.column("row") : 0;
    std::vector<std::size_t> key_idx;
    for (const auto& name : key_columns) key_idx.push_back(y_table.column(name));

    // bucket data rows by key tuple, keeping first-appearance order
    std::vector<std::vector<std::string>> key_order;
    std::map<std::vector<std::string>, std::vector<std::size_t>> buckets;
    for (std::size_t r = 0; r < y_table.rows.size(); ++r) {
        std::vector<std::string> key;
        for (std::size_t idx : key_idx) key.push_back(y_table.rows[r][idx]);
        auto [it, inserted] = buckets.try_emplace(key);
        if (inserted) key_order.push_back(key);
        it->second.push_back(r);
    }

    const SampleDesign active = config.dummy ? config.extended_design() : config.design;
    const auto expected = static_cast<std::size_t>(total_rows(active));

    GroupedTables out;
    out.group_names = key_columns;
    if (melt_variables) out.group_names.push_back("variable");

    for (const auto& key : key_order) {
        auto& rows = buckets[key];
        if (rows.empty()) throw ConfigError("empty group encountered");
        if (rows.size() != expected)
            throw AlignmentError("group has " + std::to_string(rows.size()) +
                                 " rows; the design requires " + std::to_string(expected));
        if (has_row) {
            std::stable_sort(rows.begin(), rows.end(), [&](std::size_t a, std::size_t b) {
                return std::stoll(y_table.rows[a][row_col]) <
                       std::stoll(y_table.rows[b][row_col]);
            });
        }
        for (std::size_t v = 0; v < value_cols.size(); ++v) {
            std::vector<double> y(rows.size());
            for (std::size_t i = 0; i < rows.size(); ++i)
                y[i] = parse_double(y_table.rows[rows[i]][value_cols[v]], "grouped output");

            std::vector<std::string> full_key = key;
            if (melt_variables) full_key.push_back(y_table.header[value_cols[v]]);

            const AnalysisResult result = analyze_scalar(config, y);
            out.keys.push_back(full_key);
            out.tables.push_back(result.table);
            if (result.dummy_table) out.dummy_tables.push_back(*result.dummy_table);
        }
    }
    return out;
}

std::string summary_text(const IndexTable& table) {
    char sum[32];
    std::snprintf(sum, sizeof sum, "%.7g", table.sum_first_order);
    return "First-order estimator: " + table.first_estimator +
           " | Total-order estimator: " + table.total_estimator +
           "\n\nTotal number of model runs: " + std::to_string(table.total_runs) +
           "\n\nSum of first order indices: " + sum + "\n";
}

std::string vars_summary_text(const VarsResult& result) {
    char h[32];
    std::snprintf(h, sizeof h, "%g", result.h);
    return "Number of star centers: " + std::to_string(result.n_star) + " | h: " + h +
           "\n\nTotal number of model runs: " + std::to_string(result.total_runs) + "\n";
}

namespace {

std::vector<std::string> make_param_names(const std::string& stem, int k) {
    std::vector<std::string> params;
    for (int i = 1; i <= k; ++i) params.push_back(stem + std::to_string(i));
    return params;
}

Matrix a_block_values(const SampleMatrix& sample, std::int64_t n) {
    Matrix a(static_cast<std::size_t>(n), sample.values.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) a(r, c) = sample.values(r, c);
    return a;
}

Matrix column_subset(const Matrix& m, std::size_t count) {
    Matrix out(m.rows(), count);
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < count; ++c) out(r, c) = m(r, c);
    return out;
}

std::filesystem::path ensure_dir(const std::string& out_dir) {
    std::filesystem::path dir(out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + out_dir + "'");
    return dir;
}

} // namespace

AnalysisConfig example1_config() {
    AnalysisConfig config;
    config.design.n_base = 1 << 10;
    config.design.params = make_param_names("x", 8);
    config.design.blocks = {BlockKind::A, BlockKind::B, BlockKind::AB};
    config.design.generator = Generator::QRN;
    config.estimators = {FirstEstimator::saltelli, TotalEstimator::jansen, IndexOrder::first};
    config.boot = BootConfig{1000, BootConfig::CiType::normal, 0.95, 101};
    config.model.name = "sobol_g";
    return config;
}

AnalysisConfig example2_config() {
    AnalysisConfig config;
    config.design.n_base = 1 << 13;
    config.design.params = {"r", "K", "N0"};
    config.design.blocks = {BlockKind::A, BlockKind::B, BlockKind::AB, BlockKind::BA};
    config.design.order = IndexOrder::second;
    config.design.generator = Generator::LHS;
    config.design.seed = 1;
    config.marginals = {MarginalSpec::normal("r", 1.7, 0.3), MarginalSpec::normal("K", 40, 1),
                        MarginalSpec::uniform("N0", 10, 50)};
    config.estimators = {FirstEstimator::azzini, TotalEstimator::azzini, IndexOrder::second};
    config.boot = BootConfig{1000, BootConfig::CiType::percentile, 0.95, 202};
    config.model.name = "logistic";
    config.model.steps = 20;
    return config;
}

AnalysisConfig example3_config() {
    AnalysisConfig config;
    config.design.n_base = 1 << 9;
    config.design.params = {"r_b", "K", "beta", "alpha", "r_s",
                            "K_s", "K_e", "r_e", "P", "T_e"};
    config.design.blocks = {BlockKind::A, BlockKind::B, BlockKind::AB};
    config.design.generator = Generator::QRN;
    config.marginals = {
        MarginalSpec::uniform("r_b", 1.52, 1.6),
        MarginalSpec::uniform("K", 100, 355),
        MarginalSpec::uniform("beta", 20000, 43200),
        MarginalSpec::uniform("alpha", 1, 2),
        MarginalSpec::uniform("r_s", 0.095, 0.15),
        MarginalSpec::uniform("K_s", 24000, 25440),
        MarginalSpec::uniform("K_e", 1, 1.2),
        MarginalSpec::uniform("r_e", 0.92, 1),
        MarginalSpec::uniform("P", 0.0015, 0.00195),
        MarginalSpec::uniform("T_e", 0.7, 0.9),
    };
    config.estimators = {FirstEstimator::jansen, TotalEstimator::jansen, IndexOrder::first};
    config.boot = BootConfig{1000, BootConfig::CiType::normal, 0.95, 303};
    config.model.name = "budworm";
    config.group_by = {"time", "variable"};
    return config;
}

ReproduceExample1 reproduce_example1(const std::string& out_dir) {
    const auto dir = ensure_dir(out_dir);
    AnalysisConfig config = example1_config();

    const SampleMatrix sample = build_sample(config);
    const auto y = run_scalar_model(config, sample);
    const AnalysisResult main = analyze_scalar(config, y);

    AnalysisConfig dummy_config = config;
    dummy_config.dummy = true;
    const SampleMatrix dummy_sample = build_sample(dummy_config);
    const auto dummy_y = run_scalar_model(dummy_config, dummy_sample);
    const AnalysisResult with_dummy = analyze_scalar(dummy_config, dummy_y);

    write_index_table_csv(main.table, (dir / "indices.csv").string());
    write_index_table_json(main.table, (dir / "indices.json").string());
    write_index_table_csv(*with_dummy.dummy_table, (dir / "dummy.csv").string());
    write_index_table_json(*with_dummy.dummy_table, (dir / "dummy.json").string());
    write_matrix_csv(sample, (dir / "matrix.csv").string());
    write_text_atomic((dir / "y.csv").string(), y_csv(y));

    const Matrix a_block = a_block_values(sample, config.design.n_base);
    const std::span<const double> y_a(y.data(), static_cast<std::size_t>(config.design.n_base));
    write_svg(plot_uncertainty(y_a), (dir / "uncertainty.svg").string());
    write_svg(plot_scatter(a_block, y_a, sample.params), (dir / "scatter.svg").string());
    write_svg(plot_multiscatter(column_subset(a_block, 4), y_a,
                                {sample.params.begin(), sample.params.begin() + 4}),
              (dir / "multiscatter.svg").string());
    write_svg(plot_indices(main.table, &*with_dummy.dummy_table),
              (dir / "indices.svg").string());

    return {main.table, *with_dummy.dummy_table};
}

ReproduceExample2 reproduce_example2(const std::string& out_dir) {
    const auto dir = ensure_dir(out_dir);
    AnalysisConfig config = example2_config();

    const SampleMatrix sample = build_sample(config);
    const auto y = run_scalar_model(config, sample);
    const AnalysisResult main = analyze_scalar(config, y);

    // the inert-column run stays first-order: one extra swap family column
    AnalysisConfig dummy_config = config;
    dummy_config.dummy = true;
    dummy_config.design.order = IndexOrder::first;
    dummy_config.estimators.order = IndexOrder::first;
    const SampleMatrix dummy_sample = build_sample(dummy_config);
    const auto dummy_y = run_scalar_model(dummy_config, dummy_sample);
    const AnalysisResult with_dummy = analyze_scalar(dummy_config, dummy_y);

    write_index_table_csv(main.table, (dir / "indices.csv").string());
    write_index_table_json(main.table, (dir / "indices.json").string());
    write_index_table_csv(*with_dummy.dummy_table, (dir / "dummy.csv").string());
    write_index_table_json(*with_dummy.dummy_table, (dir / "dummy.json").string());

    const Matrix a_block = a_block_values(sample, config.design.n_base);
    const std::span<const double> y_a(y.data(), static_cast<std::size_t>(config.design.n_base));
    write_svg(plot_uncertainty(y_a), (dir / "uncertainty.svg").string());
    write_svg(plot_scatter(a_block, y_a, sample.params, 30, ScatterMethod::hexbin),
              (dir / "scatter.svg").string());
    write_svg(plot_multiscatter(a_block, y_a, sample.params, 1 << 11),
              (dir / "multiscatter.svg").string());
    write_svg(plot_indices(main.table, &*with_dummy.dummy_table),
              (dir / "indices.svg").string());

    return {main.table, *with_dummy.dummy_table};
}

std::string grouped_tables_csv(const GroupedTables& grouped, bool dummy_tables) {
    std::string out = index_table_csv_header(grouped.group_names);
    const auto& tables = dummy_tables ? grouped.dummy_tables : grouped.tables;
    for (std::size_t g = 0; g < tables.size(); ++g)
        out += index_table_csv_rows(tables[g], grouped.keys[g]);
    return out;
}

std::string grouped_tables_json(const GroupedTables& grouped, bool dummy_tables) {
    nlohmann::json root;
    auto& groups = root["groups"] = nlohmann::json::array();
    const auto& tables = dummy_tables ? grouped.dummy_tables : grouped.tables;
    for (std::size_t g = 0; g < tables.size(); ++g) {
        nlohmann::json entry;
        for (std::size_t n = 0; n < grouped.group_names.size(); ++n)
            entry["key"][grouped.group_names[n]] = grouped.keys[g][n];
        entry["table"] = nlohmann::json::parse(index_table_json(tables[g]));
        groups.push_back(std::move(entry));
    }
    return root.dump(2) + "\n";
}

namespace {

CsvTable long_table_to_csv(const LongTable& table) {
    CsvTable csv;
    csv.header.push_back("row");
    for (const auto& g : table.group_names) csv.header.push_back(g);
    for (const auto& v : table.value_names) csv.header.push_back(v);
    for (std::size_t r = 0; r < table.values.rows(); ++r) {
        std::vector<std::string> cells;
        cells.push_back(std::to_string(table.sample_row[r]));
        for (const auto& key : table.keys[r]) cells.push_back(key);
        for (std::size_t c = 0; c < table.values.cols(); ++c)
            cells.push_back(format_double(table.values(r, c)));
        csv.rows.push_back(std::move(cells));
    }
    return csv;
}

} // namespace

ReproduceExample3 reproduce_example3(const std::string& out_dir) {
    const auto dir = ensure_dir(out_dir);
    AnalysisConfig config = example3_config();

    const SampleMatrix sample = build_sample(config);
    const LongTable long_table = evaluate_budworm_model(config.model, sample.values);
    const CsvTable y_table = long_table_to_csv(long_table);
    write_text_atomic((dir / "trajectories.csv").string(),
                      long_csv(long_table.value_names, long_table.sample_row,
                               [&] {
                                   std::vector<double> times;
                                   for (const auto& key : long_table.keys)
                                       times.push_back(parse_double(key[0], "time key"));
                                   return times;
                               }(),
                               long_table.values));

    const GroupedTables grouped = analyze_grouped(config, y_table);

    // grouped inert-column estimates, point-estimate mode
    AnalysisConfig dummy_config = config;
    dummy_config.dummy = true;
    dummy_config.boot.reset();
    const SampleMatrix dummy_sample = build_sample(dummy_config);
    const LongTable dummy_long = evaluate_budworm_model(
        dummy_config.model, strip_dummy_column(dummy_sample.values, true));
    const GroupedTables dummy_grouped =
        analyze_grouped(dummy_config, long_table_to_csv(dummy_long));

    write_text_atomic((dir / "indices.csv").string(), grouped_tables_csv(grouped));
    write_text_atomic((dir / "indices.json").string(), grouped_tables_json(grouped));
    write_text_atomic((dir / "dummy.csv").string(), grouped_tables_csv(dummy_grouped, true));

    return {grouped};
}

VarsResult reproduce_annex_vars(const std::string& out_dir) {
    const auto dir = ensure_dir(out_dir);
    const auto params = make_param_names("X", 8);
    const StarSample star = vars_matrices(100, 0.1, params, Generator::QRN, 0);
    std::vector<double> y(star.points.rows());
    for (std::size_t r = 0; r < star.points.rows(); ++r) y[r] = sobol_g(star.points.row(r));
    const VarsResult result = vars_to(y, star);

    write_star_csv(star, (dir / "star.csv").string());
    write_text_atomic((dir / "y.csv").string(), y_csv(y));
    write_text_atomic((dir / "vars.csv").string(), vars_result_csv(result));
    write_text_atomic((dir / "vars.json").string(), vars_result_json(result));
    return result;
}

} // namespace sensivar
