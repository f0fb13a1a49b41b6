#ifndef SENSIVAR_ANALYSIS_HPP
#define SENSIVAR_ANALYSIS_HPP

#include <optional>
#include <string>
#include <vector>

#include "sensivar/bootstrap.hpp"
#include "sensivar/distributions.hpp"
#include "sensivar/estimators.hpp"
#include "sensivar/io.hpp"
#include "sensivar/ode.hpp"
#include "sensivar/sampling.hpp"
#include "sensivar/vars.hpp"

namespace sensivar {

// End-to-end pipeline: configuration, model execution, grouped analysis and
// the one-shot reproduction runs the CLI exposes.

struct ModelSpec {
    enum class Kind { builtin, external };

    Kind kind = Kind::builtin;
    std::string name = "sobol_g"; // builtin id
    std::string command;          // external shell command
    std::uint64_t seed = 0;       // metafunction structure seed
    bool rescale = false;         // ishigami unit-cube inputs
    std::int64_t steps = 20;      // logistic map iterations

    // budworm integration grid
    double ode_from = 0.0;
    double ode_to = 150.0;
    double ode_step = kBudwormStep;
    std::vector<double> time_output = {25, 50, 75, 100, 125, 150};
};

struct AnalysisConfig {
    SampleDesign design;
    std::vector<MarginalSpec> marginals; // empty = unit hypercube
    EstimatorConfig estimators;
    std::optional<BootConfig> boot;
    bool dummy = false;
    ModelSpec model;
    std::vector<std::string> group_by;

    // star design settings (vars-sample / vars-analyze)
    std::int64_t n_star = 100;
    double h = 0.1;

    void validate() const;
    SampleDesign extended_design() const; // design plus the inert column
};

AnalysisConfig parse_analysis_config(const std::string& json_text);
AnalysisConfig load_analysis_config(const std::string& path);

// Builtin models. Scalar models evaluate row-wise over the (transformed)
// sample; the budworm model produces a long-format multivariate table.
bool is_builtin_model(const std::string& name);
bool builtin_is_multivariate(const std::string& name);
std::vector<std::string> builtin_model_names();
std::vector<double> evaluate_builtin(const ModelSpec& model, const Matrix& inputs);

struct LongTable {
    std::vector<std::string> group_names;          // {"time", ...}
    std::vector<std::vector<std::string>> keys;    // one per data row
    std::vector<std::string> value_names;          // state/variable columns
    std::vector<std::int64_t> sample_row;          // 1-based design row
    Matrix values;                                 // one column per value name
};

LongTable evaluate_budworm_model(const ModelSpec& model, const Matrix& inputs);

// External model execution: writes headerless CSV rows to the command's
// standard input and reads one numeric line (or a named-column CSV) per row
// from its standard output.
CsvTable run_external_model(const std::string& command, const Matrix& inputs);

// Sample generation honoring marginals (and the inert column when
// config.dummy). The dummy column stays on the unit interval.
SampleMatrix build_sample(const AnalysisConfig& config);

// Model execution over a sample matrix; strips the inert column before the
// model sees the rows.
std::vector<double> run_scalar_model(const AnalysisConfig& config, const SampleMatrix& sample);

struct GroupedTables {
    std::vector<std::string> group_names;
    std::vector<std::vector<std::string>> keys;  // per group
    std::vector<IndexTable> tables;
    std::vector<IndexTable> dummy_tables;        // aligned with tables when dummy

    const IndexTable& find(const std::vector<std::string>& key) const;
};

// Ungrouped scalar analysis. Y must align with the (possibly extended)
// design; returns the main table plus the inert-column table when
// config.dummy is set.
struct AnalysisResult {
    IndexTable table;
    std::optional<IndexTable> dummy_table;
};

AnalysisResult analyze_scalar(const AnalysisConfig& config, std::span<const double> y);

// Grouped analysis over a long-format value table (group columns plus one
// or more value columns; "variable" group melts the value columns).
GroupedTables analyze_grouped(const AnalysisConfig& config, const CsvTable& y_table);

// The printed header block accompanying every index table.
std::string summary_text(const IndexTable& table);
std::string vars_summary_text(const VarsResult& result);

// Grouped results as one CSV (group columns prepended) or one JSON document
// with a per-group entry.
std::string grouped_tables_csv(const GroupedTables& grouped, bool dummy_tables = false);
std::string grouped_tables_json(const GroupedTables& grouped, bool dummy_tables = false);

// One-shot reproduction runs. Artifacts (CSV/JSON/SVG) land in out_dir;
// the returned structures feed the acceptance checks.
struct ReproduceExample1 {
    IndexTable indices;
    IndexTable dummy;
};
struct ReproduceExample2 {
    IndexTable indices;
    IndexTable dummy;
};
struct ReproduceExample3 {
    GroupedTables groups;
};

AnalysisConfig example1_config();
AnalysisConfig example2_config();
AnalysisConfig example3_config();

ReproduceExample1 reproduce_example1(const std::string& out_dir);
ReproduceExample2 reproduce_example2(const std::string& out_dir);
ReproduceExample3 reproduce_example3(const std::string& out_dir);
VarsResult reproduce_annex_vars(const std::string& out_dir);

} // namespace sensivar

#endif
