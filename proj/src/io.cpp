#include "sensivar/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

#include "sensivar/errors.hpp"

namespace sensivar {

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

double parse_double(const std::string& text, const std::string& context) {
    try {
        std::size_t used = 0;
        const double value = std::stod(text, &used);
        while (used < text.size() && (text[used] == ' ' || text[used] == '\r')) ++used;
        if (used != text.size()) throw std::invalid_argument(text);
        return value;
    } catch (const std::exception&) {
        throw IoError("cannot parse '" + text + "' as a number (" + context + ")");
    }
}

std::size_t CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    throw IoError("missing column '" + name + "'");
}

bool CsvTable::has_column(const std::string& name) const {
    for (const auto& h : header)
        if (h == name) return true;
    return false;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        if (!cell.empty() && cell.back() == '\r') cell.pop_back();
        cells.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

} // namespace

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) throw IoError("'" + path + "' is empty");
    table.header = split_csv_line(line);
    while (std::getline(in, line)) {
        if (line.empty() || (line.size() == 1 && line[0] == '\r')) continue;
        auto cells = split_csv_line(line);
        if (cells.size() != table.header.size())
            throw IoError("'" + path + "' row " + std::to_string(table.rows.size() + 1) +
                          " has " + std::to_string(cells.size()) + " cells, expected " +
                          std::to_string(table.header.size()));
        table.rows.push_back(std::move(cells));
    }
    return table;
}

void write_text_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write '" + tmp + "'");
        out << content;
        if (!out) throw IoError("failed writing '" + tmp + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot rename '" + tmp + "' to '" + path + "': " + ec.message());
}

std::string matrix_csv(const SampleMatrix& matrix) {
    std::string out = "block";
    for (const auto& p : matrix.params) out += "," + p;
    out += "\n";
    for (std::size_t r = 0; r < matrix.values.rows(); ++r) {
        out += to_string(matrix.tags[r]);
        for (std::size_t c = 0; c < matrix.values.cols(); ++c)
            out += "," + format_double(matrix.values(r, c));
        out += "\n";
    }
    return out;
}

void write_matrix_csv(const SampleMatrix& matrix, const std::string& path) {
    write_text_atomic(path, matrix_csv(matrix));
}

SampleMatrix read_matrix_csv(const std::string& path) {
    const CsvTable table = read_csv(path);
    if (table.header.empty() || table.header[0] != "block")
        throw IoError("'" + path + "' is not a sample-matrix file (no leading block column)");

    SampleMatrix out;
    out.params.assign(table.header.begin() + 1, table.header.end());
    out.values = Matrix(table.rows.size(), out.params.size());

    std::map<std::string, std::int64_t> block_counts;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const std::string& tag_text = table.rows[r][0];
        out.tags.push_back(parse_block_tag(tag_text, block_counts[tag_text]++));
        for (std::size_t c = 0; c < out.params.size(); ++c)
            out.values(r, c) = parse_double(table.rows[r][c + 1],
                                            path + " row " + std::to_string(r + 1));
    }
    return out;
}

std::string star_csv(const StarSample& star) {
    std::string out = "star_id,dim,grid_index";
    for (const auto& p : star.params) out += "," + p;
    out += "\n";

    // one descriptor per evaluation row, in emission order
    const auto rows = static_cast<std::size_t>(star.total_runs());
    std::vector<std::string> descriptor(rows);
    for (std::int64_t v = 0; v < star.n_star(); ++v) {
        descriptor[static_cast<std::size_t>(star.center_rows[static_cast<std::size_t>(v)])] =
            std::to_string(v + 1) + ",0,0";
        for (std::int64_t dim = 0; dim < star.k(); ++dim) {
            const auto& slots = star.slots(v, dim);
            for (std::size_t g = 0; g < slots.size(); ++g) {
                const auto row = static_cast<std::size_t>(slots[g]);
                if (slots[g] == star.center_rows[static_cast<std::size_t>(v)]) continue;
                descriptor[row] = std::to_string(v + 1) + "," + std::to_string(dim + 1) + "," +
                                  std::to_string(g);
            }
        }
    }
    for (std::size_t r = 0; r < rows; ++r) {
        out += descriptor[r];
        for (std::size_t c = 0; c < star.points.cols(); ++c)
            out += "," + format_double(star.points(r, c));
        out += "\n";
    }
    return out;
}

void write_star_csv(const StarSample& star, const std::string& path) {
    write_text_atomic(path, star_csv(star));
}

bool is_star_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) return false;
    std::string line;
    if (!std::getline(in, line)) return false;
    return line.rfind("star_id,dim,grid_index", 0) == 0;
}

Matrix read_star_points_csv(const std::string& path, std::vector<std::string>* params) {
    const CsvTable table = read_csv(path);
    if (table.header.size() < 4 || table.header[0] != "star_id" ||
        table.header[1] != "dim" || table.header[2] != "grid_index")
        throw IoError("'" + path + "' is not a star-sample file");
    if (params) params->assign(table.header.begin() + 3, table.header.end());
    Matrix points(table.rows.size(), table.header.size() - 3);
    for (std::size_t r = 0; r < table.rows.size(); ++r)
        for (std::size_t c = 0; c + 3 < table.header.size(); ++c)
            points(r, c) = parse_double(table.rows[r][c + 3],
                                        path + " row " + std::to_string(r + 1));
    return points;
}

namespace {

std::string optional_cell(const std::optional<double>& value) {
    return value ? format_double(*value) : std::string();
}

} // namespace

std::string index_table_csv_header(const std::vector<std::string>& group_names) {
    std::string out;
    for (const auto& g : group_names) out += g + ",";
    out += "original,bias,std.error,low.ci,high.ci,sensitivity,parameters\n";
    return out;
}

std::string index_table_csv_rows(const IndexTable& table,
                                 const std::vector<std::string>& group_values) {
    std::string prefix;
    for (const auto& g : group_values) prefix += g + ",";
    std::string out;
    for (const auto& row : table.rows) {
        out += prefix + format_double(row.original) + "," + optional_cell(row.bias) + "," +
               optional_cell(row.std_error) + "," + optional_cell(row.low_ci) + "," +
               optional_cell(row.high_ci) + "," + to_string(row.sensitivity) + "," +
               row.parameters + "\n";
    }
    return out;
}

std::string index_table_csv(const IndexTable& table,
                            const std::vector<std::string>& group_names,
                            const std::vector<std::string>& group_values) {
    return index_table_csv_header(group_names) + index_table_csv_rows(table, group_values);
}

void write_index_table_csv(const IndexTable& table, const std::string& path) {
    write_text_atomic(path, index_table_csv(table));
}

IndexTable read_index_table_csv(const std::string& path) {
    const CsvTable csv = read_csv(path);
    IndexTable table;
    const std::size_t original = csv.column("original");
    const std::size_t sensitivity = csv.column("sensitivity");
    const std::size_t parameters = csv.column("parameters");
    auto optional_at = [&](const std::vector<std::string>& row,
                           const std::string& name) -> std::optional<double> {
        if (!csv.has_column(name)) return {};
        const std::string& cell = row[csv.column(name)];
        if (cell.empty()) return {};
        return parse_double(cell, path + " column " + name);
    };
    for (const auto& row : csv.rows) {
        IndexRow out;
        out.original = parse_double(row[original], path + " column original");
        out.bias = optional_at(row, "bias");
        out.std_error = optional_at(row, "std.error");
        out.low_ci = optional_at(row, "low.ci");
        out.high_ci = optional_at(row, "high.ci");
        const std::string& kind = row[sensitivity];
        if (kind == "Si") out.sensitivity = Sensitivity::Si;
        else if (kind == "Ti") out.sensitivity = Sensitivity::Ti;
        else if (kind == "Sij") out.sensitivity = Sensitivity::Sij;
        else if (kind == "Sijk") out.sensitivity = Sensitivity::Sijk;
        else throw IoError("unknown sensitivity kind '" + kind + "' in " + path);
        out.parameters = row[parameters];
        if (out.sensitivity == Sensitivity::Si) table.sum_first_order += out.original;
        table.rows.push_back(std::move(out));
    }
    return table;
}

namespace {

nlohmann::json index_table_to_json(const IndexTable& table) {
    nlohmann::json j;
    j["first_estimator"] = table.first_estimator;
    j["total_estimator"] = table.total_estimator;
    j["total_runs"] = table.total_runs;
    j["sum_first_order"] = table.sum_first_order;
    auto& rows = j["rows"] = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json r;
        r["original"] = row.original;
        if (row.bias) r["bias"] = *row.bias;
        if (row.std_error) r["std.error"] = *row.std_error;
        if (row.low_ci) r["low.ci"] = *row.low_ci;
        if (row.high_ci) r["high.ci"] = *row.high_ci;
        r["sensitivity"] = to_string(row.sensitivity);
        r["parameters"] = row.parameters;
        rows.push_back(std::move(r));
    }
    return j;
}

} // namespace

std::string index_table_json(const IndexTable& table) {
    return index_table_to_json(table).dump(2) + "\n";
}

void write_index_table_json(const IndexTable& table, const std::string& path) {
    write_text_atomic(path, index_table_json(table));
}

std::string vars_result_csv(const VarsResult& result) {
    std::string out = index_table_csv_header();
    for (std::size_t i = 0; i < result.ti.size(); ++i)
        out += format_double(result.ti[i]) + ",,,,,Ti," + result.params[i] + "\n";
    return out;
}

std::string vars_result_json(const VarsResult& result) {
    nlohmann::json j;
    j["n_star"] = result.n_star;
    j["h"] = result.h;
    j["total_runs"] = result.total_runs;
    auto& rows = j["rows"] = nlohmann::json::array();
    for (std::size_t i = 0; i < result.ti.size(); ++i) {
        nlohmann::json r;
        r["original"] = result.ti[i];
        r["sensitivity"] = "Ti";
        r["parameters"] = result.params[i];
        rows.push_back(std::move(r));
    }
    return j.dump(2) + "\n";
}

std::string y_csv(std::span<const double> y) {
    std::string out = "y\n";
    for (double v : y) out += format_double(v) + "\n";
    return out;
}

std::vector<double> read_y_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::vector<double> y;
    std::string line;
    bool first = true;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        ++row;
        if (first) {
            first = false;
            if (line == "y" || line == "value") continue; // optional header
        }
        y.push_back(parse_double(line, path + " line " + std::to_string(row)));
    }
    return y;
}

std::string long_csv(const std::vector<std::string>& state_names,
                     const std::vector<std::int64_t>& rows,
                     const std::vector<double>& times, const Matrix& states) {
    if (rows.size() != times.size() || rows.size() != states.rows())
        throw IoError("long-format table pieces have mismatched lengths");
    std::string out = "row,time";
    for (const auto& s : state_names) out += "," + s;
    out += "\n";
    for (std::size_t r = 0; r < rows.size(); ++r) {
        out += std::to_string(rows[r]) + "," + format_double(times[r]);
        for (std::size_t c = 0; c < states.cols(); ++c)
            out += "," + format_double(states(r, c));
        out += "\n";
    }
    return out;
}

} // namespace sensivar
