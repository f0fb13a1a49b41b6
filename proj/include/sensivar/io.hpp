#ifndef SENSIVAR_IO_HPP
#define SENSIVAR_IO_HPP

#include <string>
#include <vector>

#include "sensivar/estimators.hpp"
#include "sensivar/sampling.hpp"
#include "sensivar/vars.hpp"

namespace sensivar {

// File formats. All writers are atomic (temp file + rename) and print
// floating-point values with 17 significant digits so doubles round-trip.

std::string format_double(double value);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(const std::string& name) const; // throws IoError when absent
    bool has_column(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);
void write_text_atomic(const std::string& path, const std::string& content);

// Sample matrix: leading `block` column with the tag string, then one
// column per parameter.
std::string matrix_csv(const SampleMatrix& matrix);
void write_matrix_csv(const SampleMatrix& matrix, const std::string& path);
SampleMatrix read_matrix_csv(const std::string& path);

// Star sample: star_id, dim, grid_index, then coordinates. The center row
// of star v carries dim=0, grid_index=0; cross-section rows carry their
// 1-based dimension and 0-based position in the full ascending grid.
std::string star_csv(const StarSample& star);
void write_star_csv(const StarSample& star, const std::string& path);

// Reads the evaluation points of a star-sample CSV (coordinates only).
Matrix read_star_points_csv(const std::string& path,
                            std::vector<std::string>* params = nullptr);
bool is_star_csv(const std::string& path);

// Index tables: original,bias,std.error,low.ci,high.ci,sensitivity,parameters
// with empty statistics cells for point estimates. Group columns, when
// given, are prepended (grouped multivariate analyses).
std::string index_table_csv(const IndexTable& table,
                            const std::vector<std::string>& group_names = {},
                            const std::vector<std::string>& group_values = {});
std::string index_table_csv_header(const std::vector<std::string>& group_names = {});
std::string index_table_csv_rows(const IndexTable& table,
                                 const std::vector<std::string>& group_values = {});
void write_index_table_csv(const IndexTable& table, const std::string& path);

std::string index_table_json(const IndexTable& table);
void write_index_table_json(const IndexTable& table, const std::string& path);
IndexTable read_index_table_csv(const std::string& path);

// VARS results in an index-table compatible layout (sensitivity = Ti).
std::string vars_result_csv(const VarsResult& result);
std::string vars_result_json(const VarsResult& result);

// Scalar output vector with a `y` header.
std::string y_csv(std::span<const double> y);
std::vector<double> read_y_csv(const std::string& path);

// Long-format multivariate output: row, time, then one column per state.
std::string long_csv(const std::vector<std::string>& state_names,
                     const std::vector<std::int64_t>& rows,
                     const std::vector<double>& times, const Matrix& states);

double parse_double(const std::string& text, const std::string& context);

} // namespace sensivar

#endif
