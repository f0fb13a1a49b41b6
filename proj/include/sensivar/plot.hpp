#ifndef SENSIVAR_PLOT_HPP
#define SENSIVAR_PLOT_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sensivar/estimators.hpp"
#include "sensivar/matrix.hpp"

namespace sensivar {

// SVG plot emission. Every per-parameter (or per-pair) panel is wrapped in
// a <g class="panel" id="..."> group so output structure is testable.

struct BinnedMean {
    double center = 0.0;
    double mean = 0.0;
    std::size_t count = 0;
};

// Means of y over equal-width bins of x (the overlay dots of the scatter
// plots). Empty bins are skipped.
std::vector<BinnedMean> binned_means(std::span<const double> x, std::span<const double> y,
                                     std::size_t bins);

enum class ScatterMethod { points, hexbin };

// Histogram of the A-block outputs.
std::string plot_uncertainty(std::span<const double> y_a, std::size_t bins = 30);

// One panel per parameter: y against x_i with binned means overlaid.
std::string plot_scatter(const Matrix& a_block, std::span<const double> y_a,
                         const std::vector<std::string>& params, std::size_t bins = 30,
                         ScatterMethod method = ScatterMethod::points);

// One panel per parameter pair: x_i against x_j colored by y. `subsample`
// limits the points drawn (0 = all); the draw is seeded and deterministic.
std::string plot_multiscatter(const Matrix& a_block, std::span<const double> y_a,
                              const std::vector<std::string>& params,
                              std::size_t subsample = 0, std::uint64_t seed = 0);

// Si/Ti per parameter with confidence whiskers, optional dummy-index
// threshold lines, and a second-order panel showing the pairs whose
// confidence interval excludes zero (all pairs when no intervals exist).
std::string plot_indices(const IndexTable& table, const IndexTable* dummy = nullptr);

void write_svg(const std::string& svg, const std::string& path);

} // namespace sensivar

#endif
