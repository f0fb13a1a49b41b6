#include "sensivar/vars.hpp"

#include <cmath>

#include "sensivar/errors.hpp"

namespace sensivar {

double section_variogram(std::span<const double> section, std::int64_t lag_steps) {
    const auto m = static_cast<std::int64_t>(section.size());
    if (lag_steps < 1 || lag_steps >= m)
        throw ConfigError("variogram lag must leave at least one pair in the section");
    double sum = 0.0;
    for (std::int64_t j = 0; j + lag_steps < m; ++j) {
        const double d = section[static_cast<std::size_t>(j + lag_steps)] -
                         section[static_cast<std::size_t>(j)];
        sum += d * d;
    }
    return 0.5 * sum / static_cast<double>(m - lag_steps);
}

double section_covariogram(std::span<const double> section, std::int64_t lag_steps) {
    const auto m = static_cast<std::int64_t>(section.size());
    if (lag_steps < 1 || lag_steps >= m)
        throw ConfigError("covariogram lag must leave at least one pair in the section");
    const auto pairs = static_cast<std::size_t>(m - lag_steps);
    if (pairs < 2)
        throw ConfigError("covariogram needs at least two pairs at the requested lag");
    double mean_lo = 0.0, mean_hi = 0.0;
    for (std::size_t j = 0; j < pairs; ++j) {
        mean_lo += section[j];
        mean_hi += section[j + static_cast<std::size_t>(lag_steps)];
    }
    mean_lo /= static_cast<double>(pairs);
    mean_hi /= static_cast<double>(pairs);
    double cov = 0.0;
    for (std::size_t j = 0; j < pairs; ++j)
        cov += (section[j] - mean_lo) *
               (section[j + static_cast<std::size_t>(lag_steps)] - mean_hi);
    return cov / (static_cast<double>(pairs) - 1.0);
}

namespace {

void check_alignment(std::span<const double> y, const StarSample& star) {
    if (static_cast<std::int64_t>(y.size()) != star.total_runs())
        throw AlignmentError("star-sample output has " + std::to_string(y.size()) +
                             " rows; the design requires " +
                             std::to_string(star.total_runs()));
}

std::vector<double> section_outputs(std::span<const double> y, const StarSample& star,
                                    std::int64_t v, std::int64_t dim) {
    const auto& slots = star.slots(v, dim);
    std::vector<double> section(slots.size());
    for (std::size_t g = 0; g < slots.size(); ++g)
        section[g] = y[static_cast<std::size_t>(slots[g])];
    return section;
}

double star_average(std::span<const double> y, const StarSample& star, std::int64_t dim,
                    std::int64_t lag_steps, bool variogram_kind) {
    check_alignment(y, star);
    if (dim < 0 || dim >= star.k())
        throw ConfigError("dimension index out of range");
    double acc = 0.0;
    for (std::int64_t v = 0; v < star.n_star(); ++v) {
        const auto section = section_outputs(y, star, v, dim);
        acc += variogram_kind ? section_variogram(section, lag_steps)
                              : section_covariogram(section, lag_steps);
    }
    return acc / static_cast<double>(star.n_star());
}

} // namespace

double variogram(std::span<const double> y, const StarSample& star, std::int64_t dim,
                 std::int64_t lag_steps) {
    return star_average(y, star, dim, lag_steps, true);
}

double covariogram(std::span<const double> y, const StarSample& star, std::int64_t dim,
                   std::int64_t lag_steps) {
    return star_average(y, star, dim, lag_steps, false);
}

VarsResult vars_to(std::span<const double> y, const StarSample& star) {
    check_alignment(y, star);

    // V(y) is estimated over the star-center outputs: the centers are the
    // plain low-discrepancy sample of the input space, whereas cross-section
    // points cluster around their centers and would overweight section-local
    // variation. Degenerate single-center designs fall back to the full pool.
    std::vector<double> pool;
    if (star.n_star() >= 2) {
        for (std::int64_t row : star.center_rows)
            pool.push_back(y[static_cast<std::size_t>(row)]);
    } else {
        pool.assign(y.begin(), y.end());
    }
    double mean = 0.0;
    for (double v : pool) mean += v;
    mean /= static_cast<double>(pool.size());
    double ss = 0.0;
    for (double v : pool) ss += (v - mean) * (v - mean);
    const double vy = ss / (static_cast<double>(pool.size()) - 1.0);
    if (vy == 0.0)
        throw ConstantOutputError("star-sample output is constant; VARS-TO is undefined");

    VarsResult result;
    result.params = star.params;
    result.n_star = star.n_star();
    result.h = star.h;
    result.total_runs = star.total_runs();
    for (std::int64_t dim = 0; dim < star.k(); ++dim) {
        const double gamma = variogram(y, star, dim, 1);
        const double cov = covariogram(y, star, dim, 1);
        result.ti.push_back((gamma + cov) / vy);
    }
    return result;
}

} // namespace sensivar
