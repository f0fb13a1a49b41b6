#include "sensivar/testfunctions.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <numbers>
#include <sstream>

#include "json.hpp"

#include "sensivar/errors.hpp"
#include "sensivar/distributions.hpp"
#include "sensivar/rng.hpp"

namespace sensivar {

double ishigami(std::span<const double> x, bool rescale_unit_cube) {
    if (x.size() != 3)
        throw ConfigError("ishigami expects 3 inputs, got " + std::to_string(x.size()));
    constexpr double a = 2.0, b = 1.0;
    double x1 = x[0], x2 = x[1], x3 = x[2];
    if (rescale_unit_cube) {
        constexpr double pi = std::numbers::pi;
        x1 = -pi + 2.0 * pi * x1;
        x2 = -pi + 2.0 * pi * x2;
        x3 = -pi + 2.0 * pi * x3;
    }
    const double s1 = std::sin(x1);
    return s1 + a * std::sin(x2) * std::sin(x2) + b * x3 * x3 * x3 * x3 * s1;
}

double sobol_g(std::span<const double> x) {
    if (x.size() != kSobolGCoefficients.size())
        throw ConfigError("sobol_g expects 8 inputs, got " + std::to_string(x.size()));
    double prod = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        prod *= (std::fabs(4.0 * x[i] - 2.0) + kSobolGCoefficients[i]) /
                (1.0 + kSobolGCoefficients[i]);
    return prod;
}

double bratley1992(std::span<const double> x) {
    double sum = 0.0, prod = 1.0, sign = -1.0;
    for (double xi : x) {
        prod *= xi;
        sum += sign * prod;
        sign = -sign;
    }
    return sum;
}

double bratley1988(std::span<const double> x) {
    double prod = 1.0;
    for (double xi : x) prod *= std::fabs(4.0 * xi - 2.0);
    return prod;
}

double becker_poly(std::span<const double> x) {
    if (x.size() != 3)
        throw ConfigError("becker_poly expects 3 inputs, got " + std::to_string(x.size()));
    return 3.0 * x[0] * x[0] + 2.0 * x[0] * x[1] - 2.0 * x[2];
}

namespace {

std::string default_data_dir() {
    if (const char* env = std::getenv("SENSIVAR_DATA_DIR"); env && *env) return env;
    return SENSIVAR_DATA_DIR;
}

OakleyCoefficients load_oakley(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open Oakley coefficient file: " + path);
    OakleyCoefficients coef;
    coef.m = Matrix(15, 15);
    std::size_t m_row = 0;
    bool seen[3] = {false, false, false};
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::string label, cell;
        std::getline(ss, label, ',');
        std::vector<double> values;
        while (std::getline(ss, cell, ',')) values.push_back(std::stod(cell));
        if (values.size() != 15)
            throw ConfigError("Oakley coefficient row '" + label + "' needs 15 values");
        if (label == "a1" || label == "a2" || label == "a3") {
            auto& dst = label == "a1" ? coef.a1 : (label == "a2" ? coef.a2 : coef.a3);
            std::copy(values.begin(), values.end(), dst.begin());
            seen[label[1] - '1'] = true;
        } else if (label == "M") {
            if (m_row >= 15) throw ConfigError("Oakley coefficient file has too many M rows");
            for (std::size_t c = 0; c < 15; ++c) coef.m(m_row, c) = values[c];
            ++m_row;
        } else {
            throw ConfigError("unknown Oakley coefficient label '" + label + "'");
        }
    }
    if (!seen[0] || !seen[1] || !seen[2] || m_row != 15)
        throw ConfigError("Oakley coefficient file is incomplete: " + path);
    return coef;
}

} // namespace

const OakleyCoefficients& oakley_coefficients(const std::string& path) {
    static std::mutex mutex;
    static std::string cached_path;
    static OakleyCoefficients cached;
    static bool loaded = false;

    const std::string resolved =
        path.empty() ? default_data_dir() + "/oakley_coefficients.csv" : path;
    std::lock_guard<std::mutex> lock(mutex);
    if (!loaded || cached_path != resolved) {
        cached = load_oakley(resolved);
        cached_path = resolved;
        loaded = true;
    }
    return cached;
}

double oakley(std::span<const double> x, const OakleyCoefficients& coef) {
    if (x.size() != 15)
        throw ConfigError("oakley expects 15 inputs, got " + std::to_string(x.size()));
    double linear = 0.0, sines = 0.0, cosines = 0.0, quad = 0.0;
    for (std::size_t i = 0; i < 15; ++i) {
        linear += coef.a1[i] * x[i];
        sines += coef.a2[i] * std::sin(x[i]);
        cosines += coef.a3[i] * std::cos(x[i]);
        double mx = 0.0;
        for (std::size_t j = 0; j < 15; ++j) mx += coef.m(i, j) * x[j];
        quad += x[i] * mx;
    }
    return linear + sines + cosines + quad;
}

double oakley(std::span<const double> x) { return oakley(x, oakley_coefficients()); }

std::string to_string(UnivariateFn fn) {
    switch (fn) {
        case UnivariateFn::cubic: return "cubic";
        case UnivariateFn::discontinuous: return "discontinuous";
        case UnivariateFn::exponential: return "exponential";
        case UnivariateFn::inverse: return "inverse";
        case UnivariateFn::linear: return "linear";
        case UnivariateFn::no_effect: return "no_effect";
        case UnivariateFn::non_monotonic: return "non_monotonic";
        case UnivariateFn::periodic: return "periodic";
        case UnivariateFn::quadratic: return "quadratic";
        case UnivariateFn::trigonometric: return "trigonometric";
    }
    return "?";
}

UnivariateFn parse_univariate_fn(const std::string& name) {
    for (int i = 0; i < 10; ++i) {
        auto fn = static_cast<UnivariateFn>(i);
        if (to_string(fn) == name) return fn;
    }
    throw ConfigError("unknown univariate function '" + name + "'");
}

// Family normalized to the unit interval; scalings are frozen constants.
double evaluate_univariate(UnivariateFn fn, double x) {
    switch (fn) {
        case UnivariateFn::cubic: return x * x * x;
        case UnivariateFn::discontinuous: return x > 0.5 ? 1.0 : 0.0;
        case UnivariateFn::exponential: return (std::exp(x) - 1.0) / (std::numbers::e - 1.0);
        case UnivariateFn::inverse: return (1.0 / (x + 0.1)) / (10.0 - 1.0 / 1.1);
        case UnivariateFn::linear: return x;
        case UnivariateFn::no_effect: return 0.0;
        case UnivariateFn::non_monotonic: return 4.0 * (x - 0.5) * (x - 0.5);
        case UnivariateFn::periodic: return 0.5 * std::sin(2.0 * std::numbers::pi * x);
        case UnivariateFn::quadratic: return x * x;
        case UnivariateFn::trigonometric: return std::cos(x);
    }
    return 0.0;
}

void MetafunctionSpec::validate() const {
    if (k < 3) throw ConfigError("metafunction requires k >= 3");
    if (static_cast<std::int64_t>(assignments.size()) != k)
        throw ConfigError("metafunction needs one univariate assignment per input");
    if (alpha.size() != assignments.size() || beta.size() != pairs.size() ||
        gamma.size() != triples.size())
        throw ConfigError("metafunction coefficient counts do not match the structure");
    auto in_range = [&](std::int32_t idx) { return idx >= 1 && idx <= k; };
    for (const auto& p : pairs)
        if (!in_range(p[0]) || !in_range(p[1]) || p[0] == p[1])
            throw ConfigError("metafunction pair indices must be distinct and within 1..k");
    for (const auto& t : triples)
        if (!in_range(t[0]) || !in_range(t[1]) || !in_range(t[2]) ||
            t[0] == t[1] || t[0] == t[2] || t[1] == t[2])
            throw ConfigError("metafunction triple indices must be distinct and within 1..k");
}

std::string MetafunctionSpec::to_json() const {
    nlohmann::json j;
    j["k"] = k;
    auto& names = j["assignments"] = nlohmann::json::array();
    for (auto fn : assignments) names.push_back(to_string(fn));
    j["pairs"] = pairs;
    j["triples"] = triples;
    j["alpha"] = alpha;
    j["beta"] = beta;
    j["gamma"] = gamma;
    return j.dump(2);
}

MetafunctionSpec MetafunctionSpec::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    MetafunctionSpec spec;
    spec.k = j.at("k").get<std::int64_t>();
    for (const auto& name : j.at("assignments"))
        spec.assignments.push_back(parse_univariate_fn(name.get<std::string>()));
    spec.pairs = j.at("pairs").get<std::vector<std::array<std::int32_t, 2>>>();
    spec.triples = j.at("triples").get<std::vector<std::array<std::int32_t, 3>>>();
    spec.alpha = j.at("alpha").get<std::vector<double>>();
    spec.beta = j.at("beta").get<std::vector<double>>();
    spec.gamma = j.at("gamma").get<std::vector<double>>();
    spec.validate();
    return spec;
}

namespace {

// Picks `count` distinct combinations by partial Fisher-Yates over the
// enumerated combination list.
template <typename Combo>
std::vector<Combo> sample_combinations(std::vector<Combo> all, std::size_t count, Rng& rng) {
    for (std::size_t i = 0; i < count && i < all.size(); ++i) {
        std::size_t j = i + static_cast<std::size_t>(rng.next_below(all.size() - i));
        std::swap(all[i], all[j]);
    }
    all.resize(count);
    return all;
}

} // namespace

MetafunctionSpec draw_metafunction_spec(std::int64_t k, std::uint64_t seed) {
    if (k < 3) throw ConfigError("metafunction requires k >= 3");
    MetafunctionSpec spec;
    spec.k = k;

    Rng assign_rng(derive_seed(seed, 1));
    for (std::int64_t i = 0; i < k; ++i)
        spec.assignments.push_back(static_cast<UnivariateFn>(assign_rng.next_below(10)));

    const auto k2 = static_cast<std::size_t>(k / 2);
    const auto k3 = static_cast<std::size_t>(k / 5);

    std::vector<std::array<std::int32_t, 2>> all_pairs;
    for (std::int32_t i = 1; i <= k; ++i)
        for (std::int32_t j = i + 1; j <= k; ++j) all_pairs.push_back({i, j});
    Rng pair_rng(derive_seed(seed, 2));
    spec.pairs = sample_combinations(std::move(all_pairs), k2, pair_rng);

    std::vector<std::array<std::int32_t, 3>> all_triples;
    if (k3 > 0)
        for (std::int32_t i = 1; i <= k; ++i)
            for (std::int32_t j = i + 1; j <= k; ++j)
                for (std::int32_t l = j + 1; l <= k; ++l) all_triples.push_back({i, j, l});
    Rng triple_rng(derive_seed(seed, 3));
    spec.triples = sample_combinations(std::move(all_triples), k3, triple_rng);

    Rng coef_rng(derive_seed(seed, 4));
    auto normal = [&] { return quantile_normal(coef_rng.next_double_open()); };
    for (std::int64_t i = 0; i < k; ++i) spec.alpha.push_back(normal());
    for (std::size_t i = 0; i < spec.pairs.size(); ++i) spec.beta.push_back(normal());
    for (std::size_t i = 0; i < spec.triples.size(); ++i) spec.gamma.push_back(normal());

    spec.validate();
    return spec;
}

double evaluate_metafunction(const MetafunctionSpec& spec, std::span<const double> x) {
    if (static_cast<std::int64_t>(x.size()) != spec.k)
        throw ConfigError("metafunction expects " + std::to_string(spec.k) + " inputs");
    auto f = [&](std::int32_t input) {
        return evaluate_univariate(spec.assignments[static_cast<std::size_t>(input - 1)],
                                   x[static_cast<std::size_t>(input - 1)]);
    };
    double y = 0.0;
    for (std::int32_t i = 1; i <= spec.k; ++i)
        y += spec.alpha[static_cast<std::size_t>(i - 1)] * f(i);
    for (std::size_t p = 0; p < spec.pairs.size(); ++p)
        y += spec.beta[p] * f(spec.pairs[p][0]) * f(spec.pairs[p][1]);
    for (std::size_t t = 0; t < spec.triples.size(); ++t)
        y += spec.gamma[t] * f(spec.triples[t][0]) * f(spec.triples[t][1]) * f(spec.triples[t][2]);
    return y;
}

std::vector<double> metafunction(const Matrix& x, std::uint64_t seed) {
    const MetafunctionSpec spec = draw_metafunction_spec(static_cast<std::int64_t>(x.cols()), seed);
    std::vector<double> y(x.rows());
    for (std::size_t r = 0; r < x.rows(); ++r) y[r] = evaluate_metafunction(spec, x.row(r));
    return y;
}

AnalyticIndices analytic_indices(const std::string& function_id) {
    AnalyticIndices out;
    if (function_id == "sobol_g") {
        const std::size_t k = kSobolGCoefficients.size();
        std::vector<double> vi(k);
        double vtotal = 1.0;
        for (std::size_t i = 0; i < k; ++i) {
            const double ai = kSobolGCoefficients[i];
            vi[i] = (1.0 / 3.0) / ((1.0 + ai) * (1.0 + ai));
            vtotal *= 1.0 + vi[i];
        }
        vtotal -= 1.0;
        for (std::size_t i = 0; i < k; ++i) {
            out.si.push_back(vi[i] / vtotal);
            double rest = 1.0;
            for (std::size_t j = 0; j < k; ++j)
                if (j != i) rest *= 1.0 + vi[j];
            out.ti.push_back(vi[i] * rest / vtotal);
        }
        return out;
    }
    if (function_id == "ishigami") {
        constexpr double a = 2.0, b = 1.0;
        const double pi4 = std::pow(std::numbers::pi, 4);
        const double pi8 = pi4 * pi4;
        const double v1 = 0.5 * (1.0 + b * pi4 / 5.0) * (1.0 + b * pi4 / 5.0);
        const double v2 = a * a / 8.0;
        const double v13 = 8.0 * b * b * pi8 / 225.0;
        const double v = v1 + v2 + v13;
        out.si = {v1 / v, v2 / v, 0.0};
        out.ti = {(v1 + v13) / v, v2 / v, v13 / v};
        return out;
    }
    throw ConfigError("no analytic indices available for '" + function_id + "'");
}

} // namespace sensivar
