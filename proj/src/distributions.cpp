#include "sensivar/distributions.hpp"

#include <cmath>

#include "sensivar/errors.hpp"

namespace sensivar {

double quantile_uniform(double p, double a, double b) {
    if (!(a < b)) throw ConfigError("uniform bounds require a < b");
    return a + p * (b - a);
}

namespace {

// AS241 (Wichura 1988), the double-precision PPND16 branch set.
double standard_normal_quantile(double p) {
    const double q = p - 0.5;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        const double num =
            (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                  6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
                1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
              1.3314166789178437745e+2) * r + 3.3871328727963666080e+0);
        const double den =
            (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                  3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
                5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
              4.2313330701600911252e+1) * r + 1.0);
        return q * num / den;
    }
    double r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double value;
    if (r <= 5.0) {
        r -= 1.6;
        const double num =
            (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
                3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
              4.63033784615654529590e+0) * r + 1.42343711074968357734e+0);
        const double den =
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
              2.05319162663775882187e+0) * r + 1.0);
        value = num / den;
    } else {
        r -= 5.0;
        const double num =
            (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
              5.46378491116411436990e+0) * r + 6.65790464350110377720e+0);
        const double den =
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
        value = num / den;
    }
    return q < 0.0 ? -value : value;
}

} // namespace

double quantile_normal(double p, double mean, double sd) {
    if (!(sd > 0.0)) throw ConfigError("normal sd must be positive");
    if (!(p > 0.0) || !(p < 1.0))
        throw ConfigError("normal quantile is infinite at p=" + std::to_string(p));
    return mean + sd * standard_normal_quantile(p);
}

std::int64_t quantile_discrete_uniform(double p, std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw ConfigError("discrete uniform requires lo <= hi");
    const double span = static_cast<double>(hi - lo + 1);
    auto value = static_cast<std::int64_t>(std::floor(static_cast<double>(lo) + p * span));
    return value > hi ? hi : (value < lo ? lo : value);
}

MarginalSpec MarginalSpec::uniform(std::string name, double a, double b) {
    if (!(a < b)) throw ConfigError("uniform marginal '" + name + "' requires a < b");
    MarginalSpec spec;
    spec.name = std::move(name);
    spec.kind = Kind::uniform;
    spec.a = a;
    spec.b = b;
    return spec;
}

MarginalSpec MarginalSpec::normal(std::string name, double mean, double sd) {
    if (!(sd > 0.0)) throw ConfigError("normal marginal '" + name + "' requires sd > 0");
    MarginalSpec spec;
    spec.name = std::move(name);
    spec.kind = Kind::normal;
    spec.mean = mean;
    spec.sd = sd;
    return spec;
}

MarginalSpec MarginalSpec::discrete_uniform(std::string name, std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw ConfigError("discrete marginal '" + name + "' requires lo <= hi");
    MarginalSpec spec;
    spec.name = std::move(name);
    spec.kind = Kind::discrete_uniform;
    spec.lo = lo;
    spec.hi = hi;
    return spec;
}

double MarginalSpec::transform(double p) const {
    switch (kind) {
        case Kind::uniform: return quantile_uniform(p, a, b);
        case Kind::normal: return quantile_normal(p, mean, sd);
        case Kind::discrete_uniform:
            return static_cast<double>(quantile_discrete_uniform(p, lo, hi));
    }
    return p;
}

void apply_marginals(Matrix& samples, const std::vector<MarginalSpec>& marginals,
                     const std::vector<std::string>& param_names) {
    if (marginals.size() != samples.cols())
        throw ConfigError("marginal count (" + std::to_string(marginals.size()) +
                          ") does not match column count (" +
                          std::to_string(samples.cols()) + ")");
    if (!param_names.empty()) {
        for (std::size_t c = 0; c < marginals.size(); ++c)
            if (!marginals[c].name.empty() && marginals[c].name != param_names[c])
                throw ConfigError("marginal '" + marginals[c].name +
                                  "' does not match parameter '" + param_names[c] + "'");
    }
    for (std::size_t c = 0; c < samples.cols(); ++c)
        for (std::size_t r = 0; r < samples.rows(); ++r)
            samples(r, c) = marginals[c].transform(samples(r, c));
}

} // namespace sensivar
