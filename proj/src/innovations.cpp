#include "bilinear/innovations.hpp"

#include <cmath>
#include <charconv>
#include <stdexcept>

namespace bilinear {

namespace {

constexpr double kEulerGamma = 0.57721566490153286061;
constexpr double kSqrt3 = 1.7320508075688772935;

void require_positive(double value, const char* what) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw std::domain_error(std::string(what) + " must be a positive finite real");
    }
}

void require_shape_above_8(double nu, const char* family) {
    if (!(nu > 8.0) || !std::isfinite(nu)) {
        throw std::domain_error(std::string(family) + " shape nu = " + std::to_string(nu) +
                                " invalid: mu_8 exists only for nu > 8");
    }
}

// psi(x) by upward recurrence to x >= 16, then the Bernoulli asymptotic series.
double digamma(double x) {
    double acc = 0.0;
    while (x < 16.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    const double tail =
        inv2 * (1.0 / 12 - inv2 * (1.0 / 120 - inv2 * (1.0 / 252 - inv2 * (1.0 / 240 - inv2 / 132))));
    return acc + std::log(x) - 0.5 * inv - tail;
}

// Even raw moment of the unit-variance scaled Student law,
// mu_{2m} = ((nu-2)/nu)^m nu^m Gamma(m+1/2) Gamma(nu/2-m) / (sqrt(pi) Gamma(nu/2)),
// evaluated in log space; requires 2m < nu.
double student_scaled_even_moment(double nu, int m) {
    return std::exp(m * std::log(nu - 2.0) + std::lgamma(m + 0.5) + std::lgamma(nu / 2.0 - m) -
                    std::lgamma(0.5) - std::lgamma(nu / 2.0));
}

}  // namespace

InnovationSpec InnovationSpec::uniform_positive(double alpha) {
    require_positive(alpha, "uniform scale alpha");
    return {Family::uniform_positive, alpha, 0.0};
}

InnovationSpec InnovationSpec::exponential(double alpha) {
    require_positive(alpha, "exponential mean alpha");
    return {Family::exponential, alpha, 0.0};
}

InnovationSpec InnovationSpec::pareto(double nu, double alpha) {
    require_shape_above_8(nu, "pareto");
    require_positive(alpha, "pareto scale alpha");
    return {Family::pareto, alpha, nu};
}

InnovationSpec InnovationSpec::uniform_symmetric() {
    return {Family::uniform_symmetric, 1.0, 0.0};
}

InnovationSpec InnovationSpec::standard_normal() {
    return {Family::standard_normal, 1.0, 0.0};
}

InnovationSpec InnovationSpec::scaled_student_t(double nu) {
    require_shape_above_8(nu, "scaled Student t");
    return {Family::scaled_student_t, 1.0, nu};
}

bool InnovationSpec::symmetric() const {
    switch (family_) {
        case Family::uniform_symmetric:
        case Family::standard_normal:
        case Family::scaled_student_t:
            return true;
        default:
            return false;
    }
}

bool InnovationSpec::nonnegative() const {
    switch (family_) {
        case Family::uniform_positive:
        case Family::exponential:
        case Family::pareto:
            return true;
        default:
            return false;
    }
}

bool InnovationSpec::scale_family() const { return nonnegative(); }

namespace {

std::string shape_suffix(double nu) {
    // integer shapes print without a decimal point: pareto12, t30
    if (nu == static_cast<double>(static_cast<long long>(nu))) {
        return std::to_string(static_cast<long long>(nu));
    }
    std::string s = std::to_string(nu);
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
    return s;
}

}  // namespace

std::string InnovationSpec::name() const {
    switch (family_) {
        case Family::uniform_positive: return "uniform0a";
        case Family::exponential: return "exp";
        case Family::pareto: return "pareto" + shape_suffix(nu_);
        case Family::uniform_symmetric: return "unif-sym";
        case Family::standard_normal: return "normal";
        case Family::scaled_student_t: return "t" + shape_suffix(nu_);
    }
    throw std::logic_error("unreachable family");
}

InnovationSpec parse_family(std::string_view name, double alpha) {
    auto parse_shape = [&](std::string_view text, const char* family) {
        double nu = 0.0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), nu);
        if (ec != std::errc{} || ptr != text.data() + text.size()) {
            throw std::domain_error("cannot parse " + std::string(family) + " shape from '" +
                                    std::string(text) + "'");
        }
        return nu;
    };
    if (name == "uniform0a" || name == "uniform") return InnovationSpec::uniform_positive(alpha);
    if (name == "exp") return InnovationSpec::exponential(alpha);
    if (name == "unif-sym") return InnovationSpec::uniform_symmetric();
    if (name == "normal") return InnovationSpec::standard_normal();
    if (name.starts_with("pareto")) {
        return InnovationSpec::pareto(parse_shape(name.substr(6), "pareto"), alpha);
    }
    if (name.starts_with("t") && name.size() > 1) {
        return InnovationSpec::scaled_student_t(parse_shape(name.substr(1), "student"));
    }
    throw std::domain_error("unknown innovation family '" + std::string(name) +
                            "' (expected uniform0a, exp, pareto<nu>, unif-sym, normal, t<nu>)");
}

MomentVector raw_moments(const InnovationSpec& spec) {
    MomentVector m;
    m.mu[0] = 1.0;
    switch (spec.family()) {
        case Family::uniform_positive: {
            double p = 1.0;
            for (int i = 1; i <= 8; ++i) {
                p *= spec.alpha();
                m.mu[i] = p / (i + 1);
            }
            break;
        }
        case Family::exponential: {
            double p = 1.0;
            double fact = 1.0;
            for (int i = 1; i <= 8; ++i) {
                p *= spec.alpha();
                fact *= i;
                m.mu[i] = fact * p;
            }
            break;
        }
        case Family::pareto: {
            const double nu = spec.nu();
            double p = 1.0;
            for (int i = 1; i <= 8; ++i) {
                p *= spec.alpha();
                if (!(nu > i)) {
                    throw std::domain_error("pareto mu_" + std::to_string(i) +
                                            " does not exist for nu = " + std::to_string(nu));
                }
                m.mu[i] = nu * p / (nu - i);
            }
            break;
        }
        case Family::uniform_symmetric: {
            // even moments of U(]-sqrt(3), sqrt(3)[): 3^(i/2) / (i+1)
            double p = 1.0;
            for (int i = 2; i <= 8; i += 2) {
                p *= 3.0;
                m.mu[i] = p / (i + 1);
            }
            break;
        }
        case Family::standard_normal: {
            // (i-1)!! for even i
            m.mu[2] = 1.0;
            m.mu[4] = 3.0;
            m.mu[6] = 15.0;
            m.mu[8] = 105.0;
            break;
        }
        case Family::scaled_student_t: {
            const double nu = spec.nu();
            for (int mm = 1; mm <= 4; ++mm) {
                if (!(nu > 2 * mm)) {
                    throw std::domain_error("student mu_" + std::to_string(2 * mm) +
                                            " does not exist for nu = " + std::to_string(nu));
                }
                m.mu[2 * mm] = student_scaled_even_moment(nu, mm);
            }
            break;
        }
    }
    return m;
}

bool log_moment_exists(const InnovationSpec&) {
    // Every catalog law has E(|ln|eps||) < +inf: bounded densities near 0
    // (or support bounded away from 0) and polynomial-or-better tails.
    return true;
}

double log_abs_moment(const InnovationSpec& spec) {
    switch (spec.family()) {
        case Family::uniform_positive:
            return std::log(spec.alpha()) - 1.0;
        case Family::exponential:
            return std::log(spec.alpha()) - kEulerGamma;
        case Family::pareto:
            return std::log(spec.alpha()) + 1.0 / spec.nu();
        case Family::uniform_symmetric:
            // |eps| is uniform on ]0, sqrt(3)[
            return 0.5 * std::log(3.0) - 1.0;
        case Family::standard_normal:
            return -0.5 * (kEulerGamma + std::log(2.0));
        case Family::scaled_student_t: {
            // E ln|eps| = (ln(nu-2) - gamma_E - 2 ln 2 - psi(nu/2)) / 2,
            // from ln|eps| = ln|z| + (ln(nu-2) - ln V)/2 with V ~ chi^2(nu).
            const double nu = spec.nu();
            return 0.5 * (std::log(nu - 2.0) - kEulerGamma - 2.0 * std::log(2.0) - digamma(nu / 2.0));
        }
    }
    throw std::logic_error("unreachable family");
}

double excess_kurtosis(const MomentVector& mu) {
    const double m1 = mu[1];
    const double var = mu[2] - m1 * m1;
    const double c4 = mu[4] - 4.0 * mu[3] * m1 + 6.0 * mu[2] * m1 * m1 - 3.0 * m1 * m1 * m1 * m1;
    return c4 / (var * var) - 3.0;
}

double sample(const InnovationSpec& spec, RngStream& rng) {
    switch (spec.family()) {
        case Family::uniform_positive:
            return spec.alpha() * rng.uniform01();
        case Family::exponential:
            return -spec.alpha() * std::log(rng.uniform01());
        case Family::pareto:
            return spec.alpha() * std::pow(rng.uniform01(), -1.0 / spec.nu());
        case Family::uniform_symmetric:
            return kSqrt3 * (2.0 * rng.uniform01() - 1.0);
        case Family::standard_normal:
            return rng.normal();
        case Family::scaled_student_t: {
            const double z = rng.normal();
            const double v = 2.0 * rng.gamma(spec.nu() / 2.0);  // chi^2(nu)
            return z * std::sqrt((spec.nu() - 2.0) / v);
        }
    }
    throw std::logic_error("unreachable family");
}

}  // namespace bilinear
