#include "bilinear/moments.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "bilinear/errors.hpp"

namespace bilinear {

namespace {

constexpr double kPoleTol = 1e-12;

constexpr int kBinomial[5][5] = {
    {1, 0, 0, 0, 0}, {1, 1, 0, 0, 0}, {1, 2, 1, 0, 0}, {1, 3, 3, 1, 0}, {1, 4, 6, 4, 1}};

void require_lag1(const ModelSpec& model) {
    if (model.lag != 1) {
        throw std::domain_error("closed-form moment analytics require lag = 1, got lag = " +
                                std::to_string(model.lag));
    }
}

// E(X^n eps^n), n = 0..4, in extended precision.
std::array<long double, 5> xeps_moments_impl(const ModelSpec& model, const MomentVector& mu) {
    const long double beta = model.beta;
    std::array<long double, 5> bpow;  // beta^j by repeated multiplication
    bpow[0] = 1.0L;
    for (int j = 1; j <= 4; ++j) bpow[j] = bpow[j - 1] * beta;

    std::array<long double, 5> xeps;
    xeps[0] = 1.0L;
    for (int n = 1; n <= 4; ++n) {
        const long double geom = bpow[n] * static_cast<long double>(mu[n]);
        if (std::fabs(static_cast<double>(geom)) >= 1.0 - kPoleTol) {
            throw pole_error("|beta^" + std::to_string(n) + " mu_" + std::to_string(n) +
                             "| = " + std::to_string(std::fabs(static_cast<double>(geom))) +
                             " >= 1 - 1e-12: moment recursion pole");
        }
        long double sum = 0.0L;
        for (int i = 1; i <= n; ++i) {
            sum += kBinomial[n][i] * bpow[n - i] * static_cast<long double>(mu[n + i]) * xeps[n - i];
        }
        xeps[n] = sum / (1.0L - geom);
    }
    return xeps;
}

}  // namespace

void validate(const ModelSpec& model) {
    if (model.lag < 1) throw std::domain_error("model lag must be >= 1");
    if (!std::isfinite(model.beta)) throw std::domain_error("model beta must be finite");
}

StationarityReport check_stationarity(const ModelSpec& model, const MomentVector& mu,
                                      const InnovationSpec& spec) {
    validate(model);
    const double b2 = model.beta * model.beta;
    StationarityReport report;
    report.x_weakly_stationary = b2 * mu[2] < 1.0;
    report.x2_weakly_stationary = b2 * b2 * mu[4] < 1.0;
    report.margin = 1.0 - b2 * b2 * mu[4];
    if (log_moment_exists(spec)) {
        report.lyapunov_gamma = std::log(std::fabs(model.beta)) + log_abs_moment(spec);
    }
    return report;
}

double max_admissible_beta(const MomentVector& mu) {
    return std::pow(1.0 / mu[4], 0.25);
}

std::array<double, 5> xeps_moments(const ModelSpec& model, const MomentVector& mu) {
    validate(model);
    require_lag1(model);
    const auto xeps = xeps_moments_impl(model, mu);
    std::array<double, 5> out;
    for (int n = 0; n <= 4; ++n) out[n] = static_cast<double>(xeps[n]);
    return out;
}

MomentTable x_moments(const ModelSpec& model, const MomentVector& mu) {
    validate(model);
    require_lag1(model);
    const auto xeps = xeps_moments_impl(model, mu);

    const long double beta = model.beta;
    std::array<long double, 5> bpow;
    bpow[0] = 1.0L;
    for (int j = 1; j <= 4; ++j) bpow[j] = bpow[j - 1] * beta;

    std::array<long double, 5> x;
    x[0] = 1.0L;
    for (int n = 1; n <= 4; ++n) {
        long double sum = 0.0L;
        for (int i = 0; i <= n; ++i) {
            sum += kBinomial[n][i] * bpow[n - i] * static_cast<long double>(mu[i]) * xeps[n - i];
        }
        x[n] = sum;
    }

    const long double variance = x[2] - x[1] * x[1];
    const long double c4 =
        x[4] - 4.0L * x[3] * x[1] + 6.0L * x[2] * x[1] * x[1] - 3.0L * x[1] * x[1] * x[1] * x[1];

    MomentTable table;
    for (int n = 0; n <= 4; ++n) {
        table.xeps[n] = static_cast<double>(xeps[n]);
        table.x[n] = static_cast<double>(x[n]);
    }
    table.variance = static_cast<double>(variance);
    table.excess_kurtosis = static_cast<double>(c4 / (variance * variance) - 3.0L);
    return table;
}

}  // namespace bilinear
