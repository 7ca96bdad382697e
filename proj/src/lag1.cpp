#include "bilinear/lag1.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "bilinear/errors.hpp"

namespace bilinear {

namespace {

void require_lag1(const ModelSpec& model) {
    if (model.lag != 1) {
        throw std::domain_error("lag-1 analytics require lag = 1, got lag = " +
                                std::to_string(model.lag));
    }
}

// extended-precision assembly shared by the public entry points; keeping the
// whole chain in one precision makes the beta = 0 cancellations exact
struct CrossLd {
    long double m11;
    long double m22;
    std::array<long double, 7> e{};
};

CrossLd assemble(const ModelSpec& model, const MomentVector& mu, const MomentTable& t) {
    const long double b = model.beta;
    const long double b2 = b * b;
    const long double b3 = b2 * b;
    const long double b4 = b3 * b;

    CrossLd cm;
    cm.m11 = b3 * mu[1] * t.xeps[2] + 2.0L * b2 * mu[2] * t.xeps[1] +
             static_cast<long double>(mu[1]) * t.x[1] + b * mu[3];

    cm.e[1] = b2 * mu[2] * t.xeps[4] + 2.0L * b * mu[3] * t.xeps[3] +
              static_cast<long double>(mu[4]) * t.xeps[2];
    cm.e[2] = b2 * mu[3] * t.xeps[3] + 2.0L * b * mu[4] * t.xeps[2] +
              static_cast<long double>(mu[5]) * t.xeps[1];
    cm.e[3] = b * mu[1] * t.xeps[3] + static_cast<long double>(mu[2]) * t.xeps[2];
    cm.e[4] = b * mu[2] * t.xeps[2] + static_cast<long double>(mu[3]) * t.xeps[1];
    cm.e[5] = b2 * mu[4] * t.xeps[2] + 2.0L * b * mu[5] * t.xeps[1] +
              static_cast<long double>(mu[6]);
    cm.e[6] = b * mu[3] * t.xeps[1] + static_cast<long double>(mu[4]);

    cm.m22 = b4 * cm.e[1] + 2.0L * b3 * cm.e[2] + 2.0L * b3 * mu[1] * cm.e[3] +
             4.0L * b2 * mu[1] * cm.e[4] + b2 * cm.e[5] + 2.0L * b * mu[1] * cm.e[6] +
             b2 * mu[2] * t.xeps[2] + 2.0L * b * mu[1] * mu[2] * t.xeps[1] +
             static_cast<long double>(mu[2]) * mu[2];
    return cm;
}

}  // namespace

double cross_moment_lag1(const ModelSpec& model, const MomentVector& mu, const MomentTable& t) {
    require_lag1(model);
    return static_cast<double>(assemble(model, mu, t).m11);
}

CrossMoments cross_moment_sq_lag1(const ModelSpec& model, const MomentVector& mu,
                                  const MomentTable& t) {
    require_lag1(model);
    const CrossLd ld = assemble(model, mu, t);
    CrossMoments cm;
    cm.m11 = static_cast<double>(ld.m11);
    cm.m22 = static_cast<double>(ld.m22);
    for (int i = 1; i <= 6; ++i) cm.e[i] = static_cast<double>(ld.e[i]);
    return cm;
}

Lag1Report lag1_report(const InnovationSpec& spec, const ModelSpec& model) {
    validate(model);
    require_lag1(model);
    const MomentVector mu = raw_moments(spec);
    const MomentTable table = x_moments(model, mu);
    if (table.variance <= 1e-14) {
        throw degenerate_error("process variance " + std::to_string(table.variance) +
                               " below 1e-14: correlations undefined");
    }
    const CrossLd cm = assemble(model, mu, table);

    const long double x1 = table.x[1];
    const long double x2 = table.x[2];
    const long double x4 = table.x[4];

    Lag1Report report;
    report.rho1 = static_cast<double>((cm.m11 - x1 * x1) / static_cast<long double>(table.variance));
    report.rho1_sq = static_cast<double>((cm.m22 - x2 * x2) / (x4 - x2 * x2));
    report.delta = report.rho1 - report.rho1_sq;
    report.excess_kurtosis = table.excess_kurtosis;
    if (spec.scale_family()) report.r = spec.alpha() * model.beta;
    return report;
}

}  // namespace bilinear
