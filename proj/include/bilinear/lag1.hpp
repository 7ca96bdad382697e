#pragma once

#include <array>
#include <optional>

#include "bilinear/moments.hpp"

namespace bilinear {

// Lag-1 cross moments of the first-order model. e[1..6] are the auxiliary
// expectations entering E(X_t^2 X_{t-1}^2):
//   e1 = E(X_t^2 X_{t-1}^2 eps_t^2 eps_{t-1}^2)   e4 = E(X_t X_{t-1} eps_t^2 eps_{t-1})
//   e2 = E(X_t^2 X_{t-1} eps_t^3 eps_{t-1})       e5 = E(X_t^2 eps_t^4)
//   e3 = E(X_t X_{t-1}^2 eps_t eps_{t-1}^2)       e6 = E(X_t eps_t^3)
struct CrossMoments {
    double m11;  // E(X_t X_{t-1})
    double m22;  // E(X_t^2 X_{t-1}^2)
    std::array<double, 7> e{};
};

double cross_moment_lag1(const ModelSpec& model, const MomentVector& mu, const MomentTable& table);

// Fills m22 and e[1..6]; m11 is left to cross_moment_lag1.
CrossMoments cross_moment_sq_lag1(const ModelSpec& model, const MomentVector& mu,
                                  const MomentTable& table);

struct Lag1Report {
    double rho1;              // corr(X_t, X_{t-1})
    double rho1_sq;           // corr(X_t^2, X_{t-1}^2)
    double delta;             // rho1 - rho1_sq
    double excess_kurtosis;   // of X
    std::optional<double> r;  // alpha * beta for scale families
    bool taylor_holds() const { return delta > 0.0; }
};

Lag1Report lag1_report(const InnovationSpec& spec, const ModelSpec& model);

}  // namespace bilinear
