#pragma once

#include <array>
#include <optional>

#include "bilinear/innovations.hpp"

namespace bilinear {

// The bilinear recursion X_t = beta X_{t-k} eps_{t-k} + eps_t.
// The closed-form analytics below require lag = 1; the simulator takes any lag.
struct ModelSpec {
    double beta = 0.0;
    int lag = 1;
};

void validate(const ModelSpec& model);

struct StationarityReport {
    bool x_weakly_stationary;    // beta^2 mu_2 < 1
    bool x2_weakly_stationary;   // beta^4 mu_4 < 1
    std::optional<double> lyapunov_gamma;  // ln|beta| + E(ln|eps|); -inf at beta = 0
    double margin;               // 1 - beta^4 mu_4
};

StationarityReport check_stationarity(const ModelSpec& model, const MomentVector& mu,
                                      const InnovationSpec& spec);

// Largest beta with beta^4 mu_4 < 1, i.e. mu_4^(-1/4).
double max_admissible_beta(const MomentVector& mu);

// xeps[n] = E(X^n eps^n) and x[n] = E(X^n), n = 1..4 (index 0 holds 1).
struct MomentTable {
    std::array<double, 5> xeps{};
    std::array<double, 5> x{};
    double variance;
    double excess_kurtosis;
};

// E(X^n eps^n) by the fourth-order recursion; throws pole_error when any
// |beta^n mu_n| >= 1 - 1e-12 (non-stationary or near-singular input).
std::array<double, 5> xeps_moments(const ModelSpec& model, const MomentVector& mu);

MomentTable x_moments(const ModelSpec& model, const MomentVector& mu);

}  // namespace bilinear
