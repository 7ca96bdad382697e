#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bilinear/lag1.hpp"

namespace bilinear {

struct SimConfig {
    ModelSpec model;
    InnovationSpec innovation;
    std::int64_t n_obs = 500;    // observations kept (>= 30)
    std::int64_t burn_in = 500;  // observations discarded
    std::uint64_t seed = 0;
};

// X_t = eps_t for the first k steps, then the bilinear recursion; identical
// seed gives an identical series. Throws std::overflow_error past |X| = 1e300.
std::vector<double> simulate_path(const SimConfig& config);

enum class Transform { identity, abs, square };

// Sample lag-h autocorrelation of the transformed series: centered, with the
// full-sample variance of the transform in the denominator.
double sample_acf(std::span<const double> series, Transform transform, int lag);

inline double sample_acf1(std::span<const double> series, Transform transform) {
    return sample_acf(series, transform, 1);
}

enum class CiMethod { wald, clopper_pearson };

struct ReplicationReport {
    double beta;
    std::string family;
    int n_reps = 0;
    int successes = 0;            // replications with acf1(|X|) > acf1(X^2)
    int failed_to_simulate = 0;   // overflowed replications, excluded
    bool na = false;              // beta^4 mu_4 >= 1: not applicable, nothing run
    double p_hat = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    std::string ci_method;
};

// n_reps independent replications of n_obs observations each; per-replication
// streams are derived deterministically from (seed, replication index).
// max_lag = 1 (the default decision rule) counts acf1(|X|) > acf1(X^2);
// max_lag = L > 1 instead requires the inequality at a majority of lags 1..L.
ReplicationReport replication_experiment(double beta, const InnovationSpec& innovation,
                                         int n_obs = 500, int n_reps = 60, std::uint64_t seed = 0,
                                         CiMethod method = CiMethod::wald, int max_lag = 1);

// acf1 of X^2 for a lag-2 model with a symmetric innovation; near 0 in theory.
double symmetric_k2_check(const InnovationSpec& innovation, double beta, std::int64_t n_obs,
                          std::uint64_t seed);

// The 12 x 4 replication study over the symmetric catalog.
struct Table1 {
    std::vector<double> betas;
    std::vector<std::string> families;
    std::vector<std::vector<ReplicationReport>> cells;  // [beta][family]
};

Table1 run_table1(std::uint64_t seed, int n_obs = 500, int n_reps = 60,
                  CiMethod method = CiMethod::wald);

std::string table1_to_text(const Table1& table);
std::string table1_to_csv(const Table1& table);
std::string replication_csv_header();
std::string replication_to_csv_row(const ReplicationReport& report);

// p_hat +- 1.96 sqrt(p_hat (1 - p_hat) / n), clipped to [0, 1].
std::pair<double, double> wald_interval(int successes, int n);
std::pair<double, double> clopper_pearson_interval(int successes, int n);

}  // namespace bilinear
