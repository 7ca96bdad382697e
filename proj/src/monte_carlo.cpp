#include "bilinear/monte_carlo.hpp"

#include <boost/math/distributions/beta.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "bilinear/errors.hpp"
#include "bilinear/format.hpp"

namespace bilinear {

namespace {

constexpr double kOverflowGuard = 1e300;

double apply(Transform t, double x) {
    switch (t) {
        case Transform::identity: return x;
        case Transform::abs: return std::fabs(x);
        case Transform::square: return x * x;
    }
    throw std::logic_error("unreachable transform");
}

}  // namespace

std::vector<double> simulate_path(const SimConfig& config) {
    validate(config.model);
    if (config.n_obs < 30) throw std::domain_error("simulate_path requires n_obs >= 30");
    if (config.burn_in < 0) throw std::domain_error("simulate_path requires burn_in >= 0");

    const int k = config.model.lag;
    const double beta = config.model.beta;
    RngStream rng(config.seed);

    std::vector<double> lagged_products(k, 0.0);  // X_{t} eps_{t} for the last k steps
    std::vector<double> out;
    out.reserve(config.n_obs);

    const std::int64_t total = config.burn_in + config.n_obs;
    for (std::int64_t t = 0; t < total; ++t) {
        const double eps = sample(config.innovation, rng);
        const double x = (t < k) ? eps : beta * lagged_products[t % k] + eps;
        if (!(std::fabs(x) <= kOverflowGuard)) {
            throw std::overflow_error("|X_t| exceeded 1e300 at t = " + std::to_string(t) +
                                      ": explosive parameterization");
        }
        lagged_products[t % k] = x * eps;
        if (t >= config.burn_in) out.push_back(x);
    }
    return out;
}

double sample_acf(std::span<const double> series, Transform transform, int lag) {
    const std::size_t n = series.size();
    if (n < 30) throw std::domain_error("sample_acf requires series length >= 30");
    if (lag < 1 || static_cast<std::size_t>(lag) >= n) {
        throw std::domain_error("sample_acf requires 1 <= lag < length");
    }

    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = apply(transform, series[i]);

    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= static_cast<double>(n);

    double denom = 0.0;
    for (double v : y) denom += (v - mean) * (v - mean);
    if (denom / static_cast<double>(n) < 1e-14) {
        throw degenerate_error("transformed sample variance below 1e-14");
    }

    double num = 0.0;
    const std::size_t h = static_cast<std::size_t>(lag);
    for (std::size_t i = 0; i + h < n; ++i) num += (y[i] - mean) * (y[i + h] - mean);
    return num / denom;
}

std::pair<double, double> wald_interval(int successes, int n) {
    if (n <= 0) throw std::domain_error("wald_interval requires n > 0");
    const double p = static_cast<double>(successes) / n;
    const double half = 1.96 * std::sqrt(p * (1.0 - p) / n);
    return {std::max(0.0, p - half), std::min(1.0, p + half)};
}

std::pair<double, double> clopper_pearson_interval(int successes, int n) {
    if (n <= 0) throw std::domain_error("clopper_pearson_interval requires n > 0");
    const double alpha = 0.05;
    double lo = 0.0, hi = 1.0;
    if (successes > 0) {
        boost::math::beta_distribution<double> dist(successes, n - successes + 1);
        lo = boost::math::quantile(dist, alpha / 2);
    }
    if (successes < n) {
        boost::math::beta_distribution<double> dist(successes + 1, n - successes);
        hi = boost::math::quantile(dist, 1 - alpha / 2);
    }
    return {lo, hi};
}

ReplicationReport replication_experiment(double beta, const InnovationSpec& innovation, int n_obs,
                                         int n_reps, std::uint64_t seed, CiMethod method,
                                         int max_lag) {
    if (n_reps <= 0) throw std::domain_error("replication_experiment requires n_reps > 0");
    if (max_lag < 1) throw std::domain_error("replication_experiment requires max_lag >= 1");

    ReplicationReport report;
    report.beta = beta;
    report.family = innovation.name();
    report.n_reps = n_reps;
    report.ci_method = method == CiMethod::wald ? "wald" : "clopper-pearson";

    const MomentVector mu = raw_moments(innovation);
    if (!(beta * beta * beta * beta * mu[4] < 1.0)) {
        report.na = true;  // matches the NA cells of the published table
        return report;
    }

    for (int rep = 0; rep < n_reps; ++rep) {
        SimConfig config{ModelSpec{beta, 1}, innovation, n_obs, 500, derive_seed(seed, rep)};
        std::vector<double> path;
        try {
            path = simulate_path(config);
        } catch (const std::overflow_error&) {
            ++report.failed_to_simulate;
            continue;
        }
        int lags_in_favor = 0;
        for (int h = 1; h <= max_lag; ++h) {
            if (sample_acf(path, Transform::abs, h) > sample_acf(path, Transform::square, h)) {
                ++lags_in_favor;
            }
        }
        if (2 * lags_in_favor > max_lag) ++report.successes;
    }

    const int completed = n_reps - report.failed_to_simulate;
    if (completed == 0) {
        report.na = true;
        return report;
    }
    report.p_hat = static_cast<double>(report.successes) / completed;
    const auto ci = method == CiMethod::wald ? wald_interval(report.successes, completed)
                                             : clopper_pearson_interval(report.successes, completed);
    report.ci_lo = ci.first;
    report.ci_hi = ci.second;
    return report;
}

double symmetric_k2_check(const InnovationSpec& innovation, double beta, std::int64_t n_obs,
                          std::uint64_t seed) {
    if (!innovation.symmetric()) {
        throw std::domain_error("symmetric_k2_check requires a symmetric innovation");
    }
    SimConfig config{ModelSpec{beta, 2}, innovation, n_obs, 500, seed};
    const std::vector<double> path = simulate_path(config);
    return sample_acf1(path, Transform::square);
}

Table1 run_table1(std::uint64_t seed, int n_obs, int n_reps, CiMethod method) {
    Table1 table;
    table.betas = {0.01, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.69, 0.74, 0.75, 0.863};
    table.families = {"unif-sym", "normal", "t30", "t9"};
    std::uint64_t cell = 0;
    for (double beta : table.betas) {
        std::vector<ReplicationReport> row;
        for (const auto& name : table.families) {
            const InnovationSpec spec = parse_family(name);
            row.push_back(
                replication_experiment(beta, spec, n_obs, n_reps, derive_seed(seed, cell), method));
            ++cell;
        }
        table.cells.push_back(std::move(row));
    }
    return table;
}

std::string table1_to_text(const Table1& table) {
    std::ostringstream os;
    os << "beta";
    for (const auto& f : table.families) os << '\t' << f;
    os << '\n';
    char buf[64];
    for (std::size_t i = 0; i < table.betas.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%g", table.betas[i]);
        os << buf;
        for (const auto& cell : table.cells[i]) {
            if (cell.na) {
                os << '\t' << "NA";
            } else {
                std::snprintf(buf, sizeof buf, "[%.3f,%.3f]", cell.ci_lo, cell.ci_hi);
                os << '\t' << buf;
            }
        }
        os << '\n';
    }
    return os.str();
}

std::string replication_csv_header() { return "beta,family,n_reps,p_hat,ci_lo,ci_hi,na_flag"; }

std::string replication_to_csv_row(const ReplicationReport& r) {
    std::ostringstream os;
    os << fmt_sig(r.beta) << ',' << r.family << ',' << r.n_reps << ',';
    if (r.na) {
        os << "NA,NA,NA,1";
    } else {
        os << fmt_sig(r.p_hat) << ',' << fmt_sig(r.ci_lo) << ',' << fmt_sig(r.ci_hi) << ",0";
    }
    return os.str();
}

std::string table1_to_csv(const Table1& table) {
    std::ostringstream os;
    os << replication_csv_header() << '\n';
    for (const auto& row : table.cells) {
        for (const auto& cell : row) os << replication_to_csv_row(cell) << '\n';
    }
    return os.str();
}

}  // namespace bilinear
