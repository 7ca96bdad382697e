#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "bilinear/errors.hpp"
#include "bilinear/lag1.hpp"
#include "bilinear/monte_carlo.hpp"
#include "support/stats.hpp"

using namespace bilinear;

TEST_CASE("stationarity frontiers in r for the scale families") {
    // beta^4 mu_4 < 1 at alpha = 1 pins r_max = mu_4^(-1/4)
    CHECK(max_admissible_beta(raw_moments(parse_family("uniform0a"))) ==
          doctest::Approx(std::pow(5.0, 0.25)).epsilon(1e-14));
    CHECK(max_admissible_beta(raw_moments(parse_family("exp"))) ==
          doctest::Approx(std::pow(24.0, -0.25)).epsilon(1e-14));
    CHECK(max_admissible_beta(raw_moments(parse_family("pareto12"))) ==
          doctest::Approx(std::pow(2.0 / 3.0, 0.25)).epsilon(1e-14));
    CHECK(max_admissible_beta(raw_moments(parse_family("pareto9"))) ==
          doctest::Approx(std::pow(5.0 / 9.0, 0.25)).epsilon(1e-14));
}

TEST_CASE("stationarity frontiers for the symmetric catalog") {
    CHECK(max_admissible_beta(raw_moments(parse_family("unif-sym"))) ==
          doctest::Approx(std::pow(5.0 / 9.0, 0.25)).epsilon(1e-14));  // 0.863...
    CHECK(max_admissible_beta(raw_moments(parse_family("normal"))) ==
          doctest::Approx(std::pow(3.0, -0.25)).epsilon(1e-14));       // 0.7598...
    CHECK(max_admissible_beta(raw_moments(parse_family("t30"))) ==
          doctest::Approx(std::pow(13.0 / 42.0, 0.25)).epsilon(1e-13));  // 0.7459...
    CHECK(max_admissible_beta(raw_moments(parse_family("t9"))) ==
          doctest::Approx(std::pow(5.0 / 21.0, 0.25)).epsilon(1e-13));   // 0.6985...
}

TEST_CASE("check_stationarity report") {
    const InnovationSpec exp1 = InnovationSpec::exponential(1.0);
    const MomentVector mu = raw_moments(exp1);

    SUBCASE("inside the region") {
        const StationarityReport rep = check_stationarity(ModelSpec{0.2, 1}, mu, exp1);
        CHECK(rep.x_weakly_stationary);
        CHECK(rep.x2_weakly_stationary);
        CHECK(rep.margin == doctest::Approx(1.0 - 24.0 * std::pow(0.2, 4)).epsilon(1e-14));
        REQUIRE(rep.lyapunov_gamma.has_value());
        CHECK(*rep.lyapunov_gamma < 0.0);
    }
    SUBCASE("outside the X^2 region") {
        const StationarityReport rep = check_stationarity(ModelSpec{0.5, 1}, mu, exp1);
        CHECK(rep.x_weakly_stationary);  // 0.25 * 2 < 1
        CHECK_FALSE(rep.x2_weakly_stationary);
        CHECK(rep.margin < 0.0);
    }
    SUBCASE("beta = 0 degenerates to the innovation itself") {
        const StationarityReport rep = check_stationarity(ModelSpec{0.0, 1}, mu, exp1);
        CHECK(rep.x_weakly_stationary);
        CHECK(rep.x2_weakly_stationary);
        REQUIRE(rep.lyapunov_gamma.has_value());
        CHECK(std::isinf(*rep.lyapunov_gamma));
        CHECK(*rep.lyapunov_gamma < 0.0);
    }
    SUBCASE("x2-stationarity implies x-stationarity on a parameter sweep") {
        for (const char* name : {"uniform0a", "exp", "pareto9", "normal", "t9"}) {
            const InnovationSpec spec = parse_family(name);
            const MomentVector m = raw_moments(spec);
            for (int i = 0; i < 200; ++i) {
                const double beta = 2.0 * (i + 0.5) / 200.0;
                const StationarityReport rep = check_stationarity(ModelSpec{beta, 1}, m, spec);
                if (rep.x2_weakly_stationary) CHECK(rep.x_weakly_stationary);
                if (rep.x_weakly_stationary) {
                    REQUIRE(rep.lyapunov_gamma.has_value());
                    CHECK(*rep.lyapunov_gamma < 0.0);
                }
            }
        }
    }
}

TEST_CASE("xeps moments: base case and beta = 0") {
    const MomentVector mu = raw_moments(InnovationSpec::exponential(1.0));

    SUBCASE("beta = 0 gives mu_2n") {
        const auto xeps = xeps_moments(ModelSpec{0.0, 1}, mu);
        for (int n = 1; n <= 4; ++n) CHECK(xeps[n] == doctest::Approx(mu[2 * n]).epsilon(1e-15));
    }
    SUBCASE("exp(1), beta = 0.2 base case 2.5 and frozen recursion values") {
        const auto xeps = xeps_moments(ModelSpec{0.2, 1}, mu);
        CHECK(xeps[1] == doctest::Approx(2.5).epsilon(1e-14));
        CHECK(xeps[2] == doctest::Approx(32.608695652173913).epsilon(1e-13));
        CHECK(xeps[3] == doctest::Approx(1044.0263061746438).epsilon(1e-13));
        CHECK(xeps[4] == doctest::Approx(62441.601106911693).epsilon(1e-13));
    }
}

TEST_CASE("x moments, variance, kurtosis") {
    SUBCASE("beta = 0 reduces to the innovation moments") {
        for (const char* name : {"exp", "normal", "pareto12"}) {
            const InnovationSpec spec = parse_family(name);
            const MomentVector mu = raw_moments(spec);
            const MomentTable table = x_moments(ModelSpec{0.0, 1}, mu);
            for (int n = 1; n <= 4; ++n) CHECK(table.x[n] == doctest::Approx(mu[n]).epsilon(1e-15));
            CHECK(table.excess_kurtosis ==
                  doctest::Approx(excess_kurtosis(mu)).epsilon(1e-12));
        }
    }
    SUBCASE("frozen table for exp(1), beta = 0.2") {
        const MomentTable t = x_moments(ModelSpec{0.2, 1}, raw_moments(InnovationSpec::exponential(1.0)));
        CHECK(t.x[1] == doctest::Approx(1.5).epsilon(1e-14));
        CHECK(t.x[2] == doctest::Approx(4.3043478260869565).epsilon(1e-13));
        CHECK(t.x[3] == doctest::Approx(21.265253927658020).epsilon(1e-13));
        CHECK(t.x[4] == doctest::Approx(184.96757748169079).epsilon(1e-13));
        CHECK(t.variance == doctest::Approx(4.3043478260869565 - 2.25).epsilon(1e-13));
        CHECK(t.excess_kurtosis == doctest::Approx(20.765177916151450).epsilon(1e-12));
    }
    SUBCASE("kurtosis limits as r -> 0") {
        const MomentTable u = x_moments(ModelSpec{1e-9, 1}, raw_moments(parse_family("uniform0a")));
        CHECK(u.excess_kurtosis == doctest::Approx(-1.2).epsilon(1e-9));
        const MomentTable e = x_moments(ModelSpec{1e-9, 1}, raw_moments(parse_family("exp")));
        CHECK(e.excess_kurtosis == doctest::Approx(6.0).epsilon(1e-9));
    }
    SUBCASE("moment inequalities hold across the stationarity region") {
        for (const char* name : {"uniform0a", "exp", "pareto12", "pareto9", "normal", "t9"}) {
            const InnovationSpec spec = parse_family(name);
            const MomentVector mu = raw_moments(spec);
            const double edge = max_admissible_beta(mu);
            for (int i = 1; i < 50; ++i) {
                const double beta = edge * i / 50.0;
                const MomentTable t = x_moments(ModelSpec{beta, 1}, mu);
                CHECK(t.variance > 0.0);
                CHECK(t.x[2] >= t.x[1] * t.x[1]);
                CHECK(t.x[4] >= t.x[2] * t.x[2] * (1.0 - 1e-12));
                if (spec.nonnegative()) {
                    for (int n = 1; n <= 4; ++n) {
                        CHECK(t.x[n] >= 0.0);
                        CHECK(t.xeps[n] >= 0.0);
                    }
                }
            }
        }
    }
}

TEST_CASE("pole guard") {
    const MomentVector mu = raw_moments(InnovationSpec::exponential(1.0));
    // beta at the exact x2 frontier: beta^4 mu_4 = 1
    const double edge = std::pow(24.0, -0.25);
    CHECK_THROWS_AS(xeps_moments(ModelSpec{edge, 1}, mu), pole_error);
    CHECK_THROWS_AS(x_moments(ModelSpec{0.6, 1}, mu), pole_error);  // beta^4 mu4 > 1
    CHECK_THROWS_WITH_AS(xeps_moments(ModelSpec{edge, 1}, mu), doctest::Contains("mu_4"), pole_error);
    // and lag != 1 is rejected up front
    CHECK_THROWS_AS(x_moments(ModelSpec{0.2, 2}, mu), std::domain_error);
    CHECK_THROWS_AS(x_moments(ModelSpec{0.2, 0}, mu), std::domain_error);
}

TEST_CASE("reduced-coordinate invariance: (alpha, beta) enters through r only") {
    SUBCASE("power-of-two rescaling is bit-exact") {
        for (const char* name : {"uniform0a", "exp", "pareto12", "pareto9"}) {
            for (double r : {0.05, 0.2, 0.35}) {
                const double edge = max_admissible_beta(raw_moments(parse_family(name)));
                if (r >= edge) continue;
                const Lag1Report a = lag1_report(parse_family(name, 1.0), ModelSpec{r, 1});
                const Lag1Report b = lag1_report(parse_family(name, 2.0), ModelSpec{r / 2.0, 1});
                CHECK(a.rho1 == b.rho1);
                CHECK(a.rho1_sq == b.rho1_sq);
                CHECK(a.delta == b.delta);
                CHECK(a.excess_kurtosis == b.excess_kurtosis);
            }
        }
    }
    SUBCASE("general rescaling agrees to 1e-12") {
        const Lag1Report a = lag1_report(parse_family("exp", 1.0), ModelSpec{0.3, 1});
        const Lag1Report b = lag1_report(parse_family("exp", 3.0), ModelSpec{0.1, 1});
        CHECK(a.rho1 == doctest::Approx(b.rho1).epsilon(1e-12));
        CHECK(a.rho1_sq == doctest::Approx(b.rho1_sq).epsilon(1e-12));
        CHECK(a.excess_kurtosis == doctest::Approx(b.excess_kurtosis).epsilon(1e-12));
    }
    SUBCASE("randomized power-of-two rescalings stay bit-exact") {
        RngStream rng(404);
        const char* names[] = {"uniform0a", "exp", "pareto12", "pareto9"};
        const double scales[] = {2.0, 4.0, 8.0, 0.5, 0.25};
        for (int trial = 0; trial < 200; ++trial) {
            const char* name = names[static_cast<int>(rng.uniform01() * 4)];
            const double c = scales[static_cast<int>(rng.uniform01() * 5)];
            const double edge = max_admissible_beta(raw_moments(parse_family(name)));
            const double r = rng.uniform01() * edge * 0.999;
            const Lag1Report a = lag1_report(parse_family(name, 1.0), ModelSpec{r, 1});
            const Lag1Report b = lag1_report(parse_family(name, c), ModelSpec{r / c, 1});
            CHECK(a.rho1 == b.rho1);
            CHECK(a.rho1_sq == b.rho1_sq);
            CHECK(a.excess_kurtosis == b.excess_kurtosis);
        }
    }
}

TEST_CASE("kurtosis shape on 200-point grids") {
    // K_u rises monotonically over the whole interval. K_e first dips: its
    // exact expansion at 0 is 6 - 240 r^2 - 192 r^3 + O(r^4), with the minimum
    // near r = 0.0597957; beyond the dip it rises monotonically.
    auto kurt = [](const char* name, double r) {
        return x_moments(ModelSpec{r, 1}, raw_moments(parse_family(name))).excess_kurtosis;
    };

    SUBCASE("uniform: nondecreasing") {
        const double edge = std::pow(5.0, 0.25);
        double prev = -HUGE_VAL;
        for (int i = 0; i < 200; ++i) {
            const double r = edge * 1e-6 + (edge * (1.0 - 2e-6)) * i / 199.0;
            const double k = kurt("uniform0a", r);
            CHECK(k >= prev);
            prev = k;
        }
    }
    SUBCASE("exponential: shallow dip, then nondecreasing") {
        const double dip = 0.059795735088;
        CHECK(kurt("exp", 1e-8) == doctest::Approx(6.0).epsilon(1e-9));
        CHECK(kurt("exp", dip) == doctest::Approx(5.5834016203864607).epsilon(1e-10));
        CHECK(kurt("exp", 0.03) < 6.0);  // inside the dip
        double prev = -HUGE_VAL;
        const double edge = std::pow(24.0, -0.25);
        for (int i = 0; i < 200; ++i) {
            const double r = dip + (edge * (1.0 - 1e-6) - dip) * i / 199.0;
            const double k = kurt("exp", r);
            CHECK(k >= prev);
            prev = k;
        }
    }
}

TEST_CASE("exe/ex agree with a simulation oracle within 3 SE") {
    struct Cell {
        const char* family;
        double beta;
    };
    const Cell cells[] = {{"exp", 0.2}, {"exp", 0.3}, {"pareto12", 0.5}, {"uniform0a", 1.0}};
    for (const auto& cell : cells) {
        CAPTURE(cell.family);
        const InnovationSpec spec = parse_family(cell.family);
        const MomentVector mu = raw_moments(spec);
        const MomentTable table = x_moments(ModelSpec{cell.beta, 1}, mu);

        const SimConfig config{ModelSpec{cell.beta, 1}, spec, 1'000'000, 500, 987654321};
        const std::vector<double> path = simulate_path(config);

        for (int n = 1; n <= 4; ++n) {
            CAPTURE(n);
            auto f = [n](double x) {
                double p = 1.0;
                for (int j = 0; j < n; ++j) p *= x;
                return p;
            };
            const double est = oracle::mean_of(path, f);
            const double se = oracle::batch_se_mean(path, f);
            CHECK(std::fabs(est - table.x[n]) < 3.0 * se);
        }
    }
}

TEST_CASE("E(X eps) matches a simulation oracle within 3 SE") {
    // products are re-simulated here step by step, independently of simulate_path's
    // internal ring buffer
    const InnovationSpec spec = InnovationSpec::exponential(1.0);
    const double beta = 0.2;
    const auto xeps = xeps_moments(ModelSpec{beta, 1}, raw_moments(spec));

    RngStream rng(424242);
    const int kN = 1'000'000;
    std::vector<double> products;
    products.reserve(kN);
    double prev_prod = 0.0;
    bool have_prev = false;
    for (int t = 0; t < kN + 500; ++t) {
        const double eps = sample(spec, rng);
        const double x = have_prev ? beta * prev_prod + eps : eps;
        prev_prod = x * eps;
        have_prev = true;
        if (t >= 500) products.push_back(x * eps);
    }
    const double est = oracle::mean_of(products, [](double v) { return v; });
    const double se = oracle::batch_se_mean(products, [](double v) { return v; });
    CHECK(std::fabs(est - xeps[1]) < 3.0 * se);
}
