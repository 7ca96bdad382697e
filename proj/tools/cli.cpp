#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "bilinear/errors.hpp"
#include "bilinear/format.hpp"
#include "bilinear/monte_carlo.hpp"
#include "bilinear/taylor_region.hpp"

namespace bilinear::cli {

namespace {

constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

struct SpecArgs {
    std::string family;
    double alpha = 1.0;
    double beta = kUnset;
    double r = kUnset;

    InnovationSpec spec() const { return parse_family(family, alpha); }

    // Scale families take either --r (alpha = 1 implied) or (--alpha, --beta);
    // both routes agree by the r-reduction.
    double resolve_beta(const InnovationSpec& s) const {
        const bool has_beta = !std::isnan(beta);
        const bool has_r = !std::isnan(r);
        if (has_beta == has_r) {
            throw std::domain_error("give exactly one of --beta or --r");
        }
        if (has_r) {
            if (!s.scale_family()) {
                throw std::domain_error("--r applies to scale families only; use --beta for " +
                                        s.name());
            }
            return r / s.alpha();
        }
        return beta;
    }
};

void add_spec_options(CLI::App* cmd, SpecArgs* args, bool with_beta = true) {
    cmd->add_option("--family", args->family, "innovation family name")->required();
    cmd->add_option("--alpha", args->alpha, "scale parameter (scale families)");
    if (with_beta) {
        cmd->add_option("--beta", args->beta, "model coefficient");
        cmd->add_option("--r", args->r, "reduced coordinate alpha*beta (alpha = 1 implied)");
    }
}

void require_x2_stationary(const InnovationSpec& spec, double beta) {
    const MomentVector mu = raw_moments(spec);
    const double b2 = beta * beta;
    if (b2 * b2 * mu[4] < 1.0) return;
    std::ostringstream msg;
    if (spec.scale_family()) {
        const InnovationSpec unit = parse_family(spec.name(), 1.0);
        const double mu4_unit = raw_moments(unit)[4];
        msg << "stationarity violated: r >= " << fmt_sig(mu4_unit, 10) << "^(-1/4) = "
            << fmt_sig(max_admissible_beta(raw_moments(unit)), 10);
    } else {
        msg << "stationarity violated: beta >= mu_4^(-1/4) = "
            << fmt_sig(max_admissible_beta(mu), 10);
    }
    throw std::domain_error(msg.str());
}

std::string bool_name(bool b) { return b ? "true" : "false"; }

// ---- moments ----------------------------------------------------------

void cmd_moments(const SpecArgs& args, const std::string& format, std::ostream& out) {
    const InnovationSpec spec = args.spec();
    const double beta = args.resolve_beta(spec);
    require_x2_stationary(spec, beta);

    const ModelSpec model{beta, 1};
    const MomentVector mu = raw_moments(spec);
    const StationarityReport st = check_stationarity(model, mu, spec);
    const MomentTable table = x_moments(model, mu);

    if (format == "csv") {
        out << "family,alpha,beta,xeps1,xeps2,xeps3,xeps4,x1,x2,x3,x4,variance,excess_kurtosis\n"
            << spec.name() << ',' << fmt_sig(spec.alpha()) << ',' << fmt_sig(beta);
        for (int n = 1; n <= 4; ++n) out << ',' << fmt_sig(table.xeps[n]);
        for (int n = 1; n <= 4; ++n) out << ',' << fmt_sig(table.x[n]);
        out << ',' << fmt_sig(table.variance) << ',' << fmt_sig(table.excess_kurtosis) << '\n';
        return;
    }
    if (format == "json") {
        nlohmann::json j;
        j["family"] = spec.name();
        j["alpha"] = spec.alpha();
        j["beta"] = beta;
        j["xeps"] = {table.xeps[1], table.xeps[2], table.xeps[3], table.xeps[4]};
        j["x"] = {table.x[1], table.x[2], table.x[3], table.x[4]};
        j["variance"] = table.variance;
        j["excess_kurtosis"] = table.excess_kurtosis;
        j["x_weakly_stationary"] = st.x_weakly_stationary;
        j["x2_weakly_stationary"] = st.x2_weakly_stationary;
        if (st.lyapunov_gamma) j["lyapunov_gamma"] = *st.lyapunov_gamma;
        j["margin"] = st.margin;
        out << j.dump(2) << '\n';
        return;
    }
    out << "family = " << spec.name() << " (alpha = " << fmt_sig(spec.alpha()) << ")\n"
        << "beta = " << fmt_sig(beta) << '\n';
    if (spec.scale_family()) out << "r = " << fmt_sig(spec.alpha() * beta) << '\n';
    out << "x_weakly_stationary = " << bool_name(st.x_weakly_stationary) << '\n'
        << "x2_weakly_stationary = " << bool_name(st.x2_weakly_stationary) << '\n';
    if (st.lyapunov_gamma) out << "lyapunov_gamma = " << fmt_sig(*st.lyapunov_gamma) << '\n';
    out << "margin = " << fmt_sig(st.margin) << '\n';
    for (int n = 1; n <= 4; ++n) out << "xeps" << n << " = " << fmt_sig(table.xeps[n]) << '\n';
    for (int n = 1; n <= 4; ++n) out << "x" << n << " = " << fmt_sig(table.x[n]) << '\n';
    out << "variance = " << fmt_sig(table.variance) << '\n'
        << "excess_kurtosis = " << fmt_sig(table.excess_kurtosis) << '\n';
}

// ---- acf1 / kurtosis ---------------------------------------------------

void cmd_acf1(const SpecArgs& args, const std::string& format, std::ostream& out) {
    const InnovationSpec spec = args.spec();
    const double beta = args.resolve_beta(spec);
    require_x2_stationary(spec, beta);
    const Lag1Report rep = lag1_report(spec, ModelSpec{beta, 1});

    if (format == "csv") {
        out << "family,alpha,beta,r,rho1,rho1_sq,delta,excess_kurtosis,taylor\n"
            << spec.name() << ',' << fmt_sig(spec.alpha()) << ',' << fmt_sig(beta) << ','
            << (rep.r ? fmt_sig(*rep.r) : "") << ',' << fmt_sig(rep.rho1) << ','
            << fmt_sig(rep.rho1_sq) << ',' << fmt_sig(rep.delta) << ','
            << fmt_sig(rep.excess_kurtosis) << ',' << (rep.taylor_holds() ? 1 : 0) << '\n';
        return;
    }
    if (format == "json") {
        nlohmann::json j;
        j["family"] = spec.name();
        j["alpha"] = spec.alpha();
        j["beta"] = beta;
        if (rep.r) j["r"] = *rep.r;
        j["rho1"] = rep.rho1;
        j["rho1_sq"] = rep.rho1_sq;
        j["delta"] = rep.delta;
        j["excess_kurtosis"] = rep.excess_kurtosis;
        j["taylor_holds"] = rep.taylor_holds();
        out << j.dump(2) << '\n';
        return;
    }
    if (rep.r) out << "r = " << fmt_sig(*rep.r) << '\n';
    out << "rho1 = " << fmt_sig(rep.rho1) << '\n'
        << "rho1_sq = " << fmt_sig(rep.rho1_sq) << '\n'
        << "delta = " << fmt_sig(rep.delta) << '\n'
        << "excess_kurtosis = " << fmt_sig(rep.excess_kurtosis) << '\n'
        << "taylor_holds = " << bool_name(rep.taylor_holds()) << '\n';
}

void cmd_kurtosis(const SpecArgs& args, std::ostream& out) {
    const InnovationSpec spec = args.spec();
    const double beta = args.resolve_beta(spec);
    require_x2_stationary(spec, beta);
    const MomentTable table = x_moments(ModelSpec{beta, 1}, raw_moments(spec));
    out << "excess_kurtosis = " << fmt_sig(table.excess_kurtosis) << '\n';
}

// ---- region ------------------------------------------------------------

void cmd_region(const std::string& family, double alpha, int grid, double tol,
                const std::string& source, std::ostream& out) {
    const InnovationSpec spec = parse_family(family, alpha);
    TaylorRegion region = source == "printed"
                              ? find_regions(reference::poly_family(spec), grid, tol)
                              : find_regions(spec, grid, tol);
    out << region_to_json(region) << '\n';
}

// ---- sweep -------------------------------------------------------------

void cmd_sweep(const std::string& family, const std::string& nus_csv, int grid, std::ostream& out) {
    out << "family,r,delta,kurtosis\n";
    if (!nus_csv.empty()) {
        std::vector<double> nus;
        std::stringstream ss(nus_csv);
        std::string item;
        while (std::getline(ss, item, ',')) nus.push_back(std::stod(item));
        for (const auto& row : sweep_pareto_shapes(nus, grid)) {
            out << "pareto" << fmt_sig(row.nu) << ',' << fmt_sig(row.r) << ','
                << fmt_sig(row.delta) << ',' << fmt_sig(row.kurtosis) << '\n';
        }
        return;
    }
    const InnovationSpec spec = parse_family(family, 1.0);
    for (const auto& row : sweep_delta(spec, grid)) {
        out << spec.name() << ',' << fmt_sig(row.r) << ',' << fmt_sig(row.delta) << ','
            << fmt_sig(row.kurtosis) << '\n';
    }
}

// ---- simulate ----------------------------------------------------------

void cmd_simulate(const SpecArgs& args, int lag, std::int64_t n, std::int64_t burn_in,
                  std::uint64_t seed, std::ostream& out, std::ostream& err) {
    const InnovationSpec spec = args.spec();
    const double beta = args.resolve_beta(spec);
    const MomentVector mu = raw_moments(spec);
    const double b2 = beta * beta;
    if (!(b2 * b2 * mu[4] < 1.0)) {
        err << "warning: beta^4 mu_4 = " << fmt_sig(b2 * b2 * mu[4])
            << " >= 1: path may be non-stationary\n";
    }
    const SimConfig config{ModelSpec{beta, lag}, spec, n, burn_in, seed};
    out << "x\n";
    for (double x : simulate_path(config)) out << fmt_sig(x) << '\n';
}

// ---- table1 ------------------------------------------------------------

void cmd_table1(std::uint64_t seed, int reps, int n_obs, const std::string& ci,
                const std::string& format, double beta, const std::string& family, int taylor_lags,
                std::ostream& out) {
    const CiMethod method = ci == "clopper-pearson" ? CiMethod::clopper_pearson : CiMethod::wald;
    if (!family.empty()) {
        if (std::isnan(beta)) throw std::domain_error("single-cell mode needs both --beta and --family");
        const ReplicationReport rep =
            replication_experiment(beta, parse_family(family), n_obs, reps, seed, method, taylor_lags);
        out << replication_csv_header() << '\n' << replication_to_csv_row(rep) << '\n';
        return;
    }
    if (taylor_lags != 1) {
        throw std::domain_error("--taylor-lags applies to single-cell mode; the full grid uses lag 1");
    }
    const Table1 table = run_table1(seed, n_obs, reps, method);
    out << (format == "csv" ? table1_to_csv(table) : table1_to_text(table));
}

// ---- verify ------------------------------------------------------------

void cmd_verify(int grid, double threshold, const std::string& export_path, std::ostream& out,
                std::ostream& err) {
    if (!export_path.empty()) {
        std::ofstream file(export_path);
        if (!file) throw std::domain_error("cannot open " + export_path);
        file << reference::formulas_to_json() << '\n';
        out << "formula tables written to " << export_path << '\n';
    }
    using reference::FormulaRole;
    using reference::PolyFamily;
    const PolyFamily families[] = {PolyFamily::uniform, PolyFamily::exponential,
                                   PolyFamily::pareto12, PolyFamily::pareto9};
    const FormulaRole roles[] = {FormulaRole::rho1, FormulaRole::rho1_sq, FormulaRole::kurtosis};
    const char* role_names[] = {"rho1", "rho1_sq", "kurtosis"};

    double overall = 0.0;
    for (PolyFamily fam : families) {
        const InnovationSpec spec = parse_family(reference::family_name(fam), 1.0);
        const double edge = reference::r_max(fam);
        for (int k = 0; k < 3; ++k) {
            double worst = 0.0;
            for (int i = 0; i < grid; ++i) {
                const double r = edge * (0.01 + 0.98 * static_cast<double>(i) / (grid - 1));
                const Lag1Report rep = lag1_report(spec, ModelSpec{r, 1});
                const double generic = k == 0 ? rep.rho1 : k == 1 ? rep.rho1_sq : rep.excess_kurtosis;
                const double printed = reference::eval_formula(reference::formula(fam, roles[k]), r);
                const double rel = std::fabs(generic - printed) /
                                   std::max({std::fabs(generic), std::fabs(printed), 1e-300});
                worst = std::max(worst, rel);
            }
            out << reference::family_name(fam) << ' ' << role_names[k]
                << " max_rel_err = " << fmt_sig(worst, 6) << '\n';
            overall = std::max(overall, worst);
        }
    }
    out << "overall max_rel_err = " << fmt_sig(overall, 6) << '\n';
    if (overall >= threshold) {
        err << "cross-validation failed: " << fmt_sig(overall, 6) << " >= "
            << fmt_sig(threshold, 6) << '\n';
        throw pole_error("generic/printed cross-validation exceeded threshold");
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"lag-1 autocorrelation and kurtosis analytics for simple bilinear models"};
    app.require_subcommand(1);

    std::string output_path;
    app.add_option("-o,--output", output_path, "write output to a file instead of stdout");

    SpecArgs spec_args;
    std::string format = "text";

    auto* moments = app.add_subcommand("moments", "moment table E(X^n eps^n), E(X^n), n <= 4");
    add_spec_options(moments, &spec_args);
    moments->add_option("--format", format, "text|csv|json");

    auto* acf1 = app.add_subcommand("acf1", "closed-form rho_X(1), rho_X2(1), delta, kurtosis");
    add_spec_options(acf1, &spec_args);
    acf1->add_option("--format", format, "text|csv|json");

    auto* kurtosis = app.add_subcommand("kurtosis", "excess kurtosis of X");
    add_spec_options(kurtosis, &spec_args);

    int region_grid = 100000;
    double region_tol = 5e-9;
    std::string region_source = "generic";
    auto* region = app.add_subcommand("region", "certified sub-intervals where delta > 0 (JSON)");
    add_spec_options(region, &spec_args, /*with_beta=*/false);
    region->add_option("--grid", region_grid, "grid points (>= 1000)");
    region->add_option("--tol", region_tol, "bisection half-width tolerance");
    region->add_option("--source", region_source, "generic|printed");

    int sweep_grid = 500;
    std::string pareto_nus;
    auto* sweep = app.add_subcommand("sweep", "CSV table of (r, delta, kurtosis)");
    sweep->add_option("--family", spec_args.family, "innovation family name");
    sweep->add_option("--grid", sweep_grid, "grid points");
    sweep->add_option("--pareto-nus", pareto_nus, "comma list of pareto shapes, shared grid");

    int sim_lag = 1;
    std::int64_t sim_n = 500;
    std::int64_t sim_burn_in = 500;
    std::uint64_t sim_seed = 0;
    auto* simulate = app.add_subcommand("simulate", "simulate a path (CSV, one value per line)");
    add_spec_options(simulate, &spec_args);
    simulate->add_option("--lag", sim_lag, "model lag k");
    simulate->add_option("--n", sim_n, "observations kept");
    simulate->add_option("--burn-in", sim_burn_in, "observations discarded");
    simulate->add_option("--seed", sim_seed, "64-bit seed");

    std::uint64_t t1_seed = 42;
    int t1_reps = 60;
    int t1_nobs = 500;
    std::string t1_ci = "wald";
    std::string t1_format = "table";
    std::string t1_family;
    double t1_beta = kUnset;
    int t1_lags = 1;
    auto* table1 = app.add_subcommand("table1", "replication study over the symmetric catalog");
    table1->add_option("--seed", t1_seed, "64-bit seed");
    table1->add_option("--reps", t1_reps, "replications per cell");
    table1->add_option("--n-obs", t1_nobs, "observations per replication");
    table1->add_option("--ci", t1_ci, "wald|clopper-pearson");
    table1->add_option("--format", t1_format, "table|csv");
    table1->add_option("--beta", t1_beta, "single-cell mode: model coefficient");
    table1->add_option("--family", t1_family, "single-cell mode: symmetric family");
    table1->add_option("--taylor-lags", t1_lags, "single-cell decision rule: majority of lags 1..L");

    int verify_grid = 100;
    double verify_threshold = 1e-9;
    std::string verify_export;
    auto* verify = app.add_subcommand("verify", "generic analytics vs printed rational functions");
    verify->add_option("--grid", verify_grid, "interior grid points per family");
    verify->add_option("--threshold", verify_threshold, "max relative error accepted");
    verify->add_option("--export-formulas", verify_export, "also write the formula tables as JSON");

    std::vector<const char*> argv;
    argv.push_back("bilinear-taylor");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());

        std::ofstream file;
        std::ostream* sink = &out;
        if (!output_path.empty()) {
            file.open(output_path);
            if (!file) throw std::domain_error("cannot open output file " + output_path);
            sink = &file;
        }

        if (moments->parsed()) cmd_moments(spec_args, format, *sink);
        if (acf1->parsed()) cmd_acf1(spec_args, format, *sink);
        if (kurtosis->parsed()) cmd_kurtosis(spec_args, *sink);
        if (region->parsed())
            cmd_region(spec_args.family, spec_args.alpha, region_grid, region_tol, region_source, *sink);
        if (sweep->parsed()) {
            if (spec_args.family.empty() && pareto_nus.empty()) {
                throw std::domain_error("sweep needs --family or --pareto-nus");
            }
            cmd_sweep(spec_args.family, pareto_nus, sweep_grid, *sink);
        }
        if (simulate->parsed()) cmd_simulate(spec_args, sim_lag, sim_n, sim_burn_in, sim_seed, *sink, err);
        if (table1->parsed()) cmd_table1(t1_seed, t1_reps, t1_nobs, t1_ci, t1_format, t1_beta, t1_family, t1_lags, *sink);
        if (verify->parsed()) cmd_verify(verify_grid, verify_threshold, verify_export, *sink, err);
        return 0;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const pole_error& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const degenerate_error& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const unresolved_bracket_error& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::overflow_error& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace bilinear::cli
