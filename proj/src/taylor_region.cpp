#include "bilinear/taylor_region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bilinear/errors.hpp"
#include "json.hpp"

namespace bilinear {

namespace {

struct Bracket {
    double root;
    double radius;
};

Bracket bisect(const RealFn& fn, double a, double b, bool a_positive, double tol) {
    double fa = fn(a);
    double fb = fn(b);
    if (std::fabs(fa) < 1e-14 && std::fabs(fb) < 1e-14) {
        throw unresolved_bracket_error("delta below 1e-14 at both bracket ends near r = " +
                                       std::to_string(a) + "; flat region, refine the grid");
    }
    while ((b - a) / 2.0 > tol) {
        const double mid = 0.5 * (a + b);
        if ((fn(mid) > 0.0) == a_positive) {
            a = mid;
        } else {
            b = mid;
        }
    }
    return {0.5 * (a + b), 0.5 * (b - a)};
}

}  // namespace

TaylorRegion find_regions(const RealFn& delta, const std::string& family, double r_max,
                          int grid_points, double tol) {
    if (grid_points < 1000) throw std::domain_error("find_regions requires grid_points >= 1000");
    if (!(tol > 0.0)) throw std::domain_error("find_regions requires tol > 0");
    if (!(r_max > 0.0)) throw std::domain_error("find_regions requires r_max > 0");

    const double eps0 = r_max * 1e-6;
    const double lo = eps0;
    const double hi = r_max - eps0;
    const int n = grid_points;

    std::vector<double> grid(n), value(n);
    for (int i = 0; i < n; ++i) {
        grid[i] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
        value[i] = delta(grid[i]);
    }

    // a certified root for every sign change between consecutive grid points
    std::vector<Bracket> roots;  // parallel to change_at
    std::vector<int> change_at;  // index i: sign change between i and i+1
    for (int i = 0; i + 1 < n; ++i) {
        if ((value[i] > 0.0) != (value[i + 1] > 0.0)) {
            roots.push_back(bisect(delta, grid[i], grid[i + 1], value[i] > 0.0, tol));
            change_at.push_back(i);
        }
    }

    TaylorRegion region{family, r_max, {}};
    int i = 0;
    while (i < n) {
        if (value[i] > 0.0) {
            int j = i;
            while (j + 1 < n && value[j + 1] > 0.0) ++j;  // run [i, j] positive
            TaylorInterval interval;
            if (i == 0) {
                interval.lo = {0.0, 0.0, true};
            } else {
                const auto k = std::lower_bound(change_at.begin(), change_at.end(), i - 1) -
                               change_at.begin();
                interval.lo = {roots[k].root, roots[k].radius, false};
            }
            if (j == n - 1) {
                interval.hi = {r_max, 0.0, true};
            } else {
                const auto k = std::lower_bound(change_at.begin(), change_at.end(), j) -
                               change_at.begin();
                interval.hi = {roots[k].root, roots[k].radius, false};
            }
            region.intervals.push_back(interval);
            i = j + 1;
        } else {
            ++i;
        }
    }
    return region;
}

TaylorRegion find_regions(const InnovationSpec& spec, int grid_points, double tol) {
    if (!spec.nonnegative()) {
        throw std::domain_error("taylor regions are defined for the non-negative families; "
                                "use the simulation study for symmetric laws");
    }
    const MomentVector mu = raw_moments(spec);
    const double edge = max_admissible_beta(mu);
    auto delta = [spec](double r) { return lag1_report(spec, ModelSpec{r, 1}).delta; };
    return find_regions(delta, spec.name(), edge, grid_points, tol);
}

TaylorRegion find_regions(reference::PolyFamily family, int grid_points, double tol) {
    auto delta = [family](double r) { return reference::delta_poly(family, r); };
    return find_regions(delta, reference::family_name(family), reference::r_max(family),
                        grid_points, tol);
}

std::vector<SweepRow> sweep_delta(const InnovationSpec& spec, int grid_points) {
    if (grid_points < 2) throw std::domain_error("sweep requires at least 2 grid points");
    const MomentVector mu = raw_moments(spec);
    const double edge = max_admissible_beta(mu);
    const double eps0 = edge * 1e-6;
    std::vector<SweepRow> rows;
    rows.reserve(grid_points);
    for (int i = 0; i < grid_points; ++i) {
        const double r = eps0 + (edge - 2.0 * eps0) * static_cast<double>(i) / (grid_points - 1);
        const Lag1Report rep = lag1_report(spec, ModelSpec{r, 1});
        rows.push_back({r, rep.delta, rep.excess_kurtosis});
    }
    return rows;
}

std::vector<ParetoSweepRow> sweep_pareto_shapes(const std::vector<double>& nus, int grid_points) {
    if (nus.empty()) throw std::domain_error("need at least one pareto shape");
    if (grid_points < 2) throw std::domain_error("sweep requires at least 2 grid points");
    double shared = std::numeric_limits<double>::infinity();
    for (double nu : nus) {
        const InnovationSpec spec = InnovationSpec::pareto(nu);
        shared = std::min(shared, max_admissible_beta(raw_moments(spec)));
    }
    const double eps0 = shared * 1e-6;
    std::vector<ParetoSweepRow> rows;
    rows.reserve(nus.size() * grid_points);
    for (double nu : nus) {
        const InnovationSpec spec = InnovationSpec::pareto(nu);
        for (int i = 0; i < grid_points; ++i) {
            const double r = eps0 + (shared - 2.0 * eps0) * static_cast<double>(i) / (grid_points - 1);
            const Lag1Report rep = lag1_report(spec, ModelSpec{r, 1});
            rows.push_back({nu, r, rep.delta, rep.excess_kurtosis});
        }
    }
    return rows;
}

std::string region_to_json(const TaylorRegion& region) {
    nlohmann::json out;
    out["family"] = region.family;
    out["domain"] = {{"lo", 0.0}, {"hi", region.r_max}};
    nlohmann::json intervals = nlohmann::json::array();
    for (const auto& iv : region.intervals) {
        intervals.push_back({{"lo", iv.lo.value},
                             {"hi", iv.hi.value},
                             {"lo_radius", iv.lo.radius},
                             {"hi_radius", iv.hi.radius}});
    }
    out["intervals"] = intervals;
    return out.dump(2);
}

}  // namespace bilinear
