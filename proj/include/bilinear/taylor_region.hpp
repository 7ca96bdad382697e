#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bilinear/lag1.hpp"
#include "bilinear/reference_polynomials.hpp"

namespace bilinear {

struct RegionEndpoint {
    double value;
    double radius;     // certified bisection half-width; 0 at a domain boundary
    bool at_boundary;  // open domain edge rather than a certified sign change
};

struct TaylorInterval {
    RegionEndpoint lo, hi;
};

// Sub-intervals of the open domain (0, r_max) where delta(r) > 0, disjoint and
// sorted; every interior endpoint carries a certified sign-change bracket.
struct TaylorRegion {
    std::string family;
    double r_max;
    std::vector<TaylorInterval> intervals;
};

using RealFn = std::function<double(double)>;

// Scans delta on a uniform grid over (eps0, r_max - eps0), eps0 = r_max * 1e-6,
// brackets every sign change and bisects each bracket to half-width <= tol.
TaylorRegion find_regions(const RealFn& delta, const std::string& family, double r_max,
                          int grid_points = 100000, double tol = 5e-9);

// delta from the generic lag-1 analytics (alpha = 1, beta = r).
TaylorRegion find_regions(const InnovationSpec& spec, int grid_points = 100000, double tol = 5e-9);

// delta from the published rational functions.
TaylorRegion find_regions(reference::PolyFamily family, int grid_points = 100000, double tol = 5e-9);

struct SweepRow {
    double r;
    double delta;
    double kurtosis;
};

std::vector<SweepRow> sweep_delta(const InnovationSpec& spec, int grid_points);

// Shared-grid sweep across Pareto shapes; rows grouped by shape, then r.
struct ParetoSweepRow {
    double nu;
    double r;
    double delta;
    double kurtosis;
};

std::vector<ParetoSweepRow> sweep_pareto_shapes(const std::vector<double>& nus, int grid_points);

// {family, domain, intervals: [{lo, hi, lo_radius, hi_radius}]}
std::string region_to_json(const TaylorRegion& region);

}  // namespace bilinear
