#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "bilinear/errors.hpp"
#include "bilinear/taylor_region.hpp"
#include "json.hpp"

using namespace bilinear;
using reference::PolyFamily;

TEST_CASE("uniform region: single interval up to the stationarity edge") {
    const TaylorRegion region = find_regions(parse_family("uniform0a"), 100000, 5e-9);
    REQUIRE(region.intervals.size() == 1);
    const auto& iv = region.intervals[0];
    CHECK_FALSE(iv.lo.at_boundary);
    CHECK(iv.lo.radius <= 5e-9);
    // high-precision root of the delta function
    CHECK(std::fabs(iv.lo.value - 1.18689874263300562) <= 5e-9);
    CHECK(iv.hi.at_boundary);
    CHECK(iv.hi.value == doctest::Approx(std::pow(5.0, 0.25)).epsilon(1e-14));
    CHECK(iv.hi.radius == 0.0);
}

TEST_CASE("exponential region: two intervals, left one starting at the boundary") {
    const TaylorRegion region = find_regions(parse_family("exp"), 100000, 5e-8);
    REQUIRE(region.intervals.size() == 2);
    CHECK(region.intervals[0].lo.at_boundary);
    CHECK(region.intervals[0].lo.value == 0.0);
    CHECK(std::fabs(region.intervals[0].hi.value - 0.06955658152108100) <= 5e-8);
    CHECK(std::fabs(region.intervals[1].lo.value - 0.14378788480897299) <= 5e-8);
    CHECK(region.intervals[1].hi.at_boundary);
    CHECK(region.intervals[1].hi.value == doctest::Approx(std::pow(24.0, -0.25)).epsilon(1e-14));
}

TEST_CASE("pareto regions cover the whole domain") {
    for (const char* name : {"pareto12", "pareto9"}) {
        const TaylorRegion region = find_regions(parse_family(name), 20000, 1e-7);
        REQUIRE(region.intervals.size() == 1);
        CHECK(region.intervals[0].lo.at_boundary);
        CHECK(region.intervals[0].hi.at_boundary);
    }
}

TEST_CASE("generic and printed delta sources give matching endpoints") {
    const double tol = 5e-9;
    const TaylorRegion generic = find_regions(parse_family("uniform0a"), 100000, tol);
    const TaylorRegion printed = find_regions(PolyFamily::uniform, 100000, tol);
    REQUIRE(generic.intervals.size() == printed.intervals.size());
    CHECK(std::fabs(generic.intervals[0].lo.value - printed.intervals[0].lo.value) < 10.0 * tol);

    const double tol_e = 5e-8;
    const TaylorRegion ge = find_regions(parse_family("exp"), 100000, tol_e);
    const TaylorRegion pe = find_regions(PolyFamily::exponential, 100000, tol_e);
    REQUIRE(ge.intervals.size() == 2);
    REQUIRE(pe.intervals.size() == 2);
    CHECK(std::fabs(ge.intervals[0].hi.value - pe.intervals[0].hi.value) < 10.0 * tol_e);
    CHECK(std::fabs(ge.intervals[1].lo.value - pe.intervals[1].lo.value) < 10.0 * tol_e);
}

TEST_CASE("bisection certificate: delta changes sign across every interior endpoint") {
    auto delta = [](double r) { return reference::delta_poly(PolyFamily::exponential, r); };
    const TaylorRegion region = find_regions(PolyFamily::exponential, 50000, 5e-8);
    for (const auto& iv : region.intervals) {
        for (const auto& ep : {iv.lo, iv.hi}) {
            if (ep.at_boundary) continue;
            const double h = std::max(ep.radius, 1e-12);
            CHECK(std::signbit(delta(ep.value - h)) != std::signbit(delta(ep.value + h)));
        }
    }
}

TEST_CASE("custom delta with known roots") {
    // (r - 0.2)(r - 0.5)(r - 0.8) on (0, 1): positive on (0.2, 0.5) and (0.8, 1)
    auto cubic = [](double r) { return (r - 0.2) * (r - 0.5) * (r - 0.8); };
    const TaylorRegion region = find_regions(cubic, "cubic", 1.0, 10000, 1e-10);
    REQUIRE(region.intervals.size() == 2);
    CHECK(region.intervals[0].lo.value == doctest::Approx(0.2).epsilon(1e-9));
    CHECK(region.intervals[0].hi.value == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(region.intervals[1].lo.value == doctest::Approx(0.8).epsilon(1e-9));
    CHECK(region.intervals[1].hi.at_boundary);
    // disjoint and sorted
    CHECK(region.intervals[0].hi.value < region.intervals[1].lo.value);
}

TEST_CASE("unresolved flat bracket raises") {
    auto flat = [](double r) { return r < 0.5 ? 5e-15 : -5e-15; };
    CHECK_THROWS_AS(find_regions(flat, "flat", 1.0, 2000, 1e-9), unresolved_bracket_error);
}

TEST_CASE("argument validation") {
    auto one = [](double) { return 1.0; };
    CHECK_THROWS_AS(find_regions(one, "x", 1.0, 999, 1e-9), std::domain_error);
    CHECK_THROWS_AS(find_regions(one, "x", 1.0, 10000, 0.0), std::domain_error);
    CHECK_THROWS_AS(find_regions(parse_family("normal"), 10000, 1e-9), std::domain_error);
}

TEST_CASE("sweep_delta: grid size, delta continuity at the left edge") {
    const auto rows = sweep_delta(parse_family("exp"), 500);
    CHECK(rows.size() == 500);
    CHECK(std::fabs(rows.front().delta) < 1e-3);  // delta(r -> 0) -> 0
    CHECK(rows.front().r > 0.0);
    CHECK(rows.back().r < std::pow(24.0, -0.25));
    // kurtosis column matches the analytic kurtosis
    const Lag1Report rep = lag1_report(parse_family("exp"), ModelSpec{rows[100].r, 1});
    CHECK(rows[100].kurtosis == doctest::Approx(rep.excess_kurtosis).epsilon(1e-12));
}

TEST_CASE("uniform sweep crosses zero exactly once") {
    const auto rows = sweep_delta(parse_family("uniform0a"), 2000);
    int crossings = 0;
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        if ((rows[i].delta > 0.0) != (rows[i + 1].delta > 0.0)) ++crossings;
    }
    CHECK(crossings == 1);
}

TEST_CASE("pareto shape ordering at r = 0.4") {
    // away from the small-r band where the nu = 9 and nu = 10 curves cross
    std::vector<double> deltas;
    for (double nu : {9.0, 10.0, 20.0, 50.0, 100.0}) {
        deltas.push_back(lag1_report(InnovationSpec::pareto(nu), ModelSpec{0.4, 1}).delta);
    }
    for (std::size_t i = 0; i + 1 < deltas.size(); ++i) CHECK(deltas[i] > deltas[i + 1]);
    CHECK(deltas.back() > 0.0);
}

TEST_CASE("pareto shape sweep shares one grid") {
    const auto rows = sweep_pareto_shapes({9.0, 10.0, 100.0}, 50);
    REQUIRE(rows.size() == 150);
    // grouped by shape, each block over the same grid
    for (int i = 0; i < 50; ++i) {
        CHECK(rows[i].nu == 9.0);
        CHECK(rows[i].r == rows[50 + i].r);
        CHECK(rows[i].r == rows[100 + i].r);
    }
    // shared domain is the nu = 9 stationarity interval
    CHECK(rows[49].r < std::pow(5.0 / 9.0, 0.25));
    // delta at r = 0.4-ish is far apart for nu = 9 vs nu = 100
    CHECK(rows[20].delta > rows[120].delta);
}

TEST_CASE("region JSON shape") {
    const TaylorRegion region = find_regions(parse_family("exp"), 10000, 1e-6);
    const auto parsed = nlohmann::json::parse(region_to_json(region));
    CHECK(parsed["family"] == "exp");
    CHECK(parsed["domain"]["lo"] == 0.0);
    REQUIRE(parsed["intervals"].is_array());
    REQUIRE(parsed["intervals"].size() == 2);
    for (const char* key : {"lo", "hi", "lo_radius", "hi_radius"}) {
        CHECK(parsed["intervals"][0].contains(key));
    }
}
