#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "civhs/errors.hpp"
#include "civhs/families.hpp"

using namespace civhs;
using curvekit::ProjPoint;
using families::FamilySpec;

namespace {

ProjPoint pt(long x, long y, long z) { return curvekit::make_point(Rat(x), Rat(y), Rat(z)); }

FamilySpec quartic_spec(int samples = 6) {
    FamilySpec spec;
    spec.degree = 4;
    spec.node_points = {pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1)};
    spec.sample_count = samples;
    spec.seed = 1;
    return spec;
}

}  // namespace

TEST_CASE("node-condition kernels have the stated dimensions") {
    CHECK(families::node_condition_kernel(quartic_spec()).size() == 6);  // 15 - 9

    FamilySpec cubic;
    cubic.degree = 3;
    cubic.node_points = {pt(0, 0, 1)};
    CHECK(families::node_condition_kernel(cubic).size() == 7);  // 10 - 3

    FamilySpec off_unit;  // conditions at a point with coordinates beyond 1
    off_unit.degree = 4;
    off_unit.node_points = {pt(2, 3, 1)};
    CHECK(families::node_condition_kernel(off_unit).size() == 12);
}

TEST_CASE("prescribed-node samples verify their nodes") {
    FamilySpec spec = quartic_spec();
    int resamples = 0;
    curvekit::PlaneCurve c = families::curve_with_prescribed_nodes(spec, 0, &resamples);
    CHECK(c.degree == 4);
    REQUIRE(c.singularities.size() == 3);
    for (const auto& rec : c.singularities) CHECK(rec.type.is_node());
    CHECK(curvekit::geometric_genus(c).geometric_genus == 0);
}

TEST_CASE("two prescribed nodes on a conic only admit the double line") {
    FamilySpec conic;
    conic.degree = 2;
    conic.node_points = {pt(0, 0, 1), pt(1, 0, 1)};
    conic.sample_count = 2;
    conic.seed = 1;
    conic.rejection_budget = 8;
    // the kernel is the squared line through the two points; every sample
    // fails the square-free check and is rejected
    CHECK(families::node_condition_kernel(conic).size() == 1);
    CHECK_THROWS_AS(families::curve_with_prescribed_nodes(conic, 0), error);
    families::FamilyScanResult scan = families::family_scan(conic);
    CHECK(scan.verified_count == 0);
    CHECK(scan.degenerate_count == 2);
    for (const auto& r : scan.samples)
        CHECK(r.rejection_reason.find("square-free") != std::string::npos);
}

TEST_CASE("family scans are deterministic given the seed") {
    FamilySpec spec = quartic_spec(4);
    families::FamilyScanResult a = families::family_scan(spec);
    families::FamilyScanResult b = families::family_scan(spec);
    REQUIRE(a.samples.size() == b.samples.size());
    for (size_t i = 0; i < a.samples.size(); ++i) {
        CHECK(a.samples[i].curve_hash == b.samples[i].curve_hash);
        CHECK(a.samples[i].node_span_dimension == b.samples[i].node_span_dimension);
    }
    CHECK(families::scan_csv(a) == families::scan_csv(b));
    FamilySpec other = spec;
    other.seed = 2;
    families::FamilyScanResult c = families::family_scan(other);
    bool any_differs = false;
    for (size_t i = 0; i < a.samples.size(); ++i)
        if (a.samples[i].curve_hash != c.samples[i].curve_hash) any_differs = true;
    CHECK(any_differs);
}

TEST_CASE("three-nodal quartics scan at full span") {
    FamilySpec spec = quartic_spec(6);
    families::FamilyScanResult scan = families::family_scan(spec);
    CHECK(scan.kernel_dimension == 6);
    CHECK(scan.verified_count > 0);
    for (const auto& r : scan.samples) {
        if (!r.verified) continue;
        CHECK(r.genus == 0);
        CHECK(r.adjoint_dimension == 0);
        CHECK(r.node_span_dimension == 0);  // genus zero: trivially full
        CHECK(r.double_vanishing_dimension == 0);
    }
    CHECK(scan.max_observed_span == 0);
    CHECK(scan.fraction_at_max == Rat(1));
    CHECK(scan.openness_probe_ran);
    CHECK(scan.openness_probe_held);
}

TEST_CASE("two-nodal quintics cannot attain the genus") {
    FamilySpec spec;
    spec.degree = 5;
    spec.node_points = {pt(0, 0, 1), pt(1, 0, 1)};
    spec.sample_count = 5;
    spec.seed = 3;
    families::FamilyScanResult scan = families::family_scan(spec);
    CHECK(scan.verified_count > 0);
    for (const auto& r : scan.samples) {
        if (!r.verified) continue;
        CHECK(r.genus == 4);
        int span = r.node_span_dimension >= 0 ? r.node_span_dimension : r.node_span_upper_bound;
        CHECK(span <= 2);
        CHECK(span < r.genus);
    }
}

TEST_CASE("adding a node point never increases the per-sample genus") {
    FamilySpec base;
    base.degree = 4;
    base.node_points = {pt(0, 0, 1)};
    base.sample_count = 3;
    base.seed = 5;
    FamilySpec more = base;
    more.node_points.push_back(pt(1, 1, 1));
    families::FamilyScanResult a = families::family_scan(base);
    families::FamilyScanResult b = families::family_scan(more);
    int ga = -1, gb = -1;
    for (const auto& r : a.samples)
        if (r.verified) ga = std::max(ga, r.genus);
    for (const auto& r : b.samples)
        if (r.verified) gb = std::max(gb, r.genus);
    REQUIRE(ga >= 0);
    REQUIRE(gb >= 0);
    CHECK(gb <= ga);
    CHECK(gb == ga - 1);  // exactly one extra verified node
}

TEST_CASE("the bundled ten-node sextic family pins its unique member") {
    FamilySpec spec;
    spec.degree = 6;
    spec.node_points = {pt(1, 1, 1),  pt(-1, 1, 1), pt(1, -1, 1), pt(-1, -1, 1), pt(0, 2, 1),
                        pt(0, -2, 1), pt(2, 0, 1),  pt(-2, 0, 1), pt(1, 2, 0),  pt(1, -2, 0)};
    spec.sample_count = 3;
    spec.seed = 1;
    families::FamilyScanResult scan = families::family_scan(spec);
    CHECK(scan.kernel_dimension == 1);
    CHECK(scan.verified_count == 3);
    for (const auto& r : scan.samples) {
        CHECK(r.genus == 0);
        CHECK(r.double_vanishing_dimension == 0);
        CHECK(r.node_span_dimension == 0);
    }
}
