#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include "civhs/adjoint.hpp"
#include "civhs/errors.hpp"
#include "civhs/rng.hpp"

using namespace civhs;
using curvekit::PlaneCurve;
using curvekit::ProjPoint;
using exact::MultiPoly;

namespace {

PlaneCurve analyzed(const std::string& text, const std::vector<ProjPoint>& points) {
    PlaneCurve c = curvekit::make_curve(exact::parse_poly(text, 3));
    for (const auto& p : points) c.singularities.push_back(curvekit::classify_ade(c, p));
    return c;
}

ProjPoint pt(long x, long y, long z) { return curvekit::make_point(Rat(x), Rat(y), Rat(z)); }

// independent kernel-dimension oracle (plain elimination on the rows)
int nullity_oracle(const linalg::Mat& m, int cols) {
    linalg::Mat a = m;
    int rank = 0;
    for (int c = 0; c < cols && rank < static_cast<int>(a.size()); ++c) {
        int piv = -1;
        for (int r = rank; r < static_cast<int>(a.size()); ++r)
            if (sgn(a[static_cast<size_t>(r)][static_cast<size_t>(c)]) != 0) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(a[static_cast<size_t>(rank)], a[static_cast<size_t>(piv)]);
        for (int r = 0; r < static_cast<int>(a.size()); ++r) {
            if (r == rank || sgn(a[static_cast<size_t>(r)][static_cast<size_t>(c)]) == 0) continue;
            Rat f = a[static_cast<size_t>(r)][static_cast<size_t>(c)] /
                    a[static_cast<size_t>(rank)][static_cast<size_t>(c)];
            for (int k = 0; k < cols; ++k)
                a[static_cast<size_t>(r)][static_cast<size_t>(k)] -=
                    f * a[static_cast<size_t>(rank)][static_cast<size_t>(k)];
        }
        ++rank;
    }
    return cols - rank;
}

const char* kQuartic3Nodes =
    "2*x^2*y^2 + 2*y^2*z^2 + 2*x^2*z^2 - 5*x^2*y*z - 5*x*y^2*z - 5*x*y*z^2";
const char* kSextic10Nodes =
    "896*x^6 - 2112*x^4*y^2 - 7987*x^4*z^2 + 888*x^2*y^4 - 4266*x^2*y^2*z^2 + 20888*x^2*z^4 "
    "- 104*y^6 + 13*y^4*z^2 + 4888*y^2*z^4 - 13104*z^6";

}  // namespace

TEST_CASE("adjoint dimensions on the stated low-degree examples") {
    // nodal cubic: degree-0 forms through the node
    PlaneCurve cubic = analyzed("y^2*z - x^3 - x^2*z", {pt(0, 0, 1)});
    adjoint::LinearSystem a0 = adjoint::adjoint_space(cubic);
    CHECK(a0.ambient_dimension == 1);
    CHECK(a0.dimension() == 0);

    // one-nodal quartic: lines through the node, dimension 2 = genus
    PlaneCurve quartic = analyzed("x*y*z^2 + x^4 + y^4", {pt(0, 0, 1)});
    adjoint::LinearSystem a1 = adjoint::adjoint_space(quartic);
    CHECK(a1.ambient_dimension == 3);
    CHECK(a1.dimension() == 2);
    CHECK(nullity_oracle(a1.condition_matrix, a1.ambient_dimension) == 2);
    // every basis line passes through the node
    for (const auto& b : a1.basis) CHECK(sgn(b.evaluate({Rat(0), Rat(0), Rat(1)})) == 0);

    // cuspidal cubic: order >= 2 along (t^2, t^3) kills the constants
    PlaneCurve cusp = analyzed("y^2*z - x^3", {pt(0, 0, 1)});
    CHECK(adjoint::adjoint_space(cusp).dimension() == 0);
}

TEST_CASE("adjoint dimension equals the genus across the catalog") {
    struct Row {
        const char* text;
        std::vector<ProjPoint> pts;
    };
    std::vector<Row> rows;
    rows.push_back({"y^2*z^2 + y^3*z - x^4", {pt(0, 0, 1)}});                       // tacnodal quartic
    rows.push_back({kQuartic3Nodes, {pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1)}});
    rows.push_back({"16*y^5 + 16*y^2*z^3 - 16*x^5 + 23*x^4*z + 2*x^3*z^2 - 9*x^2*z^3",
                    {pt(0, 0, 1), pt(1, 0, 1)}});                                    // 2-nodal quintic
    rows.push_back({"x^3*z^4 + x^7 + y^4*z^3 + y^7", {pt(0, 0, 1)}});                // E6 septic
    for (const auto& row : rows) {
        CAPTURE(row.text);
        PlaneCurve c = analyzed(row.text, row.pts);
        adjoint::LinearSystem adj = adjoint::adjoint_space(c);
        CHECK(adj.dimension() == curvekit::geometric_genus(c).geometric_genus);
        // conductor vanishing holds for every basis form along every branch
        for (const auto& rec : c.singularities) {
            for (size_t bi = 0; bi < rec.branch_data.size(); ++bi)
                for (const auto& b : adj.basis) {
                    exact::TruncSeries s = adjoint::pull_back_form(b, rec, rec.branch_data[bi]);
                    int c_i = rec.conductor_exponents[bi];
                    bool ok = s.is_zero_on_window() || s.valuation() >= c_i;
                    CHECK(ok);
                }
        }
    }
}

TEST_CASE("double vanishing spaces on the stated examples") {
    // quartic with 3 non-collinear nodes: lines triple-conditioned at 3 points
    PlaneCurve q3 = analyzed(kQuartic3Nodes, {pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1)});
    adjoint::NodalScheme s3 = adjoint::nodal_scheme(q3);
    CHECK(adjoint::double_vanishing_space(q3, s3).dimension() == 0);

    // conics with 3 jet conditions at one node: 6 - 3 = 3
    PlaneCurve q5 = analyzed("16*y^5 + 16*y^2*z^3 - 16*x^5 + 23*x^4*z + 2*x^3*z^2 - 9*x^2*z^3",
                             {pt(0, 0, 1), pt(1, 0, 1)});
    adjoint::NodalScheme one;
    one.nodes.push_back(q5.singularities[0]);
    adjoint::LinearSystem dv1 = adjoint::double_vanishing_space(q5, one);
    CHECK(dv1.ambient_dimension == 6);
    CHECK(dv1.dimension() == 3);
    CHECK(nullity_oracle(dv1.condition_matrix, dv1.ambient_dimension) == 3);

    // ten generic nodes impose independent double conditions on cubics
    Rng rng(41);
    for (int trial = 0; trial < 3; ++trial) {
        adjoint::NodalScheme ten;
        for (int k = 0; k < 10; ++k) {
            curvekit::SingularityRecord rec;
            rec.type = {'A', 1};
            rec.point = curvekit::make_point(rng.rat_in_box(9, 4), rng.rat_in_box(9, 4), Rat(1));
            rec.chart = 2;
            rec.center = {rec.point.h[0], rec.point.h[1]};
            ten.nodes.push_back(rec);
        }
        PlaneCurve dummy;
        dummy.degree = 6;
        dummy.form = exact::parse_poly(kSextic10Nodes, 3);
        CHECK(adjoint::double_vanishing_space(dummy, ten).dimension() == 0);
    }
}

TEST_CASE("double vanishing forms satisfy the adjoint conditions on nodal curves") {
    PlaneCurve sextic = curvekit::make_curve(exact::parse_poly(kSextic10Nodes, 3));
    bool complete = true;
    for (const auto& p : curvekit::find_rational_singular_points(sextic.form, &complete))
        sextic.singularities.push_back(curvekit::classify_ade(sextic, p));
    REQUIRE(sextic.singularities.size() == 10);
    adjoint::LinearSystem adj = adjoint::adjoint_space(sextic);
    adjoint::NodalScheme scheme = adjoint::nodal_scheme(sextic);
    adjoint::LinearSystem dv = adjoint::double_vanishing_space(sextic, scheme);
    // containment of kernels: every dv form satisfies the adjoint rows
    for (const auto& b : dv.basis)
        for (const auto& rec : sextic.singularities) {
            MultiPoly local = b.substitute_value(rec.chart, Rat(1)).drop_variable(rec.chart)
                                  .translated(rec.center);
            CHECK(sgn(local.evaluate({Rat(0), Rat(0)})) == 0);
        }
    curvekit::GenusData g = curvekit::geometric_genus(sextic);
    CHECK(adj.dimension() == g.geometric_genus);  // genus 0
    CHECK(dv.dimension() == 0);
}

TEST_CASE("condition matrices are coordinate-covariant") {
    std::vector<std::vector<Rat>> m{{Rat(1), Rat(0), Rat(1)},
                                    {Rat(1), Rat(1), Rat(0)},
                                    {Rat(0), Rat(1), Rat(1)}};
    PlaneCurve q1 = analyzed("x*y*z^2 + x^4 + y^4", {pt(0, 0, 1)});
    PlaneCurve moved = curvekit::make_curve(curvekit::transform_form(q1.form, m));
    ProjPoint mp = curvekit::apply_matrix(curvekit::invert3(m), pt(0, 0, 1));
    moved.singularities.push_back(curvekit::classify_ade(moved, mp));
    CHECK(adjoint::adjoint_space(moved).dimension() == adjoint::adjoint_space(q1).dimension());
    CHECK(adjoint::double_vanishing_space(moved, adjoint::nodal_scheme(moved)).dimension() ==
          adjoint::double_vanishing_space(q1, adjoint::nodal_scheme(q1)).dimension());
}

TEST_CASE("residue span check over the stated examples") {
    PlaneCurve q3 = analyzed(kQuartic3Nodes, {pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1)});
    adjoint::SpanCheck c3 = adjoint::residue_span_check(q3);
    CHECK(c3.genus == 0);
    CHECK(c3.nodes_ge_genus);
    CHECK(c3.span_dimension == 0);
    CHECK(c3.double_vanishing_dimension == 0);
    CHECK(c3.equivalence_asserted);
    CHECK(c3.equivalence_holds);

    PlaneCurve q5 = analyzed("16*y^5 + 16*y^2*z^3 - 16*x^5 + 23*x^4*z + 2*x^3*z^2 - 9*x^2*z^3",
                             {pt(0, 0, 1), pt(1, 0, 1)});
    adjoint::SpanCheck c5 = adjoint::residue_span_check(q5);
    CHECK(c5.genus == 4);
    CHECK(!c5.nodes_ge_genus);
    CHECK(c5.span_dimension <= 2);
    CHECK(c5.span_dimension >= 0);
}

TEST_CASE("branch functionals annihilate doubly vanishing adjoints") {
    PlaneCurve q5 = analyzed("16*y^5 + 16*y^2*z^3 - 16*x^5 + 23*x^4*z + 2*x^3*z^2 - 9*x^2*z^3",
                             {pt(0, 0, 1), pt(1, 0, 1)});
    adjoint::LinearSystem adj = adjoint::adjoint_space(q5);
    REQUIRE(adj.dimension() == 4);
    adjoint::BranchFunctional f = adjoint::branch_functional(q5, q5.singularities[0], 0, adj);
    // forms with a full first-order zero at the node are in the kernel
    adjoint::NodalScheme both = adjoint::nodal_scheme(q5);
    for (const auto& rec : both.nodes) {
        (void)rec;
    }
    // build the jet conditions at node 0 inside the adjoint basis
    linalg::Mat rows;
    for (int cond = 0; cond < 3; ++cond) {
        linalg::Vec row;
        for (const auto& b : adj.basis) {
            MultiPoly local = b.substitute_value(2, Rat(1)).drop_variable(2);
            if (cond > 0) local = local.partial(cond - 1);
            row.push_back(local.evaluate({Rat(0), Rat(0)}));
        }
        rows.push_back(std::move(row));
    }
    for (const auto& v : linalg::kernel_basis(rows, adj.dimension())) {
        Rat s(0);
        for (size_t i = 0; i < v.size(); ++i) s += f.coords[i] * v[i];
        CHECK(sgn(s) == 0);
    }
}
