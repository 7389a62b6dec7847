#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include "civhs/branches.hpp"
#include "civhs/errors.hpp"

using namespace civhs;
using branches::BranchParam;
using exact::MultiPoly;
using exact::TruncSeries;

namespace {

std::vector<BranchParam> branches_of(const std::string& f_text, int order = 14) {
    return branches::local_branches(exact::parse_poly(f_text, 2), order);
}

bool annihilates(const std::string& f_text, const BranchParam& b) {
    MultiPoly f = exact::parse_poly(f_text, 2);
    return exact::substitute_series(f, b.x_series, b.y_series).is_zero_on_window();
}

const BranchParam* find_tangent(const std::vector<BranchParam>& bs, long tx, long ty) {
    for (const auto& b : bs) {
        // compare as projective directions
        if (sgn(b.tangent[0] * ty - b.tangent[1] * tx) == 0) return &b;
    }
    return nullptr;
}

BranchParam make_branch(std::vector<std::pair<int, long>> xc, std::vector<std::pair<int, long>> yc,
                        int ram, int window = 16) {
    auto build = [&](const std::vector<std::pair<int, long>>& cs) {
        TruncSeries s = TruncSeries::zero(window);
        for (auto& [e, c] : cs) s = s + TruncSeries::monomial(Rat(c), e, window);
        return s;
    };
    BranchParam b;
    b.center = {Rat(0), Rat(0)};
    b.x_series = build(xc);
    b.y_series = build(yc);
    b.ramification = ram;
    return b;
}

}  // namespace

TEST_CASE("node with a higher-order term splits into the axis branch and a graph") {
    auto bs = branches_of("x*y + x^3");
    REQUIRE(bs.size() == 2);
    const BranchParam* vertical = find_tangent(bs, 0, 1);
    const BranchParam* graph = find_tangent(bs, 1, 0);
    REQUIRE(vertical != nullptr);
    REQUIRE(graph != nullptr);
    CHECK(vertical->x_series.is_zero_on_window());
    CHECK(vertical->y_series.coeff(1) == 1);
    // x*(y + x^2) = 0: the second branch is exactly y = -x^2
    CHECK(graph->y_series.coeff(2) == -1);
    CHECK(graph->y_series.coeff(3) == 0);
    CHECK(graph->ramification == 1);
    for (const auto& b : bs) CHECK(annihilates("x*y + x^3", b));
}

TEST_CASE("cusp parametrization") {
    auto bs = branches_of("y^2 - x^3");
    REQUIRE(bs.size() == 1);
    CHECK(bs[0].ramification == 2);
    CHECK(annihilates("y^2 - x^3", bs[0]));
    // gauge-normalized to (t^2, t^3) up to the t -> -t conjugation
    CHECK(bs[0].x_series.coeff(2) == 1);
    Rat c3 = bs[0].y_series.coeff(3);
    CHECK((c3 == 1 || c3 == -1));
    CHECK(branches::branch_delta(bs[0]) == 1);
}

TEST_CASE("exact node splits into the two axes") {
    auto bs = branches_of("x*y");
    REQUIRE(bs.size() == 2);
    CHECK(find_tangent(bs, 1, 0) != nullptr);
    CHECK(find_tangent(bs, 0, 1) != nullptr);
    for (const auto& b : bs) CHECK(b.ramification == 1);
}

TEST_CASE("branch counts across the ADE catalog") {
    struct Row {
        const char* poly;
        int branches;
    };
    const Row rows[] = {
        {"x*y", 2},          {"y^2 - x^3", 1},     {"y^2 - x^4", 2},  {"y^2 - x^5", 1},
        {"y^2 - x^6", 2},    {"x^3 - x*y^2", 3},   {"x^2*y + y^4", 2}, {"x^3 + y^4", 1},
        {"x^3 + x*y^3", 2},  {"x^3 + y^5", 1},
    };
    for (const Row& r : rows) {
        auto bs = branches_of(r.poly);
        CHECK_MESSAGE(static_cast<int>(bs.size()) == r.branches, r.poly);
        for (const auto& b : bs) CHECK_MESSAGE(annihilates(r.poly, b), r.poly);
    }
}

TEST_CASE("per-branch delta invariants") {
    CHECK(branches::branch_delta(branches_of("y^2 - x^5")[0]) == 2);   // <2,5>
    CHECK(branches::branch_delta(branches_of("x^3 + y^4")[0]) == 3);   // <3,4>
    CHECK(branches::branch_delta(branches_of("x^3 + y^5")[0]) == 4);   // <3,5>
    for (const auto& b : branches_of("y^2 - x^4")) CHECK(branches::branch_delta(b) == 0);
}

TEST_CASE("irrational tangents are rejected with guidance") {
    CHECK_THROWS_AS(branches_of("y^2 - 2*x^4"), unsupported_error);
    CHECK_THROWS_AS(branches_of("x^2 + y^2"), unsupported_error);
}

TEST_CASE("pairwise intersection multiplicities") {
    BranchParam xaxis = make_branch({{1, 1}}, {}, 1);
    BranchParam yaxis = make_branch({}, {{1, 1}}, 1);
    CHECK(branches::pairwise_intersection_multiplicity(xaxis, yaxis) == 1);

    BranchParam up = make_branch({{1, 1}}, {{2, 1}}, 1);
    BranchParam down = make_branch({{1, 1}}, {{2, -1}}, 1);
    CHECK(branches::pairwise_intersection_multiplicity(up, down) == 2);

    CHECK_THROWS_AS(branches::pairwise_intersection_multiplicity(xaxis, xaxis), input_error);

    // smooth line against a ramified branch: ord of x^2 + y^3 along (t, 0)
    auto d5 = branches_of("x^2*y + y^4");
    REQUIRE(d5.size() == 2);
    const BranchParam* smooth = d5[0].ramification == 1 ? &d5[0] : &d5[1];
    const BranchParam* cuspb = d5[0].ramification == 2 ? &d5[0] : &d5[1];
    REQUIRE(smooth->ramification == 1);
    REQUIRE(cuspb->ramification == 2);
    CHECK(branches::pairwise_intersection_multiplicity(*smooth, *cuspb) == 2);
}

TEST_CASE("conductor ingredients for the tacnode") {
    auto bs = branches_of("y^2 - x^4");
    REQUIRE(bs.size() == 2);
    CHECK(branches::pairwise_intersection_multiplicity(bs[0], bs[1]) == 2);
    // c_i = 2*0 + 2 on each branch, summing to 2*delta = 4
    CHECK(branches::branch_delta(bs[0]) + branches::branch_delta(bs[1]) == 0);
}

TEST_CASE("deep tangency needs the full window") {
    // branches y = x^3 +- x^5-like contact through an A5 model
    auto bs = branches_of("y^2 - x^6", 16);
    REQUIRE(bs.size() == 2);
    CHECK(branches::pairwise_intersection_multiplicity(bs[0], bs[1]) == 3);
}
