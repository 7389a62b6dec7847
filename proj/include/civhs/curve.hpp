#ifndef CIVHS_CURVE_HPP
#define CIVHS_CURVE_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>
#include "civhs/branches.hpp"
#include "civhs/multipoly.hpp"

namespace civhs::curvekit {

struct AdeType {
    char series = 'A';  // 'A', 'D', or 'E'
    int index = 1;

    std::string name() const { return std::string(1, series) + std::to_string(index); }
    bool is_node() const { return series == 'A' && index == 1; }
    bool is_cusp() const { return series == 'A' && index == 2; }
};

AdeType parse_ade_type(const std::string& name);

struct ProjPoint {
    std::array<Rat, 3> h;  // canonical: last nonzero coordinate scaled to 1

    bool operator==(const ProjPoint& o) const { return h == o.h; }
    bool operator<(const ProjPoint& o) const;
    std::string to_string() const;
};

ProjPoint make_point(const Rat& x, const Rat& y, const Rat& z);

struct SingularityRecord {
    ProjPoint point;
    AdeType type;
    int milnor = 0;
    int delta = 0;
    int branch_count = 0;
    std::vector<int> conductor_exponents;  // aligned with branch_data when present
    int chart = 2;                          // dehomogenization coordinate
    std::vector<Rat> center;                // affine coordinates in that chart
    bool tangents_rational = false;
    std::vector<branches::BranchParam> branch_data;  // empty when lifting was skipped
};

struct PlaneCurve {
    int degree = 0;
    exact::MultiPoly form{3};
    std::vector<SingularityRecord> singularities;
};

struct GenusData {
    int arithmetic_genus = 0;
    int geometric_genus = 0;
    int node_count = 0;
};

int degree_cap();  // default 12, overridable via CURVEIVHS_DEGREE_CAP

// delta and branch count fixed by the ADE type
void ade_invariants(const AdeType& t, int* delta, int* branch_count);

// CLI-configurable override for the branch lifting order (0 = use default)
int branch_order_override();
void set_branch_order_override(int order);

// Validates homogeneity, square-freeness, and the degree cap.
PlaneCurve make_curve(const exact::MultiPoly& form);

bool verify_singular_point(const PlaneCurve& curve, const ProjPoint& p);

// chart index by largest absolute coordinate (ties toward z)
int chart_of(const ProjPoint& p);

// dehomogenized and recentered local equation at p; chart/center returned
// through the record fields over out parameters
exact::MultiPoly local_equation(const PlaneCurve& curve, const ProjPoint& p, int* chart,
                                std::vector<Rat>* center);

// Milnor number at a verified singular point, by stabilized local-algebra
// dimensions. Throws on non-isolated singularities.
int milnor_number(const PlaneCurve& curve, const ProjPoint& p);

// Full local classification; throws unsupported_error on non-ADE points.
SingularityRecord classify_ade(const PlaneCurve& curve, const ProjPoint& p);

// order used when lifting branch parametrizations for a record
int default_branch_order(int delta);

// curve-level branch access (wraps branches::local_branches)
std::vector<branches::BranchParam> branch_parametrizations(const PlaneCurve& curve,
                                                           const ProjPoint& p, int order);

GenusData geometric_genus(const PlaneCurve& curve);

struct SurfaceReport {
    long arithmetic_genus = 0;
    long geometric_genus = 0;
    int node_count = 0;
    int delta_total = 0;
    bool nodes_at_least_genus = false;
    bool has_ade_beyond_cusp = false;
    bool example_inequality = false;  // node_count < 3e - 1 + g
};

SurfaceReport surface_numeric_report(int e, int m, const std::vector<SingularityRecord>& sings);

// Rational singular points found by resultant elimination across the three
// charts. complete=false when a rational-root search hit its budget.
std::vector<ProjPoint> find_rational_singular_points(const exact::MultiPoly& form, bool* complete);

// Exact certificate that Sing(curve) over the complex numbers is contained
// in `declared` (resultant gcds factor through declared coordinates).
bool certify_singular_support(const exact::MultiPoly& form, const std::vector<ProjPoint>& declared);

// F(M x) together with the inverse point map, for covariance tests
exact::MultiPoly transform_form(const exact::MultiPoly& form,
                                const std::vector<std::vector<Rat>>& m);
ProjPoint apply_matrix(const std::vector<std::vector<Rat>>& m, const ProjPoint& p);
std::vector<std::vector<Rat>> invert3(const std::vector<std::vector<Rat>>& m);

}  // namespace civhs::curvekit

#endif
