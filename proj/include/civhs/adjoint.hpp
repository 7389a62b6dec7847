#ifndef CIVHS_ADJOINT_HPP
#define CIVHS_ADJOINT_HPP

#include <vector>
#include "civhs/curve.hpp"
#include "civhs/linalg.hpp"

namespace civhs::adjoint {

struct LinearSystem {
    int form_degree = 0;       // degree of the forms (d - 3 for adjoints)
    int ambient_dimension = 0;
    std::vector<exact::Expo> monomials;  // column order
    linalg::Mat condition_matrix;
    std::vector<exact::MultiPoly> basis;  // kernel, as forms in x,y,z

    int dimension() const { return static_cast<int>(basis.size()); }
};

struct NodalScheme {
    std::vector<curvekit::SingularityRecord> nodes;  // A1 records only
};

NodalScheme nodal_scheme(const curvekit::PlaneCurve& curve);

// monomial basis of degree-k forms, in deterministic (map) order
std::vector<exact::Expo> form_monomials(int k);

// Adjoint space: degree-(d-3) forms whose pullback to every branch vanishes
// to at least the branch's conductor exponent. Rows come from branch-series
// coefficient extraction; nodes without rational branch data contribute the
// equivalent point-evaluation row.
LinearSystem adjoint_space(const curvekit::PlaneCurve& curve);

// forms with A = A_x = A_y = 0 at every node, in each node's chart
LinearSystem double_vanishing_space(const curvekit::PlaneCurve& curve, const NodalScheme& scheme);

// kernel of the double-vanishing jet conditions inside a given system
int jet_kernel_dimension(const LinearSystem& system, const NodalScheme& scheme,
                         const curvekit::PlaneCurve& curve);

struct SpanCheck {
    int genus = 0;
    int adjoint_dimension = 0;
    int node_count = 0;
    bool nodes_ge_genus = false;
    int double_vanishing_dimension = 0;
    // rank of the chosen-branch residue functionals; -1 when unavailable
    int span_dimension = -1;
    // g minus the adjoint forms killed by full first-order vanishing at all
    // nodes (the scheme-theoretic side of the same count)
    int jet_span_dimension = 0;
    bool equivalence_asserted = false;  // the claimed "span full <=> dv = 0" applies (delta >= g)
    bool equivalence_holds = false;
    std::vector<std::string> witnesses;
};

SpanCheck residue_span_check(const curvekit::PlaneCurve& curve);

// t^1 coefficient of every basis form along one branch of a node, divided by
// the leading coefficient of the first nonvanishing partial along it. This is
// the raw linear functional the residue vectors are built from.
struct BranchFunctional {
    std::vector<Rat> coords;   // one per basis element
    Rat normalizer;
    int normalizer_partial;    // 0: F_x, 1: F_y (in the record's chart)
};

BranchFunctional branch_functional(const curvekit::PlaneCurve& curve,
                                   const curvekit::SingularityRecord& record, int branch_choice,
                                   const LinearSystem& system);

// pullback of a form to a branch in the record's chart
exact::TruncSeries pull_back_form(const exact::MultiPoly& form,
                                  const curvekit::SingularityRecord& record,
                                  const branches::BranchParam& branch);

}  // namespace civhs::adjoint

#endif
