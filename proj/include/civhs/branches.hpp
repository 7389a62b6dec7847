#ifndef CIVHS_BRANCHES_HPP
#define CIVHS_BRANCHES_HPP

#include <array>
#include <vector>
#include "civhs/multipoly.hpp"
#include "civhs/series.hpp"

namespace civhs::branches {

// Truncated parametrization of one local branch, centered at the origin of
// the working chart. One coordinate is frozen to an exact monomial c*t^q
// (q = ramification); the other carries the lifted tail. Substituting the
// pair into the local equation gives the zero series through the window.
struct BranchParam {
    std::vector<Rat> center;  // affine center in the chart (filled by callers)
    exact::TruncSeries x_series;
    exact::TruncSeries y_series;
    std::array<Rat, 2> tangent;  // primitive tangent direction (dx : dy)
    int ramification = 1;
};

// All branches of a square-free local equation f (2 variables, f(0,0) = 0),
// lifted so every series is valid through t^(order-1). Throws
// unsupported_error when a branch would need irrational coefficients.
std::vector<BranchParam> local_branches(const exact::MultiPoly& f, int order);

// ord_t of one branch's implicit equation along the other, computed both
// ways and checked equal. Branches must share a center.
int pairwise_intersection_multiplicity(const BranchParam& b1, const BranchParam& b2);

// delta invariant of a single branch (ramification <= 3 suffices for ADE)
int branch_delta(const BranchParam& b);

}  // namespace civhs::branches

#endif
