#ifndef CIVHS_LINALG_HPP
#define CIVHS_LINALG_HPP

#include <vector>
#include "civhs/rational.hpp"

namespace civhs::linalg {

using Vec = std::vector<Rat>;
using Mat = std::vector<Vec>;  // row-major

// Fraction-free (Bareiss) elimination with full pivoting throughout.
// Deterministic: pivots are chosen by largest absolute value, ties broken by
// smallest (row, column).

int rank(const Mat& m);
Rat det(const Mat& m);

// Basis of { v : m v = 0 }, each vector normalized so its free coordinate is 1.
// ncols must be passed explicitly so empty condition matrices work.
std::vector<Vec> kernel_basis(const Mat& m, int ncols);

}  // namespace civhs::linalg

#endif
