#include "civhs/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace civhs::linalg {

namespace {

// Row-scale to integers. Row scaling changes neither rank nor kernel.
void clear_denominators(Mat& a) {
    for (auto& row : a) {
        mpz_class l(1);
        for (const auto& x : row)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
        if (l != 1)
            for (auto& x : row) { x *= Rat(l); x.canonicalize(); }
    }
}

struct Echelon {
    Mat a;                                  // integer entries, eliminated in place
    std::vector<std::pair<int, int>> pivots;  // (row, col) in elimination order
    int sign = 1;
};

// Bareiss forward elimination. After step k every entry is, up to sign, a
// (k+1)-minor of the scaled input, so the divisions below are exact.
Echelon eliminate(Mat a) {
    clear_denominators(a);
    Echelon e;
    int rows = static_cast<int>(a.size());
    int cols = rows ? static_cast<int>(a[0].size()) : 0;
    std::vector<bool> col_done(static_cast<size_t>(cols), false);
    Rat prev(1);
    int r = 0;
    while (r < rows) {
        int pi = -1, pj = -1;
        for (int i = r; i < rows; ++i)
            for (int j = 0; j < cols; ++j) {
                if (col_done[static_cast<size_t>(j)] || sgn(a[static_cast<size_t>(i)][static_cast<size_t>(j)]) == 0) continue;
                if (pi < 0 ||
                    mpz_cmpabs(a[static_cast<size_t>(i)][static_cast<size_t>(j)].get_num().get_mpz_t(),
                               a[static_cast<size_t>(pi)][static_cast<size_t>(pj)].get_num().get_mpz_t()) > 0) {
                    pi = i; pj = j;
                }
            }
        if (pi < 0) break;
        if (pi != r) { std::swap(a[static_cast<size_t>(pi)], a[static_cast<size_t>(r)]); e.sign = -e.sign; }
        e.pivots.emplace_back(r, pj);
        col_done[static_cast<size_t>(pj)] = true;
        const Rat piv = a[static_cast<size_t>(r)][static_cast<size_t>(pj)];
        for (int i = r + 1; i < rows; ++i) {
            Rat lead = a[static_cast<size_t>(i)][static_cast<size_t>(pj)];
            for (int j = 0; j < cols; ++j) {
                if (j == pj) { a[static_cast<size_t>(i)][static_cast<size_t>(j)] = 0; continue; }
                Rat v = piv * a[static_cast<size_t>(i)][static_cast<size_t>(j)] - lead * a[static_cast<size_t>(r)][static_cast<size_t>(j)];
                v /= prev;
                v.canonicalize();
                a[static_cast<size_t>(i)][static_cast<size_t>(j)] = v;
            }
        }
        prev = piv;
        ++r;
    }
    e.a = std::move(a);
    return e;
}

}  // namespace

int rank(const Mat& m) {
    if (m.empty()) return 0;
    return static_cast<int>(eliminate(m).pivots.size());
}

Rat det(const Mat& m) {
    int n = static_cast<int>(m.size());
    if (n == 0) return Rat(1);
    for (const auto& row : m)
        if (static_cast<int>(row.size()) != n) throw std::invalid_argument("det of non-square matrix");
    // Bareiss keeps the scaled determinant as the last pivot; undo row scaling.
    Mat a = m;
    Rat scale(1);
    for (auto& row : a) {
        mpz_class l(1);
        for (const auto& x : row)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
        if (l != 1) {
            for (auto& x : row) { x *= Rat(l); x.canonicalize(); }
            scale *= Rat(l);
        }
    }
    Echelon e = eliminate(a);
    if (static_cast<int>(e.pivots.size()) < n) return Rat(0);
    Rat d = e.a[static_cast<size_t>(n - 1)][static_cast<size_t>(e.pivots.back().second)];
    d *= e.sign;
    // column permutation parity
    std::vector<int> perm;
    perm.reserve(e.pivots.size());
    for (auto& [r, c] : e.pivots) perm.push_back(c);
    int swaps = 0;
    for (size_t i = 0; i < perm.size(); ++i)
        for (size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) ++swaps;
    if (swaps % 2) d = -d;
    d /= scale;
    d.canonicalize();
    return d;
}

std::vector<Vec> kernel_basis(const Mat& m, int ncols) {
    for (const auto& row : m)
        if (static_cast<int>(row.size()) != ncols)
            throw std::invalid_argument("kernel_basis: ragged matrix");
    Echelon e = eliminate(m);
    std::vector<bool> is_pivot_col(static_cast<size_t>(ncols), false);
    for (auto& [r, c] : e.pivots) is_pivot_col[static_cast<size_t>(c)] = true;

    std::vector<Vec> basis;
    for (int free_col = 0; free_col < ncols; ++free_col) {
        if (is_pivot_col[static_cast<size_t>(free_col)]) continue;
        Vec v(static_cast<size_t>(ncols), Rat(0));
        v[static_cast<size_t>(free_col)] = 1;
        // back-substitute through pivot rows in reverse elimination order
        for (int k = static_cast<int>(e.pivots.size()) - 1; k >= 0; --k) {
            auto [row, col] = e.pivots[static_cast<size_t>(k)];
            Rat s(0);
            for (int j = 0; j < ncols; ++j) {
                if (j == col) continue;
                const Rat& a = e.a[static_cast<size_t>(row)][static_cast<size_t>(j)];
                if (sgn(a) != 0 && sgn(v[static_cast<size_t>(j)]) != 0) s += a * v[static_cast<size_t>(j)];
            }
            if (sgn(s) == 0) { v[static_cast<size_t>(col)] = 0; continue; }
            Rat val = -s / e.a[static_cast<size_t>(row)][static_cast<size_t>(col)];
            val.canonicalize();
            v[static_cast<size_t>(col)] = val;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace civhs::linalg
