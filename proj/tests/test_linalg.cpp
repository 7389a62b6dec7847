#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "civhs/linalg.hpp"
#include "civhs/rng.hpp"

using namespace civhs;
using linalg::Mat;
using linalg::Vec;

namespace {

// plain rational Gauss elimination, kept independent of the Bareiss path
int naive_rank(Mat m) {
    size_t rows = m.size();
    if (rows == 0) return 0;
    size_t cols = m[0].size();
    int rank = 0;
    for (size_t c = 0; c < cols && static_cast<size_t>(rank) < rows; ++c) {
        size_t pivot = rows;
        for (size_t r = static_cast<size_t>(rank); r < rows; ++r)
            if (sgn(m[r][c]) != 0) { pivot = r; break; }
        if (pivot == rows) continue;
        std::swap(m[static_cast<size_t>(rank)], m[pivot]);
        for (size_t r = 0; r < rows; ++r) {
            if (r == static_cast<size_t>(rank) || sgn(m[r][c]) == 0) continue;
            Rat f = m[r][c] / m[static_cast<size_t>(rank)][c];
            for (size_t k = 0; k < cols; ++k) m[r][k] -= f * m[static_cast<size_t>(rank)][k];
        }
        ++rank;
    }
    return rank;
}

Mat random_matrix(Rng& rng, int rows, int cols, int zero_chance) {
    Mat m(static_cast<size_t>(rows), Vec(static_cast<size_t>(cols), Rat(0)));
    for (auto& row : m)
        for (auto& x : row)
            if (rng.below(static_cast<uint64_t>(zero_chance)) != 0) x = rng.rat_in_box(9, 4);
    return m;
}

}  // namespace

TEST_CASE("rank agrees with a plain elimination oracle") {
    Rng rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        Mat m = random_matrix(rng, 2 + static_cast<int>(rng.below(6)),
                              2 + static_cast<int>(rng.below(6)), 3);
        CHECK(linalg::rank(m) == naive_rank(m));
    }
}

TEST_CASE("kernel vectors annihilate the matrix") {
    Rng rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        int rows = 2 + static_cast<int>(rng.below(5));
        int cols = 2 + static_cast<int>(rng.below(6));
        Mat m = random_matrix(rng, rows, cols, 3);
        auto basis = linalg::kernel_basis(m, cols);
        CHECK(static_cast<int>(basis.size()) == cols - linalg::rank(m));
        for (const auto& v : basis)
            for (const auto& row : m) {
                Rat s(0);
                for (size_t i = 0; i < v.size(); ++i) s += row[i] * v[i];
                CHECK(sgn(s) == 0);
            }
        Mat b;
        for (const auto& v : basis) b.push_back(v);
        if (!basis.empty()) CHECK(linalg::rank(b) == static_cast<int>(basis.size()));
    }
}

TEST_CASE("determinants multiply and detect singularity") {
    Mat id3{{Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0)}, {Rat(0), Rat(0), Rat(1)}};
    CHECK(linalg::det(id3) == 1);
    Mat m{{rat(1, 2), Rat(3)}, {Rat(1), Rat(8)}};
    CHECK(linalg::det(m) == Rat(1));
    Mat sing{{Rat(1), Rat(2)}, {Rat(2), Rat(4)}};
    CHECK(linalg::det(sing) == 0);
    Rng rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        Mat a = random_matrix(rng, 3, 3, 4), b = random_matrix(rng, 3, 3, 4);
        Mat ab(3, Vec(3, Rat(0)));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k)
                    ab[static_cast<size_t>(i)][static_cast<size_t>(j)] +=
                        a[static_cast<size_t>(i)][static_cast<size_t>(k)] *
                        b[static_cast<size_t>(k)][static_cast<size_t>(j)];
        CHECK(linalg::det(ab) == linalg::det(a) * linalg::det(b));
    }
}

TEST_CASE("empty condition matrices give the full kernel") {
    auto basis = linalg::kernel_basis({}, 4);
    CHECK(basis.size() == 4);
}
