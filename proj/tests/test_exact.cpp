#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include "civhs/multipoly.hpp"
#include "civhs/rng.hpp"
#include "civhs/series.hpp"

using namespace civhs;
using exact::DiffForm;
using exact::MultiPoly;
using exact::TruncSeries;

namespace {

TruncSeries series_of(std::map<int, long> coeffs, int trunc) {
    int lo = trunc - 1;
    for (auto& [e, c] : coeffs) lo = std::min(lo, e);
    std::vector<Rat> cs(static_cast<size_t>(trunc - lo), Rat(0));
    for (auto& [e, c] : coeffs) cs[static_cast<size_t>(e - lo)] = Rat(c);
    return TruncSeries::from_coeffs(std::move(cs), lo, trunc);
}

// independent convolution oracle over all stored coefficient pairs
std::map<int, Rat> convolve(const TruncSeries& a, const TruncSeries& b) {
    std::map<int, Rat> out;
    for (int i = a.min_exponent(); i < a.truncation_order(); ++i)
        for (int j = b.min_exponent(); j < b.truncation_order(); ++j)
            out[i + j] += a.coeff(i) * b.coeff(j);
    return out;
}

TruncSeries random_series(Rng& rng, int min_exp, int trunc) {
    std::vector<Rat> cs;
    for (int e = min_exp; e < trunc; ++e) cs.push_back(rng.rat_in_box(6, 3));
    return TruncSeries::from_coeffs(std::move(cs), min_exp, trunc);
}

MultiPoly random_poly(Rng& rng, int nvars, int deg) {
    MultiPoly p(nvars);
    for (int i = 0; i <= deg; ++i)
        for (int j = 0; i + j <= deg; ++j) {
            if (rng.below(3) == 0) continue;
            exact::Expo e{i, j, 0};
            if (nvars == 3) e = {i, j, static_cast<int>(rng.below(2))};
            p = p + MultiPoly::monomial(rng.rat_in_box(5, 2), e, nvars);
        }
    return p;
}

}  // namespace

TEST_CASE("scalar construction stays canonical") {
    Rat a = rat(2, 6);
    CHECK(a == rat(1, 3));
    CHECK(a.get_den() == 2 + 1);
    CHECK(rat(-4, -8) == rat(1, 2));
    CHECK(rat_from_string("-7/21") == rat(-1, 3));
    Rat root;
    CHECK(rational_square_root(rat(9, 4), root));
    CHECK(root == rat(3, 2));
    CHECK(!rational_square_root(rat(2), root));
    CHECK(!rational_square_root(rat(-9), root));
}

TEST_CASE("series product matches the stated examples") {
    // (t^-1 + 1) * t = 1 + t
    TruncSeries a = series_of({{-1, 1}, {0, 1}}, 6);
    TruncSeries t = series_of({{1, 1}}, 6);
    TruncSeries prod = exact::series_mul(a, t);
    CHECK(prod.coeff(0) == 1);
    CHECK(prod.coeff(1) == 1);
    CHECK(prod.coeff(2) == 0);

    // identity
    TruncSeries one = series_of({{0, 1}}, 6);
    TruncSeries same = exact::series_mul(a, one);
    CHECK(same.coeff(-1) == 1);
    CHECK(same.coeff(0) == 1);

    // (t^-2 + 2 t^-1) * (3 t^-1) = 3 t^-3 + 6 t^-2, against the convolution oracle
    TruncSeries u = series_of({{-2, 1}, {-1, 2}}, 5);
    TruncSeries v = series_of({{-1, 3}}, 5);
    TruncSeries w = exact::series_mul(u, v);
    CHECK(w.coeff(-3) == 3);
    CHECK(w.coeff(-2) == 6);
    for (auto& [e, c] : convolve(u, v))
        if (e < w.truncation_order()) CHECK(w.coeff(e) == c);
}

TEST_CASE("series product windows shrink conservatively") {
    TruncSeries a = series_of({{-1, 1}, {0, 1}}, 3);
    TruncSeries b = series_of({{2, 5}}, 4);
    TruncSeries p = exact::series_mul(a, b);
    // unknown tail of b (>= 4) meets a's valuation -1 at exponent 3
    CHECK(p.truncation_order() == 3);
    CHECK(p.coeff(1) == 5);
    CHECK(p.coeff(2) == 5);
    CHECK_THROWS_AS(p.coeff(3), precision_error);
}

TEST_CASE("series residue reads the t^-1 coefficient") {
    CHECK(exact::series_residue({series_of({{-2, 1}, {-1, 3}, {0, 5}}, 4)}) == 3);
    for (int m = 2; m <= 5; ++m)
        CHECK(exact::series_residue({series_of({{-m, 1}}, 3)}) == 0);
    // df for f = t^-3 + 7 t^2
    TruncSeries f = series_of({{-3, 1}, {2, 7}}, 9);
    CHECK(exact::series_residue({f.derivative()}) == 0);
    // window excluding -1 is an error
    TruncSeries bad = TruncSeries::from_coeffs({Rat(1)}, -4, -2);
    CHECK_THROWS_AS(exact::series_residue({bad}), precision_error);
}

TEST_CASE("polynomial parser round-trips the expected forms") {
    MultiPoly f = exact::parse_poly("y^2*z - x^3");
    CHECK(f.coeff({0, 2, 1}) == 1);
    CHECK(f.coeff({3, 0, 0}) == -1);
    CHECK(f.is_homogeneous());
    MultiPoly g = exact::parse_poly("1/2*x*y - 3*z^2 + x^2");
    CHECK(g.coeff({1, 1, 0}) == rat(1, 2));
    CHECK(g.coeff({0, 0, 2}) == -3);
    CHECK_THROWS_AS(exact::parse_poly("x + "), parse_error);
    CHECK_THROWS_AS(exact::parse_poly("w^2"), parse_error);
}

TEST_CASE("substitute_series on the stated examples") {
    int w = 12;
    TruncSeries t2 = series_of({{2, 1}}, w), t3 = series_of({{3, 1}}, w);
    MultiPoly f = exact::parse_poly("y^2 - x^3", 2);
    TruncSeries r = exact::substitute_series(f, t2, t3);
    CHECK(r.is_zero_on_window());
    CHECK(r.truncation_order() >= 6);

    MultiPoly x_only = exact::parse_poly("x", 2);
    CHECK(exact::substitute_series(x_only, t2, t3).coeff(2) == 1);

    MultiPoly xy = exact::parse_poly("x*y", 2);
    TruncSeries t_plus = series_of({{1, 1}, {2, 1}}, w);
    TruncSeries t_only = series_of({{1, 1}}, w);
    TruncSeries s = exact::substitute_series(xy, t_only, t_plus);
    // term-by-term oracle: t * (t + t^2)
    for (auto& [e, c] : convolve(t_only, t_plus))
        if (e < s.truncation_order()) CHECK(s.coeff(e) == c);
    CHECK(s.coeff(2) == 1);
    CHECK(s.coeff(3) == 1);
}

TEST_CASE("poly_partials") {
    auto [fx, fy] = exact::poly_partials(exact::parse_poly("x*y", 2));
    CHECK(fx == exact::parse_poly("y", 2));
    CHECK(fy == exact::parse_poly("x", 2));
    auto [gx, gy] = exact::poly_partials(exact::parse_poly("y^2 - x^3", 2));
    CHECK(gx == exact::parse_poly("-3*x^2", 2));
    CHECK(gy == exact::parse_poly("2*y", 2));
    auto [hx, hy] = exact::poly_partials(exact::parse_poly("x^3 + y^4", 2));
    CHECK(hx == exact::parse_poly("3*x^2", 2));
    CHECK(hy == exact::parse_poly("4*y^3", 2));
}

TEST_CASE("ring axioms hold exactly on randomized inputs") {
    Rng rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        MultiPoly a = random_poly(rng, 2, 3), b = random_poly(rng, 2, 3), c = random_poly(rng, 2, 2);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        Rat x = rng.rat_in_box(7, 3), y = rng.rat_in_box(7, 3), z = rng.rat_in_box(7, 3);
        CHECK((x + y) + z == x + (y + z));
        CHECK(x * (y + z) == x * y + x * z);
    }
}

TEST_CASE("residue of a product is bilinear") {
    Rng rng(17);
    for (int trial = 0; trial < 25; ++trial) {
        TruncSeries a = random_series(rng, -2, 5), a2 = random_series(rng, -2, 5);
        TruncSeries b = random_series(rng, -2, 5);
        Rat alpha = rng.rat_in_box(5, 2), beta = rng.rat_in_box(5, 2);
        Rat lhs = exact::series_residue({exact::series_mul(a * alpha + a2 * beta, b)});
        Rat rhs = alpha * exact::series_residue({exact::series_mul(a, b)}) +
                  beta * exact::series_residue({exact::series_mul(a2, b)});
        CHECK(lhs == rhs);
    }
}

TEST_CASE("residues of exact differentials vanish") {
    Rng rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        TruncSeries f = random_series(rng, -2 - static_cast<int>(rng.below(3)), 6);
        CHECK(exact::series_residue({f.derivative()}) == 0);
    }
}

TEST_CASE("substitution is a ring homomorphism through the window") {
    Rng rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        MultiPoly f = random_poly(rng, 2, 2), g = random_poly(rng, 2, 2);
        TruncSeries xs = random_series(rng, 1, 9), ys = random_series(rng, 1, 9);
        TruncSeries lhs = exact::substitute_series(f * g, xs, ys);
        TruncSeries rhs =
            exact::series_mul(exact::substitute_series(f, xs, ys), exact::substitute_series(g, xs, ys));
        int window = std::min(lhs.truncation_order(), rhs.truncation_order());
        for (int e = std::min(lhs.min_exponent(), rhs.min_exponent()); e < window; ++e)
            CHECK(lhs.coeff(e) == rhs.coeff(e));
    }
}
