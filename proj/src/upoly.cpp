#include "civhs/upoly.hpp"

#include <algorithm>
#include <map>
#include "civhs/errors.hpp"
#include "civhs/linalg.hpp"

namespace civhs::upoly {

int deg(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

UPoly trim(UPoly p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
    return p;
}

UPoly add(const UPoly& a, const UPoly& b) {
    UPoly r(std::max(a.size(), b.size()), Rat(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return trim(std::move(r));
}

UPoly sub(const UPoly& a, const UPoly& b) {
    UPoly r(std::max(a.size(), b.size()), Rat(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return trim(std::move(r));
}

UPoly mul(const UPoly& a, const UPoly& b) {
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return trim(std::move(r));
}

UPoly scale(const UPoly& a, const Rat& c) {
    if (sgn(c) == 0) return {};
    UPoly r = a;
    for (auto& x : r) x *= c;
    return r;
}

UPoly derivative(const UPoly& a) {
    if (a.size() <= 1) return {};
    UPoly r(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * static_cast<long>(i);
    return trim(std::move(r));
}

Rat eval(const UPoly& a, const Rat& x) {
    Rat r(0);
    for (size_t i = a.size(); i-- > 0;) r = r * x + a[i];
    return r;
}

UPoly rem(UPoly a, const UPoly& b) {
    if (b.empty()) throw std::invalid_argument("remainder by zero polynomial");
    while (deg(a) >= deg(b)) {
        Rat q = a.back() / b.back();
        int shift = deg(a) - deg(b);
        for (size_t i = 0; i < b.size(); ++i)
            a[static_cast<size_t>(shift) + i] -= q * b[i];
        a = trim(std::move(a));
        if (a.empty()) break;
    }
    return a;
}

bool divides(const UPoly& a, const UPoly& b) {
    if (a.empty()) return b.empty();
    if (b.empty()) return true;
    return rem(b, a).empty();
}

UPoly quotient_exact(const UPoly& b, const UPoly& a) {
    if (a.empty()) throw std::invalid_argument("division by zero polynomial");
    UPoly r = b, q(b.size(), Rat(0));
    while (deg(r) >= deg(a)) {
        Rat c = r.back() / a.back();
        int shift = deg(r) - deg(a);
        q[static_cast<size_t>(shift)] = c;
        for (size_t i = 0; i < a.size(); ++i)
            r[static_cast<size_t>(shift) + i] -= c * a[i];
        r = trim(std::move(r));
        if (r.empty()) break;
    }
    if (!r.empty()) throw std::invalid_argument("quotient_exact: not divisible");
    return trim(std::move(q));
}

namespace {

// integer coefficient vector with content stripped
std::vector<mpz_class> primitive_int(const UPoly& p) {
    mpz_class l(1);
    for (const auto& c : p) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<mpz_class> z;
    z.reserve(p.size());
    mpz_class g(0);
    for (const auto& c : p) {
        Rat s = c * Rat(l);
        s.canonicalize();
        z.push_back(s.get_num());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.back().get_mpz_t());
    }
    if (g > 1)
        for (auto& c : z) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    return z;
}

void strip_content(std::vector<mpz_class>& z) {
    mpz_class g(0);
    for (const auto& c : z) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g > 1)
        for (auto& c : z) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

// pseudo-remainder of integer polynomials (a power of lc(b) times a, mod b)
std::vector<mpz_class> int_prem(std::vector<mpz_class> a, const std::vector<mpz_class>& b) {
    int db = static_cast<int>(b.size()) - 1;
    const mpz_class lcb = b.back();
    while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
        int k = static_cast<int>(a.size()) - 1;
        mpz_class lead = a.back();
        for (auto& c : a) c *= lcb;
        for (int i = 0; i <= db; ++i)
            a[static_cast<size_t>(k - db + i)] -= lead * b[static_cast<size_t>(i)];
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
    return a;
}

}  // namespace

// primitive PRS; plain rational Euclid would blow up on the large inputs the
// resultant scans produce
UPoly monic_gcd(UPoly a, UPoly b) {
    a = trim(std::move(a));
    b = trim(std::move(b));
    if (a.empty()) b = trim(std::move(b));
    if (a.empty() && b.empty()) return {};
    if (a.empty()) std::swap(a, b);
    if (b.empty()) {
        Rat lc = a.back();
        for (auto& c : a) c /= lc;
        return a;
    }
    std::vector<mpz_class> za = primitive_int(a), zb = primitive_int(b);
    if (za.size() < zb.size()) std::swap(za, zb);
    while (!zb.empty()) {
        std::vector<mpz_class> r = int_prem(za, zb);
        strip_content(r);
        za = std::move(zb);
        zb = std::move(r);
    }
    UPoly g;
    g.reserve(za.size());
    for (const auto& c : za) g.push_back(Rat(c));
    Rat lc = g.back();
    for (auto& c : g) { c /= lc; c.canonicalize(); }
    return g;
}

Rat resultant(UPoly a, UPoly b) {
    a = trim(std::move(a));
    b = trim(std::move(b));
    int m = deg(a), n = deg(b);
    if (m < 0 || n < 0) {
        // zero polynomial: resultant vanishes unless both are constants
        return (m == 0 || n == 0) ? Rat(0) : Rat(0);
    }
    if (m == 0) {
        Rat r(1);
        for (int i = 0; i < n; ++i) r *= a[0];
        return r;
    }
    if (n == 0) {
        Rat r(1);
        for (int i = 0; i < m; ++i) r *= b[0];
        return r;
    }
    // Sylvester determinant via the fraction-free elimination
    linalg::Mat s(static_cast<size_t>(m + n), linalg::Vec(static_cast<size_t>(m + n), Rat(0)));
    for (int row = 0; row < n; ++row)
        for (int i = 0; i <= m; ++i)
            s[static_cast<size_t>(row)][static_cast<size_t>(row + i)] = a[static_cast<size_t>(m - i)];
    for (int row = 0; row < m; ++row)
        for (int i = 0; i <= n; ++i)
            s[static_cast<size_t>(n + row)][static_cast<size_t>(row + i)] = b[static_cast<size_t>(n - i)];
    return linalg::det(s);
}

bool is_square_free(const UPoly& a) {
    if (deg(a) <= 1) return true;
    return deg(monic_gcd(a, derivative(a))) == 0;
}

namespace {

// trial division then Pollard rho; factors may be left composite when the
// budget runs out (reported through `complete`)
void factor_into(mpz_class n, std::map<mpz_class, int>& out, bool& complete) {
    if (n < 0) n = -n;
    if (n <= 1) return;
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p))) {
            out[p]++;
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(p));
        }
    }
    mpz_class d(17);
    while (d * d <= n && d < 100000) {
        while (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) {
            out[d]++;
            mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
        }
        d += 2;
    }
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 30)) { out[n]++; return; }
    // Pollard rho
    std::vector<mpz_class> stack{n};
    int budget = 64;
    gmp_randstate_t st;
    gmp_randinit_mt(st);
    gmp_randseed_ui(st, 0x5eedULL);
    while (!stack.empty()) {
        mpz_class m = stack.back();
        stack.pop_back();
        if (m == 1) continue;
        if (mpz_probab_prime_p(m.get_mpz_t(), 30)) { out[m]++; continue; }
        if (budget-- <= 0) { out[m]++; complete = false; continue; }
        mpz_class x, y, c, g(1);
        mpz_urandomm(x.get_mpz_t(), st, m.get_mpz_t());
        mpz_urandomm(c.get_mpz_t(), st, m.get_mpz_t());
        c += 1;
        y = x;
        int steps = 0;
        while (g == 1 && steps < 1 << 20) {
            x = (x * x + c) % m;
            y = (y * y + c) % m;
            y = (y * y + c) % m;
            mpz_class diff = x - y;
            if (diff < 0) diff = -diff;
            if (diff == 0) break;
            mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), m.get_mpz_t());
            ++steps;
        }
        if (g == 1 || g == m) { stack.push_back(m); budget -= 4; continue; }
        stack.push_back(g);
        stack.push_back(m / g);
    }
    gmp_randclear(st);
}

void enumerate_divisors(const std::map<mpz_class, int>& factors, std::vector<mpz_class>& out,
                        bool& complete, size_t cap) {
    out = {mpz_class(1)};
    for (const auto& [p, e] : factors) {
        size_t base = out.size();
        mpz_class pk(1);
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < base; ++i) {
                if (out.size() >= cap) { complete = false; return; }
                out.push_back(out[i] * pk);
            }
        }
    }
}

}  // namespace

std::vector<Rat> rational_roots(const UPoly& p, bool* complete_out) {
    bool complete = true;
    std::vector<Rat> roots;
    UPoly q = trim(p);
    if (q.empty()) throw std::invalid_argument("rational_roots of the zero polynomial");
    // integer-clear
    mpz_class l(1);
    for (const auto& c : q) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<mpz_class> z;
    z.reserve(q.size());
    for (const auto& c : q) {
        Rat s = c * Rat(l);
        s.canonicalize();
        z.push_back(s.get_num());
    }
    size_t lo = 0;
    while (lo < z.size() && z[lo] == 0) ++lo;
    if (lo > 0) roots.push_back(Rat(0));
    if (lo + 1 >= z.size()) {
        if (complete_out) *complete_out = complete;
        return roots;
    }
    std::map<mpz_class, int> fc, fl;
    factor_into(z[lo], fc, complete);
    factor_into(z.back(), fl, complete);
    std::vector<mpz_class> num_divs, den_divs;
    enumerate_divisors(fc, num_divs, complete, 4096);
    enumerate_divisors(fl, den_divs, complete, 4096);
    UPoly stripped(q.begin() + static_cast<long>(lo), q.end());
    for (const auto& n : num_divs)
        for (const auto& d : den_divs) {
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
            if (g != 1) continue;
            for (int s : {1, -1}) {
                Rat cand = rat_from_mpz(s * n, d);
                if (sgn(eval(stripped, cand)) == 0) roots.push_back(cand);
            }
        }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    if (complete_out) *complete_out = complete;
    return roots;
}

UPoly coeff_poly(const exact::MultiPoly& f, int var, int j) {
    if (f.nvars() != 2) throw input_error("coeff_poly expects 2 variables");
    int other = 1 - var;
    UPoly r;
    for (const auto& [e, c] : f.terms()) {
        if (e[static_cast<size_t>(var)] != j) continue;
        size_t k = static_cast<size_t>(e[static_cast<size_t>(other)]);
        if (r.size() <= k) r.resize(k + 1, Rat(0));
        r[k] = c;
    }
    return trim(std::move(r));
}

UPoly specialize(const exact::MultiPoly& f, int var, const Rat& value) {
    if (f.nvars() != 2) throw input_error("specialize expects 2 variables");
    int other = 1 - var;
    UPoly r;
    for (const auto& [e, c] : f.terms()) {
        Rat coeff = c;
        for (int k = 0; k < e[static_cast<size_t>(var)]; ++k) coeff *= value;
        size_t d = static_cast<size_t>(e[static_cast<size_t>(other)]);
        if (r.size() <= d) r.resize(d + 1, Rat(0));
        r[d] += coeff;
    }
    return trim(std::move(r));
}

UPoly bivariate_resultant(const exact::MultiPoly& f, const exact::MultiPoly& g, int var) {
    int other = 1 - var;
    int dyf = f.degree_in(var), dyg = g.degree_in(var);
    if (dyf == 0 || dyg == 0) {
        // resultant degenerates to a power
        if (dyf == 0) {
            UPoly base = coeff_poly(f, var, 0);
            UPoly r = {Rat(1)};
            for (int i = 0; i < dyg; ++i) r = mul(r, base);
            return r;
        }
        UPoly base = coeff_poly(g, var, 0);
        UPoly r = {Rat(1)};
        for (int i = 0; i < dyf; ++i) r = mul(r, base);
        return r;
    }
    int bound = std::min(dyf * g.degree_in(other) + dyg * f.degree_in(other),
                         f.total_degree() * g.total_degree());
    UPoly lcf = coeff_poly(f, var, dyf), lcg = coeff_poly(g, var, dyg);
    std::vector<Rat> xs;
    std::vector<Rat> ys;
    long trial = 0;
    while (static_cast<int>(xs.size()) < bound + 1) {
        Rat x0 = (trial % 2 == 0) ? Rat(trial / 2) : Rat(-(trial / 2 + 1));
        ++trial;
        if (trial > 8L * (bound + 4)) throw error("bivariate_resultant: interpolation points exhausted");
        if (sgn(eval(lcf, x0)) == 0 || sgn(eval(lcg, x0)) == 0) continue;
        xs.push_back(x0);
        ys.push_back(resultant(specialize(f, other, x0), specialize(g, other, x0)));
    }
    // Newton's divided differences
    std::vector<Rat> coef = ys;
    for (size_t k = 1; k < xs.size(); ++k)
        for (size_t i = xs.size(); i-- > k;)
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - k]);
    UPoly r = {coef.back()};
    for (size_t i = xs.size() - 1; i-- > 0;) {
        // r = r*(x - xs[i]) + coef[i]
        UPoly shifted = mul(r, UPoly{-xs[i], Rat(1)});
        r = add(shifted, UPoly{coef[i]});
    }
    return trim(std::move(r));
}

bool is_square_free_bivariate(const exact::MultiPoly& f) {
    if (f.is_zero()) return false;
    // content in y (gcd of y-coefficients, polynomials in x)
    int dy = f.degree_in(1);
    UPoly cont;
    for (int j = 0; j <= dy; ++j) {
        UPoly cj = coeff_poly(f, 1, j);
        if (cj.empty()) continue;
        cont = cont.empty() ? monic_gcd(cj, cj) : monic_gcd(cont, cj);
        if (deg(cont) == 0) break;
    }
    if (deg(cont) > 0 && !is_square_free(cont)) return false;
    if (dy == 0) return is_square_free(coeff_poly(f, 1, 0));
    // primitive part: divide every y-coefficient by the content
    exact::MultiPoly pp(2);
    if (deg(cont) > 0) {
        for (int j = 0; j <= dy; ++j) {
            UPoly cj = coeff_poly(f, 1, j);
            if (cj.empty()) continue;
            UPoly qj = quotient_exact(cj, cont);
            for (size_t i = 0; i < qj.size(); ++i)
                if (sgn(qj[i]) != 0)
                    pp = pp + exact::MultiPoly::monomial(qj[i], {static_cast<int>(i), j, 0}, 2);
        }
    } else {
        pp = f;
    }
    if (pp.degree_in(1) == 0) return true;
    // pp primitive: square-free iff Res_y(pp, pp_y) != 0; a single nonzero
    // specialization certifies nonvanishing
    exact::MultiPoly ppy = pp.partial(1);
    UPoly lc = coeff_poly(pp, 1, pp.degree_in(1));
    UPoly lcy = ppy.is_zero() ? UPoly{} : coeff_poly(ppy, 1, ppy.degree_in(1));
    if (ppy.is_zero()) return false;
    int bound = pp.degree_in(1) * ppy.degree_in(0) + ppy.degree_in(1) * pp.degree_in(0);
    long checked = 0, trial = 0;
    while (checked < bound + 1) {
        Rat x0 = (trial % 2 == 0) ? Rat(trial / 2) : Rat(-(trial / 2 + 1));
        ++trial;
        if (trial > 8L * (bound + 4)) throw error("square-free check: points exhausted");
        if (sgn(eval(lc, x0)) == 0) continue;
        UPoly s = specialize(pp, 0, x0);
        UPoly sy = specialize(ppy, 0, x0);
        if (deg(sy) != ppy.degree_in(1)) continue;
        Rat r = resultant(s, sy);
        if (sgn(r) != 0) return true;
        ++checked;
    }
    return false;  // resultant identically zero
}

}  // namespace civhs::upoly
