#include "civhs/branches.hpp"

#include <algorithm>
#include <numeric>
#include "civhs/errors.hpp"
#include "civhs/upoly.hpp"

namespace civhs::branches {

using exact::MultiPoly;
using exact::TruncSeries;

namespace {

constexpr int kLiftMargin = 32;

bool divisible_by_var(const MultiPoly& f, int var) {
    if (f.is_zero()) return false;
    for (const auto& [e, c] : f.terms())
        if (e[static_cast<size_t>(var)] == 0) return false;
    return true;
}

MultiPoly divide_by_var(const MultiPoly& f, int var) {
    MultiPoly g(f.nvars());
    for (const auto& [e, c] : f.terms()) {
        exact::Expo d = e;
        d[static_cast<size_t>(var)] -= 1;
        g.set_coeff(d, c);
    }
    return g;
}

// y := c*x^b + y, used when an edge root has multiplicity >= 2
MultiPoly substitute_y_shift(const MultiPoly& f, const Rat& c, int b) {
    MultiPoly x = MultiPoly::variable(0, 2), y = MultiPoly::variable(1, 2);
    MultiPoly xb = MultiPoly::constant(c, 2);
    for (int k = 0; k < b; ++k) xb = xb * x;
    MultiPoly repl = xb + y;
    MultiPoly acc(2);
    for (const auto& [e, coeff] : f.terms()) {
        MultiPoly term = MultiPoly::constant(coeff, 2);
        for (int k = 0; k < e[0]; ++k) term = term * x;
        for (int k = 0; k < e[1]; ++k) term = term * repl;
        acc = acc + term;
    }
    return acc;
}

struct Edge {
    int a, b;  // primitive inner normal: t-weight of x is a, of y is b
    std::vector<std::pair<int, int>> points;  // support points on the edge
};

// Compact edges of the local Newton polygon, assuming x and y both divide
// no term pattern away (x !| f, y !| f means endpoints on both axes exist).
std::vector<Edge> newton_edges(const MultiPoly& f) {
    std::vector<std::pair<int, int>> pts;
    for (const auto& [e, c] : f.terms()) pts.emplace_back(e[0], e[1]);
    std::sort(pts.begin(), pts.end());
    // staircase minima: smallest j per i, dominated points dropped
    std::vector<std::pair<int, int>> minimal;
    for (const auto& p : pts) {
        if (!minimal.empty() && minimal.back().first == p.first) continue;
        if (!minimal.empty() && minimal.back().second <= p.second) continue;
        minimal.push_back(p);
    }
    // lower-left convex hull of the minimal staircase
    std::vector<std::pair<int, int>> hull;
    for (const auto& p : minimal) {
        while (hull.size() >= 2) {
            auto& q1 = hull[hull.size() - 2];
            auto& q2 = hull[hull.size() - 1];
            long cross = static_cast<long>(q2.first - q1.first) * (p.second - q1.second) -
                         static_cast<long>(q2.second - q1.second) * (p.first - q1.first);
            if (cross <= 0) hull.pop_back();  // q2 not a vertex
            else break;
        }
        hull.push_back(p);
    }
    std::vector<Edge> edges;
    for (size_t k = 0; k + 1 < hull.size(); ++k) {
        int di = hull[k + 1].first - hull[k].first;
        int dj = hull[k].second - hull[k + 1].second;  // positive
        int g = std::gcd(di, dj);
        Edge e;
        e.a = dj / g;
        e.b = di / g;
        // collect all support points on this segment
        for (const auto& p : pts) {
            long lhs = static_cast<long>(e.a) * p.first + static_cast<long>(e.b) * p.second;
            long rhs = static_cast<long>(e.a) * hull[k].first + static_cast<long>(e.b) * hull[k].second;
            if (lhs != rhs) continue;
            if (p.first < hull[k].first || p.first > hull[k + 1].first) continue;
            e.points.push_back(p);
        }
        edges.push_back(std::move(e));
    }
    return edges;
}

struct RawBranch {
    TruncSeries xs, ys;
};

// Newton lifting of the non-frozen coordinate. x_series must be an exact
// monomial; y starts from the edge prefix. Requires a simple root, which
// Newton's method certifies on the fly by strictly increasing residuals.
RawBranch hensel_lift(const MultiPoly& f, const Rat& lambda, int a, TruncSeries y0, int order) {
    int window = order + kLiftMargin;
    if (y0.truncation_order() < window)
        throw error("hensel_lift: prefix window too small");
    TruncSeries x = TruncSeries::monomial(lambda, a, window);
    TruncSeries y = y0.truncated(window);
    MultiPoly fy = f.partial(1);
    int last_e = -1;
    for (int iter = 0; iter <= window; ++iter) {
        TruncSeries r = exact::substitute_series(f, x, y);
        if (r.is_zero_on_window()) break;
        int e = r.valuation();
        if (e <= last_e)
            throw error("branch lifting stalled (multiple root reached the Newton step)");
        last_e = e;
        TruncSeries fys = exact::substitute_series(fy, x, y);
        if (fys.is_zero_on_window())
            throw precision_error("branch lifting: derivative vanished through the window");
        int nu = fys.valuation();
        int j = e - nu;
        if (j >= order) break;
        if (j <= 0)
            throw error("branch lifting produced a non-positive correction exponent");
        Rat c = -r.coeff(e) / fys.coeff(nu);
        c.canonicalize();
        y = y + TruncSeries::monomial(c, j, window);
    }
    return {x.truncated(order), y.truncated(order)};
}

std::vector<RawBranch> np_branches(const MultiPoly& f, int order, int min_slope_b, int depth);

// Edge with a >= 2: a single lattice step, one branch, solvable over Q by
// gauge choice of the leading coefficients.
RawBranch ramified_edge_branch(const MultiPoly& f, const Edge& edge, int order) {
    if (edge.a <= 1) throw error("ramified_edge_branch misuse");
    if (edge.points.size() != 2)
        throw unsupported_error("non-ADE singularity: ramified Newton edge with interior points");
    auto p_hi = edge.points[0], p_lo = edge.points[1];
    if (p_hi.second < p_lo.second) std::swap(p_hi, p_lo);
    // C_hi * c^a + C_lo * lambda^b = 0  with  x = lambda t^a, y = c t^b
    Rat c_hi = f.coeff({p_hi.first, p_hi.second, 0});
    Rat c_lo = f.coeff({p_lo.first, p_lo.second, 0});
    Rat rho = -c_hi / c_lo;  // = lambda^b / c^a
    rho.canonicalize();
    // integers (s, t): s*b - t*a = 1
    long s = 0, t = 0;
    {
        long a = edge.a, b = edge.b;
        long old_r = b, r = a, old_s = 1, ss = 0;
        while (r != 0) {
            long q = old_r / r;
            std::swap(old_r -= q * r, r);
            std::swap(old_s -= q * ss, ss);
        }
        if (old_r != 1) throw error("edge normal not primitive");
        s = old_s;                    // s*b ≡ 1 (mod a)
        t = (s * b - 1) / a;
    }
    auto int_pow = [](const Rat& base, long e) {
        Rat r(1);
        Rat b = base;
        long n = e;
        if (n < 0) { b = 1 / b; n = -n; }
        for (long i = 0; i < n; ++i) r *= b;
        r.canonicalize();
        return r;
    };
    Rat lambda = int_pow(rho, s);
    Rat c = int_pow(rho, t);
    TruncSeries y0 = TruncSeries::monomial(c, edge.b, order + kLiftMargin);
    return hensel_lift(f, lambda, edge.a, y0, order);
}

// Branches subordinate to one a == 1 edge (x = t, y of valuation b).
void graph_edge_branches(const MultiPoly& f, const Edge& edge, int order, int depth,
                         std::vector<RawBranch>& out) {
    // edge polynomial in the leading coefficient c
    int jmin = edge.points.front().second;
    for (const auto& p : edge.points) jmin = std::min(jmin, p.second);
    upoly::UPoly q;
    for (const auto& p : edge.points) {
        size_t k = static_cast<size_t>(p.second - jmin);
        if (q.size() <= k) q.resize(k + 1, Rat(0));
        q[k] = f.coeff({p.first, p.second, 0});
    }
    q = upoly::trim(std::move(q));
    bool complete = true;
    std::vector<Rat> roots = upoly::rational_roots(q, &complete);
    upoly::UPoly deflated = q;
    for (const Rat& c : roots) {
        if (sgn(c) == 0) continue;  // c = 0 belongs to a later edge
        int mult = 0;
        upoly::UPoly lin = {-c, Rat(1)};
        while (upoly::divides(lin, deflated)) {
            deflated = upoly::quotient_exact(deflated, lin);
            ++mult;
        }
        if (mult == 1) {
            TruncSeries y0 = TruncSeries::monomial(c, edge.b, order + kLiftMargin);
            out.push_back(hensel_lift(f, Rat(1), 1, y0, order));
        } else {
            MultiPoly g = substitute_y_shift(f, c, edge.b);
            std::vector<RawBranch> subs = np_branches(g, order, edge.b, depth + 1);
            for (auto& rb : subs) {
                // y = c*x^b + y1 along the sub-branch
                TruncSeries shift = rb.xs.pow(static_cast<unsigned>(edge.b),
                                              rb.xs.truncation_order() + 8) * c;
                out.push_back({rb.xs, shift + rb.ys});
            }
        }
    }
    if (upoly::deg(deflated) > 0)
        throw unsupported_error(
            "branch requires irrational coefficients; supply a linear change of "
            "coordinates making the tangents rational");
}

std::vector<RawBranch> np_branches(const MultiPoly& f, int order, int min_slope_b, int depth) {
    if (depth > 16) throw error("branch recursion depth exceeded");
    std::vector<RawBranch> out;
    MultiPoly g = f;
    int window = order + kLiftMargin;
    if (divisible_by_var(g, 1)) {  // y = 0 is a branch (exact)
        out.push_back({TruncSeries::monomial(Rat(1), 1, window).truncated(order),
                       TruncSeries::zero(order)});
        g = divide_by_var(g, 1);
    }
    if (divisible_by_var(g, 0)) {  // x = 0 is a branch (top level only)
        if (depth > 0) throw error("unexpected vertical branch in recursion");
        out.push_back({TruncSeries::zero(order),
                       TruncSeries::monomial(Rat(1), 1, window).truncated(order)});
        g = divide_by_var(g, 0);
    }
    if (g.is_zero()) throw input_error("local equation is zero");
    if (sgn(g.evaluate({Rat(0), Rat(0)})) != 0) return out;  // unit factor: no further branches
    for (const Edge& edge : newton_edges(g)) {
        // keep only edges steeper than the slope already consumed upstream
        if (static_cast<long>(edge.b) <= static_cast<long>(min_slope_b) * edge.a) continue;
        if (edge.a == 1) {
            graph_edge_branches(g, edge, order, depth, out);
        } else if (edge.a <= edge.b) {
            out.push_back(ramified_edge_branch(g, edge, order));
        } else {
            Edge flipped{edge.b, edge.a, {}};
            for (auto [i, j] : edge.points) flipped.points.emplace_back(j, i);
            std::sort(flipped.points.begin(), flipped.points.end());
            RawBranch rb;
            MultiPoly gs = g.swapped(0, 1);
            if (flipped.a == 1) {
                std::vector<RawBranch> tmp;
                graph_edge_branches(gs, flipped, order, depth, tmp);
                for (auto& b : tmp) out.push_back({b.ys, b.xs});
                continue;
            }
            rb = ramified_edge_branch(gs, flipped, order);
            out.push_back({rb.ys, rb.xs});
        }
    }
    return out;
}

bool is_exact_monomial(const TruncSeries& s, int expo) {
    if (s.is_zero_on_window()) return false;
    return s.valuation() == expo && s.min_exponent() == expo &&
           [&] {
               for (int e = expo + 1; e < s.truncation_order(); ++e)
                   if (sgn(s.coeff(e)) != 0) return false;
               return true;
           }();
}

// S(-t)
TruncSeries negate_parameter(const TruncSeries& s) {
    if (s.is_zero_on_window()) return s;
    std::vector<Rat> cs;
    int lo = s.min_exponent();
    for (int e = lo; e < s.truncation_order(); ++e) {
        Rat c = s.coeff(e);
        if (e % 2 != 0) c = -c;
        cs.push_back(c);
    }
    return TruncSeries::from_coeffs(std::move(cs), lo, s.truncation_order(), s.parameter());
}

// reinterpret an even series in t as a series in u = t^2
TruncSeries even_reindex(const TruncSeries& s) {
    int trunc_u = (s.truncation_order() + 1) / 2;
    if (s.is_zero_on_window()) return TruncSeries::zero(trunc_u, s.parameter());
    int lo = s.min_exponent();
    if (lo % 2 != 0) throw error("even_reindex: odd valuation");
    std::vector<Rat> cs;
    for (int e = lo; e < 2 * trunc_u; e += 2) cs.push_back(s.coeff(e));
    for (int e = lo + 1; e < s.truncation_order(); e += 2)
        if (sgn(s.coeff(e)) != 0) throw error("even_reindex: odd coefficient present");
    return TruncSeries::from_coeffs(std::move(cs), lo / 2, trunc_u, s.parameter());
}

struct Frozen {
    bool x_is_base;
    Rat lead;        // base = lead * t^q
    TruncSeries other;
    int q;
};

Frozen frozen_side(const BranchParam& b) {
    int q = b.ramification;
    if (is_exact_monomial(b.x_series, q))
        return {true, b.x_series.coeff(q), b.y_series, q};
    if (is_exact_monomial(b.y_series, q))
        return {false, b.y_series.coeff(q), b.x_series, q};
    throw error("branch parametrization lost its frozen coordinate");
}

// ord_t of `curve`'s implicit equation evaluated along `path`
int implicit_order_along(const BranchParam& curve, const BranchParam& path) {
    Frozen fr = frozen_side(curve);
    Rat inv_lead = 1 / fr.lead;
    const TruncSeries& path_base = fr.x_is_base ? path.x_series : path.y_series;
    const TruncSeries& path_other = fr.x_is_base ? path.y_series : path.x_series;
    TruncSeries residual = [&] {
        if (fr.q == 1) {
            // other = S(base / lead)
            TruncSeries s = fr.other.compose(path_base * inv_lead);
            return path_other - s;
        }
        if (fr.q == 2) {
            TruncSeries sum = fr.other + negate_parameter(fr.other);
            TruncSeries prod = fr.other * negate_parameter(fr.other);
            TruncSeries a_of_u = even_reindex(sum);
            TruncSeries b_of_u = even_reindex(prod);
            TruncSeries u = path_base * inv_lead;
            return path_other * path_other - a_of_u.compose(u) * path_other + b_of_u.compose(u);
        }
        throw unsupported_error("intersection multiplicity needs ramification <= 2");
    }();
    if (residual.is_zero_on_window())
        throw input_error("identical branches: intersection multiplicity is infinite");
    return residual.valuation();
}

}  // namespace

std::vector<BranchParam> local_branches(const MultiPoly& f, int order) {
    if (f.nvars() != 2) throw input_error("local_branches expects a 2-variable equation");
    if (sgn(f.evaluate({Rat(0), Rat(0)})) != 0)
        throw input_error("local equation does not vanish at the center");
    std::vector<RawBranch> raws = np_branches(f, order, 0, 0);
    std::vector<BranchParam> out;
    for (auto& rb : raws) {
        BranchParam b;
        b.x_series = rb.xs;
        b.y_series = rb.ys;
        bool xz = rb.xs.is_zero_on_window(), yz = rb.ys.is_zero_on_window();
        int vx = xz ? -1 : rb.xs.valuation();
        int vy = yz ? -1 : rb.ys.valuation();
        if (xz) {
            b.ramification = vy;
            b.tangent = {Rat(0), Rat(1)};
        } else if (yz) {
            b.ramification = vx;
            b.tangent = {Rat(1), Rat(0)};
        } else {
            b.ramification = std::min(vx, vy);
            if (vx < vy) b.tangent = {Rat(1), Rat(0)};
            else if (vy < vx) b.tangent = {Rat(0), Rat(1)};
            else {
                Rat t = rb.ys.coeff(vy) / rb.xs.coeff(vx);
                t.canonicalize();
                b.tangent = {Rat(1), t};
            }
        }
        out.push_back(std::move(b));
    }
    return out;
}

int pairwise_intersection_multiplicity(const BranchParam& b1, const BranchParam& b2) {
    if (b1.center != b2.center)
        throw input_error("intersection multiplicity needs branches at the same center");
    int m12 = implicit_order_along(b2, b1);
    int m21 = implicit_order_along(b1, b2);
    if (m12 != m21)
        throw error("intersection multiplicity asymmetry: " + std::to_string(m12) + " vs " +
                    std::to_string(m21));
    return m12;
}

int branch_delta(const BranchParam& b) {
    if (b.ramification == 1) return 0;
    Frozen fr = frozen_side(b);
    const TruncSeries& s = fr.other;
    if (s.is_zero_on_window())
        throw error("ramified branch with monomial-only data");
    if (b.ramification == 2) {
        for (int e = s.valuation(); e < s.truncation_order(); ++e)
            if (e % 2 != 0 && sgn(s.coeff(e)) != 0) return (e - 1) / 2;
        throw precision_error("branch window too short to read the delta invariant");
    }
    if (b.ramification == 3) {
        for (int e = s.valuation(); e < s.truncation_order(); ++e)
            if (e % 3 != 0 && sgn(s.coeff(e)) != 0) return e - 1;
        throw precision_error("branch window too short to read the delta invariant");
    }
    throw unsupported_error("branch delta computed only for ramification <= 3 (ADE range)");
}

}  // namespace civhs::branches
