#include "civhs/curve.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>
#include "civhs/errors.hpp"
#include "civhs/linalg.hpp"
#include "civhs/upoly.hpp"

namespace civhs::curvekit {

using exact::MultiPoly;

AdeType parse_ade_type(const std::string& name) {
    if (name.size() < 2) throw input_error("bad ADE tag: " + name);
    AdeType t;
    t.series = name[0];
    if (t.series != 'A' && t.series != 'D' && t.series != 'E')
        throw input_error("bad ADE tag: " + name);
    size_t pos = 1;
    if (name[pos] == '_') ++pos;
    t.index = std::stoi(name.substr(pos));
    if (t.series == 'A' && t.index < 1) throw input_error("bad ADE tag: " + name);
    if (t.series == 'D' && t.index < 4) throw input_error("bad ADE tag: " + name);
    if (t.series == 'E' && (t.index < 6 || t.index > 8)) throw input_error("bad ADE tag: " + name);
    return t;
}

bool ProjPoint::operator<(const ProjPoint& o) const {
    for (int i = 0; i < 3; ++i) {
        if (h[static_cast<size_t>(i)] < o.h[static_cast<size_t>(i)]) return true;
        if (o.h[static_cast<size_t>(i)] < h[static_cast<size_t>(i)]) return false;
    }
    return false;
}

std::string ProjPoint::to_string() const {
    return "[" + rat_to_string(h[0]) + ":" + rat_to_string(h[1]) + ":" + rat_to_string(h[2]) + "]";
}

ProjPoint make_point(const Rat& x, const Rat& y, const Rat& z) {
    std::array<Rat, 3> h{x, y, z};
    int last = -1;
    for (int i = 2; i >= 0; --i)
        if (sgn(h[static_cast<size_t>(i)]) != 0) { last = i; break; }
    if (last < 0) throw input_error("projective point cannot be all zero");
    Rat scale = h[static_cast<size_t>(last)];
    for (auto& c : h) { c /= scale; c.canonicalize(); }
    return ProjPoint{h};
}

int degree_cap() {
    if (const char* env = std::getenv("CURVEIVHS_DEGREE_CAP")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return 12;
}

namespace {

// square-free test for a homogeneous form: pull out the z power, check the
// dehomogenization, and require z^2 does not divide
bool is_square_free_form(const MultiPoly& form) {
    MultiPoly g = form;
    int zpow = 0;
    while (!g.is_zero()) {
        bool divisible = true;
        for (const auto& [e, c] : g.terms())
            if (e[2] == 0) { divisible = false; break; }
        if (!divisible) break;
        MultiPoly h(3);
        for (const auto& [e, c] : g.terms()) h.set_coeff({e[0], e[1], e[2] - 1}, c);
        g = h;
        ++zpow;
    }
    if (zpow >= 2) return false;
    MultiPoly affine = g.substitute_value(2, Rat(1)).drop_variable(2);
    if (affine.total_degree() <= 0) return zpow <= 1;
    if (!upoly::is_square_free_bivariate(affine)) return false;
    return true;
}

}  // namespace

PlaneCurve make_curve(const MultiPoly& form) {
    if (form.nvars() != 3) throw input_error("a plane curve needs a form in x, y, z");
    if (form.is_zero()) throw input_error("zero form");
    if (!form.is_homogeneous()) throw input_error("form is not homogeneous");
    int d = form.total_degree();
    if (d < 1) throw input_error("constant form");
    if (d > degree_cap())
        throw input_error("degree " + std::to_string(d) + " exceeds the cap " +
                          std::to_string(degree_cap()));
    if (!is_square_free_form(form)) throw input_error("form is not square-free");
    PlaneCurve c;
    c.degree = d;
    c.form = form;
    return c;
}

bool verify_singular_point(const PlaneCurve& curve, const ProjPoint& p) {
    std::vector<Rat> v(p.h.begin(), p.h.end());
    if (sgn(curve.form.evaluate(v)) != 0) return false;
    for (int i = 0; i < 3; ++i)
        if (sgn(curve.form.partial(i).evaluate(v)) != 0) return false;
    return true;
}

int chart_of(const ProjPoint& p) {
    int best = -1;
    for (int i = 0; i < 3; ++i) {
        if (sgn(p.h[static_cast<size_t>(i)]) == 0) continue;
        if (best < 0 || cmp(abs(p.h[static_cast<size_t>(i)]), abs(p.h[static_cast<size_t>(best)])) >= 0)
            best = i;
    }
    return best;
}

MultiPoly local_equation(const PlaneCurve& curve, const ProjPoint& p, int* chart,
                         std::vector<Rat>* center) {
    // chart coordinate scaled to 1; affine center in the standard coordinates
    int ch = chart_of(p);
    MultiPoly affine = curve.form.substitute_value(ch, Rat(1)).drop_variable(ch);
    std::vector<Rat> c;
    for (int i = 0; i < 3; ++i)
        if (i != ch) {
            Rat v = p.h[static_cast<size_t>(i)] / p.h[static_cast<size_t>(ch)];
            v.canonicalize();
            c.push_back(v);
        }
    MultiPoly local = affine.translated(c);
    if (chart) *chart = ch;
    if (center) *center = c;
    return local;
}

namespace {

// dim of Q[x,y]_{<N} modulo the truncated Jacobian span
int jacobian_quotient_dim(const MultiPoly& fx, const MultiPoly& fy, int n) {
    std::vector<exact::Expo> mons;
    std::map<exact::Expo, int> index;
    for (int i = 0; i < n; ++i)
        for (int j = 0; i + j < n; ++j) {
            exact::Expo e{i, j, 0};
            index[e] = static_cast<int>(mons.size());
            mons.push_back(e);
        }
    linalg::Mat rows;
    for (const MultiPoly* g : {&fx, &fy}) {
        if (g->is_zero()) continue;
        for (const auto& m : mons) {
            linalg::Vec row(mons.size(), Rat(0));
            bool any = false;
            for (const auto& [e, c] : g->terms()) {
                exact::Expo p{e[0] + m[0], e[1] + m[1], 0};
                if (p[0] + p[1] >= n) continue;
                row[static_cast<size_t>(index[p])] += c;
                any = true;
            }
            if (any) rows.push_back(std::move(row));
        }
    }
    return static_cast<int>(mons.size()) - linalg::rank(rows);
}

int stable_milnor(const MultiPoly& f_local) {
    MultiPoly fx = f_local.partial(0), fy = f_local.partial(1);
    if (fx.is_zero() && fy.is_zero()) throw unsupported_error("non-isolated singularity");
    int cap = 2 * degree_cap() + 6;
    int prev = -1;
    for (int n = 2; n <= cap; ++n) {
        int cur = jacobian_quotient_dim(fx, fy, n);
        // agreement of consecutive truncations certifies m^N lies in the
        // Jacobian ideal (Nakayama), so `cur` is the true dimension
        if (cur == prev) return cur;
        prev = cur;
    }
    throw unsupported_error("non-isolated singularity: local algebra dimension does not stabilize");
}

struct QuadraticData {
    int corank;              // 2 - rank of the quadratic part
    Rat a, b, c;             // a x^2 + b xy + c y^2
    bool split_rational;     // factors into distinct rational lines
};

QuadraticData quadratic_part_info(const MultiPoly& f_local) {
    QuadraticData q;
    q.a = f_local.coeff({2, 0, 0});
    q.b = f_local.coeff({1, 1, 0});
    q.c = f_local.coeff({0, 2, 0});
    Rat disc = q.b * q.b - 4 * q.a * q.c;
    bool zero = sgn(q.a) == 0 && sgn(q.b) == 0 && sgn(q.c) == 0;
    if (zero) q.corank = 2;
    else if (sgn(disc) == 0) q.corank = 1;
    else q.corank = 0;
    Rat root;
    q.split_rational = q.corank == 0 && rational_square_root(disc, root);
    return q;
}

// Hessian of the cubic part vanishes identically iff the cubic is a cube of
// a linear form.
bool cubic_part_is_cube(const MultiPoly& f_local, bool* cubic_nonzero) {
    MultiPoly c3 = f_local.homogeneous_part(3);
    *cubic_nonzero = !c3.is_zero();
    if (c3.is_zero()) return false;
    MultiPoly h = c3.partial(0).partial(0) * c3.partial(1).partial(1) -
                  c3.partial(0).partial(1) * c3.partial(0).partial(1);
    return h.is_zero();
}

}  // namespace

void ade_invariants(const AdeType& t, int* delta, int* r) {
    if (t.series == 'A') {
        *delta = (t.index + 1) / 2;
        *r = (t.index % 2 == 1) ? 2 : 1;
    } else if (t.series == 'D') {
        *r = (t.index % 2 == 0) ? 3 : 2;
        *delta = (t.index + *r - 1) / 2;
    } else if (t.index == 6) {
        *delta = 3; *r = 1;
    } else if (t.index == 7) {
        *delta = 4; *r = 2;
    } else {
        *delta = 4; *r = 1;
    }
}

namespace {
int g_branch_order_override = 0;
}

int branch_order_override() { return g_branch_order_override; }
void set_branch_order_override(int order) { g_branch_order_override = order; }

int default_branch_order(int delta) {
    int base = 4 * delta + 6;
    return std::max(base, g_branch_order_override);
}

std::vector<branches::BranchParam> branch_parametrizations(const PlaneCurve& curve,
                                                           const ProjPoint& p, int order) {
    int chart;
    std::vector<Rat> center;
    MultiPoly local = local_equation(curve, p, &chart, &center);
    std::vector<branches::BranchParam> bs = branches::local_branches(local, order);
    for (auto& b : bs) b.center = center;
    return bs;
}

SingularityRecord classify_ade(const PlaneCurve& curve, const ProjPoint& p) {
    if (!verify_singular_point(curve, p))
        throw input_error("declared point " + p.to_string() + " is not a singular point");
    SingularityRecord rec;
    rec.point = p;
    MultiPoly local = local_equation(curve, p, &rec.chart, &rec.center);
    QuadraticData q = quadratic_part_info(local);

    if (q.corank == 0) {
        rec.type = {'A', 1};
        rec.milnor = 1;
    } else {
        rec.milnor = stable_milnor(local);
        if (q.corank == 1) {
            if (rec.milnor < 2)
                throw error("corank 1 with Milnor number " + std::to_string(rec.milnor));
            rec.type = {'A', rec.milnor};
        } else {
            bool cubic_nonzero = false;
            bool cube = cubic_part_is_cube(local, &cubic_nonzero);
            if (!cubic_nonzero)
                throw unsupported_error("non-simple singularity at " + p.to_string() +
                                        " (multiplicity 4 or higher)");
            if (cube) {
                if (rec.milnor < 6 || rec.milnor > 8)
                    throw unsupported_error("non-simple singularity at " + p.to_string());
                rec.type = {'E', rec.milnor};
            } else {
                if (rec.milnor < 4)
                    throw error("corank 2 with Milnor number " + std::to_string(rec.milnor));
                rec.type = {'D', rec.milnor};
            }
        }
    }

    int delta = 0, r = 0;
    ade_invariants(rec.type, &delta, &r);
    rec.delta = delta;
    rec.branch_count = r;
    if (rec.milnor != 2 * delta - r + 1)
        throw error("classification inconsistency: mu != 2*delta - r + 1 at " + p.to_string());

    // Branch data: nodes only when the tangent cone splits rationally; the
    // cusp and the higher types go through the lifter, which reports
    // irrational branch coefficients on its own.
    bool try_branches = true;
    if (rec.type.is_node() && !q.split_rational) {
        try_branches = false;
        rec.tangents_rational = false;
    }
    if (try_branches) {
        int order = default_branch_order(delta);
        try {
            rec.branch_data = branch_parametrizations(curve, p, order);
            rec.tangents_rational = true;
        } catch (const unsupported_error&) {
            if (!rec.type.is_node() && !rec.type.is_cusp()) throw;
            rec.tangents_rational = false;
            rec.branch_data.clear();
        }
    }

    if (!rec.branch_data.empty() &&
        static_cast<int>(rec.branch_data.size()) != rec.branch_count)
        throw error("branch count mismatch: lifted " + std::to_string(rec.branch_data.size()) +
                    ", classified " + std::to_string(rec.branch_count) + " at " + p.to_string());

    if (rec.branch_data.empty()) {
        // conductor exponents for nodes and cusps are forced by the type
        if (rec.type.is_node()) rec.conductor_exponents = {1, 1};
        else if (rec.type.is_cusp()) rec.conductor_exponents = {2};
        else throw unsupported_error("branch data required for type " + rec.type.name());
    } else {
        int n = static_cast<int>(rec.branch_data.size());
        for (int i = 0; i < n; ++i) {
            int c = 2 * branches::branch_delta(rec.branch_data[static_cast<size_t>(i)]);
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                c += branches::pairwise_intersection_multiplicity(
                    rec.branch_data[static_cast<size_t>(i)], rec.branch_data[static_cast<size_t>(j)]);
            }
            rec.conductor_exponents.push_back(c);
        }
    }
    int csum = 0;
    for (int c : rec.conductor_exponents) csum += c;
    if (csum != 2 * rec.delta)
        throw error("conductor exponents do not sum to 2*delta at " + p.to_string());
    return rec;
}

int milnor_number(const PlaneCurve& curve, const ProjPoint& p) {
    if (!verify_singular_point(curve, p))
        throw input_error("point " + p.to_string() + " is not a singular point");
    MultiPoly local = local_equation(curve, p, nullptr, nullptr);
    return stable_milnor(local);
}

GenusData geometric_genus(const PlaneCurve& curve) {
    GenusData g;
    g.arithmetic_genus = (curve.degree - 1) * (curve.degree - 2) / 2;
    int dsum = 0;
    for (const auto& s : curve.singularities) {
        dsum += s.delta;
        if (s.type.is_node()) ++g.node_count;
    }
    g.geometric_genus = g.arithmetic_genus - dsum;
    if (g.geometric_genus < 0)
        throw input_error("inconsistent singularity list: negative geometric genus");
    return g;
}

SurfaceReport surface_numeric_report(int e, int m,
                                     const std::vector<SingularityRecord>& sings) {
    if (e < 4) throw input_error("surface degree must be at least 4");
    if (m < 1) throw input_error("divisor multiple must be at least 1");
    SurfaceReport r;
    r.arithmetic_genus = static_cast<long>(m) * (m + e - 4) * e / 2 + 1;
    for (const auto& s : sings) {
        r.delta_total += s.delta;
        if (s.type.is_node()) ++r.node_count;
        if (!(s.type.is_node() || s.type.is_cusp())) r.has_ade_beyond_cusp = true;
    }
    r.geometric_genus = r.arithmetic_genus - r.delta_total;
    if (r.geometric_genus < 0) throw input_error("negative geometric genus");
    r.nodes_at_least_genus = r.node_count >= r.geometric_genus;
    r.example_inequality = r.node_count < 3L * e - 1 + r.geometric_genus;
    return r;
}

namespace {

std::vector<Rat> singular_coordinate_candidates(const MultiPoly& f, int eliminate_var,
                                                bool* complete) {
    MultiPoly fx = f.partial(0), fy = f.partial(1);
    upoly::UPoly g = upoly::bivariate_resultant(fx, fy, eliminate_var);
    if (upoly::deg(g) > 0)
        g = upoly::monic_gcd(g, upoly::bivariate_resultant(f, fx, eliminate_var));
    if (g.empty()) {
        // a whole coordinate line of candidates; callers treat this as unknown
        if (complete) *complete = false;
        return {};
    }
    if (upoly::deg(g) == 0) return {};
    return upoly::rational_roots(g, complete);
}

bool singular_at(const MultiPoly& form, const ProjPoint& p) {
    std::vector<Rat> v(p.h.begin(), p.h.end());
    if (sgn(form.evaluate(v)) != 0) return false;
    for (int i = 0; i < 3; ++i)
        if (sgn(form.partial(i).evaluate(v)) != 0) return false;
    return true;
}

}  // namespace

std::vector<ProjPoint> find_rational_singular_points(const MultiPoly& form, bool* complete) {
    bool ok = true;
    std::set<ProjPoint> found;
    // affine chart z = 1 covers everything off the line z = 0
    MultiPoly f = form.substitute_value(2, Rat(1)).drop_variable(2);
    if (!f.is_zero()) {
        bool c1 = true, c2 = true;
        std::vector<Rat> xs = singular_coordinate_candidates(f, 1, &c1);
        std::vector<Rat> ys = singular_coordinate_candidates(f, 0, &c2);
        ok = ok && c1 && c2;
        for (const Rat& x0 : xs)
            for (const Rat& y0 : ys) {
                ProjPoint p = make_point(x0, y0, Rat(1));
                if (singular_at(form, p)) found.insert(p);
            }
    } else {
        ok = false;
    }
    // the line z = 0 is one-dimensional: the three partials restrict to
    // univariate polynomials in (x : y)
    {
        upoly::UPoly g;
        bool first = true;
        for (int i = 0; i < 3; ++i) {
            MultiPoly pi = form.partial(i).substitute_value(2, Rat(0)).drop_variable(2)
                               .substitute_value(1, Rat(1));
            upoly::UPoly u;
            for (const auto& [e, c] : pi.terms()) {
                size_t k = static_cast<size_t>(e[0]);
                if (u.size() <= k) u.resize(k + 1, Rat(0));
                u[k] += c;
            }
            u = upoly::trim(std::move(u));
            g = first ? u : upoly::monic_gcd(g, u);
            first = false;
            if (!g.empty() && upoly::deg(g) == 0) break;
        }
        if (g.empty()) {
            ok = false;  // the whole line degenerates; callers see "unknown"
        } else if (upoly::deg(g) > 0) {
            bool c3 = true;
            for (const Rat& x0 : upoly::rational_roots(g, &c3)) {
                ProjPoint p = make_point(x0, Rat(1), Rat(0));
                if (singular_at(form, p)) found.insert(p);
            }
            ok = ok && c3;
        }
        ProjPoint corner = make_point(Rat(1), Rat(0), Rat(0));
        if (singular_at(form, corner)) found.insert(corner);
    }
    if (complete) *complete = ok;
    return std::vector<ProjPoint>(found.begin(), found.end());
}

bool certify_singular_support(const MultiPoly& form, const std::vector<ProjPoint>& declared) {
    // Work chart by chart. In each chart the gcd of the three resultants must
    // factor completely into declared coordinates; then the finite candidate
    // grid is checked pointwise.
    for (int chart = 0; chart < 3; ++chart) {
        MultiPoly f = form.substitute_value(chart, Rat(1)).drop_variable(chart);
        if (f.is_zero()) return false;  // a coordinate line lies on the curve
        for (int dir = 0; dir < 2; ++dir) {
            MultiPoly fx = f.partial(0), fy = f.partial(1);
            int elim = 1 - dir;
            upoly::UPoly r1 = upoly::bivariate_resultant(f, fx, elim);
            upoly::UPoly r2 = upoly::bivariate_resultant(f, fy, elim);
            upoly::UPoly r3 = upoly::bivariate_resultant(fx, fy, elim);
            upoly::UPoly g = upoly::monic_gcd(upoly::monic_gcd(r1, r2), r3);
            if (g.empty()) return false;
            if (upoly::deg(g) == 0) continue;
            // divide out declared coordinates, whatever their multiplicity
            for (const auto& p : declared) {
                if (sgn(p.h[static_cast<size_t>(chart)]) == 0) continue;
                Rat coord = p.h[static_cast<size_t>(dir < chart ? dir : dir + 1)] /
                            p.h[static_cast<size_t>(chart)];
                upoly::UPoly lin = {-coord, Rat(1)};
                while (upoly::divides(lin, g) && upoly::deg(g) > 0)
                    g = upoly::quotient_exact(g, lin);
            }
            if (upoly::deg(g) > 0) return false;  // undeclared coordinate factor
        }
    }
    return true;
}

MultiPoly transform_form(const MultiPoly& form, const std::vector<std::vector<Rat>>& m) {
    return form.linear_change(m);
}

ProjPoint apply_matrix(const std::vector<std::vector<Rat>>& m, const ProjPoint& p) {
    std::array<Rat, 3> out{Rat(0), Rat(0), Rat(0)};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            out[static_cast<size_t>(i)] += m[static_cast<size_t>(i)][static_cast<size_t>(j)] * p.h[static_cast<size_t>(j)];
    return make_point(out[0], out[1], out[2]);
}

std::vector<std::vector<Rat>> invert3(const std::vector<std::vector<Rat>>& m) {
    auto minor = [&](int i, int j) -> Rat {
        int r0 = (i + 1) % 3, r1 = (i + 2) % 3, c0 = (j + 1) % 3, c1 = (j + 2) % 3;
        return m[static_cast<size_t>(r0)][static_cast<size_t>(c0)] * m[static_cast<size_t>(r1)][static_cast<size_t>(c1)] -
               m[static_cast<size_t>(r0)][static_cast<size_t>(c1)] * m[static_cast<size_t>(r1)][static_cast<size_t>(c0)];
    };
    Rat det(0);
    for (int j = 0; j < 3; ++j) det += m[0][static_cast<size_t>(j)] * minor(0, j);
    if (sgn(det) == 0) throw input_error("singular change-of-coordinates matrix");
    std::vector<std::vector<Rat>> inv(3, std::vector<Rat>(3));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Rat v = minor(j, i) / det;
            v.canonicalize();
            inv[static_cast<size_t>(i)][static_cast<size_t>(j)] = v;
        }
    return inv;
}

}  // namespace civhs::curvekit
