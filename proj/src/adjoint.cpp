#include "civhs/adjoint.hpp"

#include <algorithm>
#include "civhs/errors.hpp"

namespace civhs::adjoint {

using curvekit::PlaneCurve;
using curvekit::SingularityRecord;
using exact::MultiPoly;
using exact::TruncSeries;

std::vector<exact::Expo> form_monomials(int k) {
    std::vector<exact::Expo> mons;
    for (int i = 0; i <= k; ++i)
        for (int j = 0; i + j <= k; ++j)
            mons.push_back({i, j, k - i - j});
    std::sort(mons.begin(), mons.end());
    return mons;
}

NodalScheme nodal_scheme(const PlaneCurve& curve) {
    NodalScheme s;
    for (const auto& rec : curve.singularities)
        if (rec.type.is_node()) s.nodes.push_back(rec);
    return s;
}

namespace {

// dehomogenize a monomial in the record's chart and recenter
MultiPoly localized_monomial(const exact::Expo& e, const SingularityRecord& rec) {
    MultiPoly m = MultiPoly::monomial(Rat(1), e, 3);
    MultiPoly affine = m.substitute_value(rec.chart, Rat(1)).drop_variable(rec.chart);
    return affine.translated(rec.center);
}

MultiPoly localized_form(const MultiPoly& form, const SingularityRecord& rec) {
    MultiPoly affine = form.substitute_value(rec.chart, Rat(1)).drop_variable(rec.chart);
    return affine.translated(rec.center);
}

}  // namespace

TruncSeries pull_back_form(const MultiPoly& form, const SingularityRecord& rec,
                           const branches::BranchParam& branch) {
    MultiPoly local = localized_form(form, rec);
    return exact::substitute_series(local, branch.x_series, branch.y_series);
}

LinearSystem adjoint_space(const PlaneCurve& curve) {
    LinearSystem sys;
    sys.form_degree = curve.degree - 3;
    if (sys.form_degree < 0) {
        sys.ambient_dimension = 0;
        return sys;
    }
    sys.monomials = form_monomials(sys.form_degree);
    sys.ambient_dimension = static_cast<int>(sys.monomials.size());

    for (const auto& rec : curve.singularities) {
        if (!rec.branch_data.empty()) {
            for (size_t bi = 0; bi < rec.branch_data.size(); ++bi) {
                int c = rec.conductor_exponents[bi];
                // one row per required vanishing order of the pullback
                std::vector<TruncSeries> pulls;
                pulls.reserve(sys.monomials.size());
                for (const auto& e : sys.monomials) {
                    MultiPoly m = localized_monomial(e, rec);
                    pulls.push_back(exact::substitute_series(m, rec.branch_data[bi].x_series,
                                                             rec.branch_data[bi].y_series));
                }
                for (int k = 0; k < c; ++k) {
                    linalg::Vec row;
                    row.reserve(pulls.size());
                    for (const auto& s : pulls) {
                        if (s.truncation_order() <= k)
                            throw precision_error("branch series window too short for a conductor row");
                        row.push_back(s.coeff(k));
                    }
                    sys.condition_matrix.push_back(std::move(row));
                }
            }
        } else if (rec.type.is_node() || rec.type.is_cusp()) {
            // both branch rows at order zero coincide with evaluation at the
            // point, and the cusp's order-one row is identically zero
            linalg::Vec row;
            row.reserve(sys.monomials.size());
            for (const auto& e : sys.monomials)
                row.push_back(localized_monomial(e, rec).evaluate({Rat(0), Rat(0)}));
            sys.condition_matrix.push_back(std::move(row));
        } else {
            throw unsupported_error("adjoint conditions need branch data for type " +
                                    rec.type.name());
        }
    }
    for (const auto& v : linalg::kernel_basis(sys.condition_matrix, sys.ambient_dimension)) {
        MultiPoly b(3);
        for (size_t i = 0; i < v.size(); ++i)
            if (sgn(v[i]) != 0) b = b + MultiPoly::monomial(v[i], sys.monomials[i], 3);
        sys.basis.push_back(std::move(b));
    }
    return sys;
}

LinearSystem double_vanishing_space(const PlaneCurve& curve, const NodalScheme& scheme) {
    LinearSystem sys;
    sys.form_degree = curve.degree - 3;
    if (sys.form_degree < 0) {
        sys.ambient_dimension = 0;
        return sys;
    }
    sys.monomials = form_monomials(sys.form_degree);
    sys.ambient_dimension = static_cast<int>(sys.monomials.size());
    for (const auto& rec : scheme.nodes) {
        if (!rec.type.is_node())
            throw input_error("double_vanishing_space expects only nodes");
        for (int cond = 0; cond < 3; ++cond) {
            linalg::Vec row;
            row.reserve(sys.monomials.size());
            for (const auto& e : sys.monomials) {
                MultiPoly m = localized_monomial(e, rec);
                if (cond > 0) m = m.partial(cond - 1);
                row.push_back(m.evaluate({Rat(0), Rat(0)}));
            }
            sys.condition_matrix.push_back(std::move(row));
        }
    }
    for (const auto& v : linalg::kernel_basis(sys.condition_matrix, sys.ambient_dimension)) {
        MultiPoly b(3);
        for (size_t i = 0; i < v.size(); ++i)
            if (sgn(v[i]) != 0) b = b + MultiPoly::monomial(v[i], sys.monomials[i], 3);
        sys.basis.push_back(std::move(b));
    }
    return sys;
}

int jet_kernel_dimension(const LinearSystem& system, const NodalScheme& scheme,
                         const PlaneCurve& curve) {
    (void)curve;
    // double-vanishing jet conditions applied to the system's basis
    linalg::Mat rows;
    for (const auto& rec : scheme.nodes) {
        for (int cond = 0; cond < 3; ++cond) {
            linalg::Vec row;
            row.reserve(system.basis.size());
            for (const auto& b : system.basis) {
                MultiPoly m = localized_form(b, rec);
                if (cond > 0) m = m.partial(cond - 1);
                row.push_back(m.evaluate({Rat(0), Rat(0)}));
            }
            rows.push_back(std::move(row));
        }
    }
    return static_cast<int>(
        linalg::kernel_basis(rows, static_cast<int>(system.basis.size())).size());
}

BranchFunctional branch_functional(const PlaneCurve& curve, const SingularityRecord& rec,
                                   int branch_choice, const LinearSystem& system) {
    if (!rec.type.is_node()) throw input_error("residue functionals are defined at nodes");
    BranchFunctional out;
    if (system.dimension() == 0) {
        // nothing to evaluate against; the functional on a zero space
        out.normalizer = Rat(1);
        out.normalizer_partial = 1;
        return out;
    }
    if (rec.branch_data.empty())
        throw unsupported_error("residue functional needs rational branch tangents at " +
                                rec.point.to_string());
    const auto& branch = rec.branch_data.at(static_cast<size_t>(branch_choice));
    // leading coefficient of F_y along the branch; fall back to F_x when the
    // branch annihilates F_y
    MultiPoly f_local = curvekit::local_equation(curve, rec.point, nullptr, nullptr);
    TruncSeries fy = exact::substitute_series(f_local.partial(1), branch.x_series, branch.y_series);
    if (!fy.is_zero_on_window() && fy.valuation() == 1) {
        out.normalizer = fy.coeff(1);
        out.normalizer_partial = 1;
    } else {
        TruncSeries fx =
            exact::substitute_series(f_local.partial(0), branch.x_series, branch.y_series);
        if (fx.is_zero_on_window() || fx.valuation() != 1)
            throw error("node branch with degenerate leading partials at " + rec.point.to_string());
        out.normalizer = fx.coeff(1);
        out.normalizer_partial = 0;
    }
    for (const auto& b : system.basis) {
        TruncSeries pull = pull_back_form(b, rec, branch);
        Rat v = pull.coeff(1) / out.normalizer;
        v.canonicalize();
        out.coords.push_back(v);
    }
    return out;
}

SpanCheck residue_span_check(const PlaneCurve& curve) {
    SpanCheck check;
    LinearSystem adj = adjoint_space(curve);
    NodalScheme scheme = nodal_scheme(curve);
    curvekit::GenusData g = curvekit::geometric_genus(curve);
    check.genus = g.geometric_genus;
    check.adjoint_dimension = adj.dimension();
    check.node_count = static_cast<int>(scheme.nodes.size());
    check.nodes_ge_genus = check.node_count >= check.genus;
    check.double_vanishing_dimension = double_vanishing_space(curve, scheme).dimension();
    check.jet_span_dimension =
        adj.dimension() - jet_kernel_dimension(adj, scheme, curve);

    bool functionals_available = adj.dimension() == 0 ||
        std::all_of(scheme.nodes.begin(), scheme.nodes.end(),
                    [](const SingularityRecord& r) { return r.tangents_rational; });
    if (functionals_available) {
        linalg::Mat rows;
        for (const auto& rec : scheme.nodes)
            rows.push_back(branch_functional(curve, rec, 0, adj).coords);
        if (adj.dimension() == 0) check.span_dimension = 0;
        else check.span_dimension = linalg::rank(rows);
    }

    if (check.nodes_ge_genus) {
        check.equivalence_asserted = true;
        int span = check.span_dimension >= 0 ? check.span_dimension : check.jet_span_dimension;
        bool span_full = span == check.adjoint_dimension;
        bool dv_zero = check.double_vanishing_dimension == 0;
        check.equivalence_holds = (span_full == dv_zero);
        if (!check.equivalence_holds)
            check.witnesses.push_back("span full = " + std::string(span_full ? "yes" : "no") +
                                      " but double-vanishing dimension = " +
                                      std::to_string(check.double_vanishing_dimension));
        if (!span_full)
            check.witnesses.push_back("residue span " + std::to_string(span) + " < adjoint dimension " +
                                      std::to_string(check.adjoint_dimension));
    }
    return check;
}

}  // namespace civhs::adjoint
