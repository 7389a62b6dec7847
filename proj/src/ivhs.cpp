#include "civhs/ivhs.hpp"

#include <algorithm>
#include <sstream>
#include "civhs/errors.hpp"
#include "civhs/linalg.hpp"
#include "civhs/rng.hpp"

namespace civhs::ivhs {

using curvekit::PlaneCurve;
using curvekit::SingularityRecord;
using exact::DiffForm;
using exact::TruncSeries;

SymForm outer_square(const std::vector<Rat>& v) {
    SymForm s;
    s.g = static_cast<int>(v.size());
    s.entries.reserve(v.size() * v.size());
    for (const Rat& a : v)
        for (const Rat& b : v) s.entries.push_back(a * b);
    return s;
}

DualVector residue_functional(const PlaneCurve& curve, int record_index, int branch_choice,
                              const adjoint::LinearSystem& system) {
    const SingularityRecord& rec = curve.singularities.at(static_cast<size_t>(record_index));
    adjoint::BranchFunctional f = adjoint::branch_functional(curve, rec, branch_choice, system);
    DualVector v;
    v.coordinates = std::move(f.coords);
    v.node_index = record_index;
    v.branch_choice = branch_choice;
    v.normalization = f.normalizer;
    v.normalization_partial = f.normalizer_partial;
    v.source = "node " + rec.point.to_string() + " branch " + std::to_string(branch_choice);
    return v;
}

namespace {

Rat residue_of(const DiffForm& w) { return exact::series_residue(w); }

void check_node_form(const LocalPair& w, const char* which) {
    if (w.at_p.coeff_series.min_exponent() < -1 || w.at_q.coeff_series.min_exponent() < -1)
        throw input_error(std::string(which) + ": node differentials may have at most simple poles");
    Rat s = residue_of(w.at_p) + residue_of(w.at_q);
    if (sgn(s) != 0)
        throw input_error(std::string(which) +
                          ": node residue condition violated (residues must cancel)");
}

}  // namespace

NodePairing local_pairing_node(const LocalPair& w1, const LocalPair& w2) {
    check_node_form(w1, "w1");
    check_node_form(w2, "w2");
    NodePairing out;
    // contraction with d/dt turns g(t)dt into g(t); multiply and take residues
    TruncSeries prod_p = w1.at_p.coeff_series * w2.at_p.coeff_series;
    TruncSeries prod_q = w1.at_q.coeff_series * w2.at_q.coeff_series;
    out.engine_value = exact::series_residue({prod_p}) + exact::series_residue({prod_q});
    Rat r1p = residue_of(w1.at_p), r1q = residue_of(w1.at_q);
    Rat r2p = residue_of(w2.at_p), r2q = residue_of(w2.at_q);
    out.form_a = r1p * r2q + r1q * r2p;
    out.form_b = r1p * r2p + r1q * r2q;
    out.engine_matches_a = out.engine_value == out.form_a;
    out.engine_matches_b = out.engine_value == out.form_b;
    return out;
}

Rat local_pairing_cusp(const DiffForm& w1, const DiffForm& w2) {
    for (const DiffForm* w : {&w1, &w2}) {
        if (w->coeff_series.min_exponent() < -2)
            throw input_error("cusp differentials have pole order at most 2");
        if (w->coeff_series.truncation_order() <= -1)
            throw precision_error("cusp differential window excludes the simple-pole coefficient");
        if (sgn(w->coeff_series.coeff(-1)) != 0)
            throw input_error("violates Rosenlicht admissibility: the simple-pole coefficient must vanish");
    }
    TruncSeries polar1 = w1.coeff_series.principal_part().shifted(-1);  // t^-1 d/dt contraction
    TruncSeries polar2 = w2.coeff_series.principal_part();
    TruncSeries prod = polar1 * polar2;
    return exact::series_residue({prod});
}

int jet_bound(const SingularityRecord& rec) { return rec.delta - 1; }

int residue_dimension(const SingularityRecord& rec) { return rec.type.is_node() ? 1 : 0; }

int rank_bound(const PlaneCurve& curve) {
    int total = 0;
    for (const auto& rec : curve.singularities)
        total += residue_dimension(rec) + (rec.delta - 1);
    return total;
}

IvhsOperator assemble_from_functionals(const std::vector<std::vector<Rat>>& functionals, int g,
                                       int zero_generator_count) {
    IvhsOperator op;
    op.genus = g;
    linalg::Mat span_rows, sym_rows;
    for (const auto& v : functionals) {
        if (static_cast<int>(v.size()) != g)
            throw input_error("functional length does not match the genus");
        op.generators.push_back(outer_square(v));
        span_rows.push_back(v);
        linalg::Vec row;
        for (int i = 0; i < g; ++i)
            for (int j = i; j < g; ++j) row.push_back(v[static_cast<size_t>(i)] * v[static_cast<size_t>(j)]);
        sym_rows.push_back(std::move(row));
    }
    for (int k = 0; k < zero_generator_count; ++k) {
        SymForm z;
        z.g = g;
        z.entries.assign(static_cast<size_t>(g) * static_cast<size_t>(g), Rat(0));
        op.generators.push_back(std::move(z));
    }
    op.node_span_dimension = g == 0 ? 0 : linalg::rank(span_rows);
    op.image_dimension = g == 0 ? 0 : linalg::rank(sym_rows);
    return op;
}

IvhsOperator assemble_operator(const PlaneCurve& curve, const adjoint::LinearSystem& system) {
    int g = system.dimension();
    std::vector<std::vector<Rat>> functionals;
    std::vector<std::string> sources;
    int zeros = 0;
    std::vector<std::string> zero_sources;
    for (size_t i = 0; i < curve.singularities.size(); ++i) {
        const auto& rec = curve.singularities[i];
        if (rec.type.is_node()) {
            DualVector v = residue_functional(curve, static_cast<int>(i), 0, system);
            functionals.push_back(v.coordinates.empty() ? std::vector<Rat>(static_cast<size_t>(g), Rat(0))
                                                        : v.coordinates);
            if (g == 0) functionals.back().clear();
            sources.push_back(v.source);
        } else {
            ++zeros;
            zero_sources.push_back(rec.type.name() + " at " + rec.point.to_string() +
                                   " (zero generator)");
        }
    }
    IvhsOperator op = assemble_from_functionals(functionals, g, zeros);
    op.generator_sources = sources;
    for (auto& s : zero_sources) op.generator_sources.push_back(std::move(s));
    return op;
}

NormalSheafDims normal_sheaf_dims(int d, int g) {
    if (d < 3 || g < 0) throw input_error("normal_sheaf_dims needs d >= 3 and g >= 0");
    NormalSheafDims n;
    n.degree = 3 * d + 2 * g - 2;
    n.nonspecial = n.degree > 2 * g - 2;
    n.h0 = n.nonspecial ? n.degree - g + 1 : -1;
    return n;
}

namespace {

std::string join_witnesses(const std::vector<std::string>& ws) {
    std::string out;
    for (const auto& w : ws) {
        if (!out.empty()) out += "; ";
        out += w;
    }
    return out;
}

}  // namespace

VerdictReport maximality_report(const PlaneCurve& curve, uint64_t seed) {
    VerdictReport report;
    adjoint::LinearSystem adj = adjoint::adjoint_space(curve);
    adjoint::SpanCheck span = adjoint::residue_span_check(curve);
    int g = adj.dimension();
    IvhsOperator op = assemble_operator(curve, adj);
    int bound = rank_bound(curve);
    int delta_nodes = span.node_count;

    {
        ClaimRecord c;
        c.claim_id = "nodes-at-least-genus";
        c.computed = "nodes=" + std::to_string(delta_nodes) + " genus=" + std::to_string(g);
        c.prediction = "criterion applies when nodes >= genus";
        c.agree = true;  // a status, not a testable claim
        c.witness = span.nodes_ge_genus ? "criterion applicable" : "criterion not applicable";
        c.seed = seed;
        report.claims.push_back(c);
    }
    {
        ClaimRecord c;
        c.claim_id = "residue-span-full";
        int s = span.span_dimension >= 0 ? span.span_dimension : span.jet_span_dimension;
        c.computed = "span=" + std::to_string(s) + " of " + std::to_string(g);
        c.prediction = span.nodes_ge_genus ? "residue functionals span the dual space"
                                           : "not asserted (nodes < genus)";
        c.agree = !span.nodes_ge_genus || s == g;
        if (!c.agree) c.witness = "span deficient by " + std::to_string(g - s);
        c.seed = seed;
        report.claims.push_back(c);
    }
    {
        ClaimRecord c;
        c.claim_id = "double-vanishing-dimension";
        c.computed = std::to_string(span.double_vanishing_dimension);
        c.prediction = span.nodes_ge_genus ? "0" : "not asserted (nodes < genus)";
        c.agree = !span.nodes_ge_genus || span.double_vanishing_dimension == 0;
        if (!c.agree)
            c.witness = "double-vanishing space has dimension " +
                        std::to_string(span.double_vanishing_dimension);
        c.seed = seed;
        report.claims.push_back(c);
    }
    {
        ClaimRecord c;
        c.claim_id = "image-dimension-bounds";
        c.computed = "image=" + std::to_string(op.image_dimension) +
                     " nodes=" + std::to_string(delta_nodes) + " rank_bound=" + std::to_string(bound);
        c.prediction = "image <= node count and image <= rank bound";
        c.agree = op.image_dimension <= delta_nodes && op.image_dimension <= bound;
        if (!c.agree) c.witness = "bound violated";
        c.seed = seed;
        report.claims.push_back(c);
    }
    {
        ClaimRecord c;
        c.claim_id = "surjectivity-dimension-count";
        long target = static_cast<long>(g) * g;
        long available = 0;
        for (const auto& rec : curve.singularities)
            available += residue_dimension(rec) + (rec.delta - 1);
        c.computed = "target=g^2=" + std::to_string(target) +
                     " local-contributions=" + std::to_string(available);
        c.prediction = "surjectivity impossible when local contributions < g^2";
        bool impossible = available < target;
        c.agree = true;
        c.witness = impossible ? "not surjective by dimension count" : "dimension count inconclusive";
        c.seed = seed;
        report.claims.push_back(c);
    }
    {
        // invertible combination of the rank-one generators
        ClaimRecord c;
        c.claim_id = "invertible-combination";
        c.prediction = span.nodes_ge_genus ? "some combination of the node generators is invertible"
                                           : "not asserted (nodes < genus)";
        c.seed = seed;
        if (g == 0) {
            c.computed = "vacuous (genus 0)";
            c.agree = true;
        } else if (op.node_span_dimension < g) {
            c.computed = "impossible: node span " + std::to_string(op.node_span_dimension) + " < " +
                         std::to_string(g);
            c.agree = !span.nodes_ge_genus;
            if (!c.agree) c.witness = "no invertible combination exists (span deficient)";
        } else {
            Rng rng(seed);
            bool found = false;
            std::string cert;
            for (int attempt = 0; attempt < 8 && !found; ++attempt) {
                linalg::Mat m(static_cast<size_t>(g), linalg::Vec(static_cast<size_t>(g), Rat(0)));
                std::string lambdas;
                for (const auto& gen : op.generators) {
                    Rat lambda = rng.rat_in_box(9, 3);
                    lambdas += (lambdas.empty() ? "" : ",") + rat_to_string(lambda);
                    if (gen.g != g) continue;
                    for (int i = 0; i < g; ++i)
                        for (int j = 0; j < g; ++j)
                            m[static_cast<size_t>(i)][static_cast<size_t>(j)] += lambda * gen.at(i, j);
                }
                Rat d = linalg::det(m);
                if (sgn(d) != 0) {
                    found = true;
                    cert = "det=" + rat_to_string(d) + " at lambda=(" + lambdas + ")";
                }
            }
            c.computed = found ? cert : "no invertible combination in 8 seeded samples";
            c.agree = found || !span.nodes_ge_genus;
            if (!found) c.witness = "sampling found no invertible combination";
        }
        report.claims.push_back(c);
    }
    {
        ClaimRecord c;
        c.claim_id = "injectivity-domain";
        int zero_gens = 0;
        for (const auto& rec : curve.singularities)
            if (!rec.type.is_node()) ++zero_gens;
        c.computed = std::to_string(zero_gens) + " zero generator(s) from non-nodal singularities";
        c.prediction = "injectivity claimed on the full deformation span";
        c.agree = true;  // reported as tension, never as failure
        if (zero_gens > 0) {
            c.witness = "modeled operator kills every non-nodal direction; injectivity fails on "
                        "the full span";
            report.tension_flags.push_back("maximal-ivhs-injectivity-domain");
        }
        c.seed = seed;
        report.claims.push_back(c);
    }
    if (!span.witnesses.empty()) {
        ClaimRecord c;
        c.claim_id = "span-check-witnesses";
        c.computed = join_witnesses(span.witnesses);
        c.prediction = "";
        c.agree = false;
        c.witness = c.computed;
        c.seed = seed;
        report.claims.push_back(c);
    }
    return report;
}

}  // namespace civhs::ivhs
