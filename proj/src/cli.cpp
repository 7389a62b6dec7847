#include "civhs/cli.hpp"

#include <algorithm>
#include <sstream>
#include "civhs/adjoint.hpp"
#include "civhs/errors.hpp"
#include "civhs/families.hpp"
#include "civhs/ivhs.hpp"
#include "civhs/rng.hpp"

namespace civhs::cli {

using report::Json;

namespace {

curvekit::ProjPoint point_from_json(const Json& arr) {
    if (!arr.is_array() || arr.size() != 3)
        throw parse_error("a point must be an array of three rationals");
    Rat c[3];
    for (int i = 0; i < 3; ++i) {
        const Json& v = arr[static_cast<size_t>(i)];
        if (v.is_string()) c[i] = rat_from_string(v.get<std::string>());
        else if (v.is_number_integer()) c[i] = Rat(v.get<long>());
        else throw parse_error("point coordinates must be strings or integers");
    }
    return curvekit::make_point(c[0], c[1], c[2]);
}

Json point_to_json(const curvekit::ProjPoint& p) {
    Json a = Json::array();
    for (const auto& c : p.h) a.push_back(rat_to_string(c));
    return a;
}

Json record_to_json(const curvekit::SingularityRecord& rec) {
    Json j;
    j["point"] = point_to_json(rec.point);
    j["type"] = rec.type.name();
    j["milnor"] = rec.milnor;
    j["delta"] = rec.delta;
    j["branch_count"] = rec.branch_count;
    j["conductor_exponents"] = rec.conductor_exponents;
    j["chart"] = rec.chart;
    j["tangents_rational"] = rec.tangents_rational;
    if (!rec.branch_data.empty()) {
        Json bs = Json::array();
        for (const auto& b : rec.branch_data) {
            Json bj;
            bj["ramification"] = b.ramification;
            bj["tangent"] = Json::array({rat_to_string(b.tangent[0]), rat_to_string(b.tangent[1])});
            bj["x_series"] = b.x_series.to_string();
            bj["y_series"] = b.y_series.to_string();
            bs.push_back(bj);
        }
        j["branches"] = bs;
    }
    return j;
}

Json claims_to_json(const ivhs::VerdictReport& rep) {
    Json arr = Json::array();
    for (const auto& c : rep.claims) {
        Json j;
        j["claim"] = c.claim_id;
        j["computed"] = c.computed;
        j["prediction"] = c.prediction;
        j["agree"] = c.agree;
        j["witness"] = c.witness;
        j["seed"] = c.seed;
        arr.push_back(j);
    }
    return arr;
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const precision_error*>(&e)) return kExitPrecision;
    if (dynamic_cast<const unsupported_error*>(&e)) return kExitUnsupported;
    if (dynamic_cast<const input_error*>(&e)) return kExitInput;
    if (dynamic_cast<const error*>(&e)) return kExitInput;
    return kExitInput;
}

template <typename Fn>
CommandResult guarded(const std::string& command, const std::string& digest, uint64_t seed,
                      Fn&& fn) {
    CommandResult result;
    result.envelope = report::envelope(command, digest, seed);
    try {
        fn(result);
    } catch (const std::exception& e) {
        result.envelope["error"] = e.what();
        result.exit_code = exit_code_for(e);
    }
    return result;
}

}  // namespace

CommandResult cmd_analyze(const std::string& input_json, uint64_t seed) {
    return guarded("analyze", report::input_digest(input_json), seed, [&](CommandResult& result) {
        Json in = Json::parse(input_json, nullptr, true, true);
        if (!in.contains("polynomial")) throw parse_error("input needs a \"polynomial\" field");
        if (in.contains("options")) {
            const Json& opt = in["options"];
            if (opt.contains("truncation_order"))
                curvekit::set_branch_order_override(opt["truncation_order"].get<int>());
        }
        exact::MultiPoly form = exact::parse_poly(in["polynomial"].get<std::string>(), 3);
        curvekit::PlaneCurve curve = curvekit::make_curve(form);
        result.envelope["curve"] = Json{{"degree", curve.degree},
                                        {"polynomial", form.to_string()}};

        std::vector<curvekit::ProjPoint> declared;
        if (in.contains("declared_singularities"))
            for (const Json& d : in["declared_singularities"]) {
                curvekit::ProjPoint p = point_from_json(d.at("point"));
                if (!curvekit::verify_singular_point(curve, p))
                    throw input_error("declared point " + p.to_string() +
                                      " does not verify as a singular point");
                curvekit::SingularityRecord rec = curvekit::classify_ade(curve, p);
                if (d.contains("expected_type")) {
                    curvekit::AdeType want =
                        curvekit::parse_ade_type(d["expected_type"].get<std::string>());
                    if (want.series != rec.type.series || want.index != rec.type.index)
                        throw input_error("declared type " + want.name() + " at " + p.to_string() +
                                          " but classification gives " + rec.type.name());
                }
                declared.push_back(p);
                curve.singularities.push_back(std::move(rec));
            }

        bool scan_complete = true;
        std::vector<std::string> undeclared;
        for (const auto& q : curvekit::find_rational_singular_points(curve.form, &scan_complete)) {
            bool known = std::any_of(declared.begin(), declared.end(),
                                     [&](const curvekit::ProjPoint& p) { return p == q; });
            if (!known) undeclared.push_back(q.to_string());
        }
        if (!undeclared.empty()) {
            std::string list;
            for (const auto& s : undeclared) list += (list.empty() ? "" : ", ") + s;
            throw input_error("undeclared rational singular points found: " + list);
        }
        result.envelope["singular_point_scan_complete"] = scan_complete;

        Json sings = Json::array();
        for (const auto& rec : curve.singularities) sings.push_back(record_to_json(rec));
        result.envelope["singularities"] = sings;

        curvekit::GenusData g = curvekit::geometric_genus(curve);
        result.envelope["genus"] = Json{{"arithmetic", g.arithmetic_genus},
                                        {"geometric", g.geometric_genus},
                                        {"node_count", g.node_count}};

        adjoint::LinearSystem adj = adjoint::adjoint_space(curve);
        Json adjj;
        adjj["form_degree"] = adj.form_degree;
        adjj["ambient_dimension"] = adj.ambient_dimension;
        adjj["condition_rows"] = adj.condition_matrix.size();
        adjj["dimension"] = adj.dimension();
        adjj["expected"] = g.geometric_genus;
        adjj["matches_expected"] = adj.dimension() == g.geometric_genus;
        Json basis = Json::array();
        for (const auto& b : adj.basis) basis.push_back(b.to_string());
        adjj["basis"] = basis;
        result.envelope["adjoint"] = adjj;

        adjoint::SpanCheck span = adjoint::residue_span_check(curve);
        Json spanj;
        spanj["node_count"] = span.node_count;
        spanj["nodes_ge_genus"] = span.nodes_ge_genus;
        spanj["double_vanishing_dimension"] = span.double_vanishing_dimension;
        spanj["span_dimension"] =
            span.span_dimension >= 0 ? Json(span.span_dimension) : Json(nullptr);
        spanj["jet_span_dimension"] = span.jet_span_dimension;
        result.envelope["residue_span"] = spanj;

        ivhs::VerdictReport verdict = ivhs::maximality_report(curve, seed);
        ivhs::IvhsOperator op = ivhs::assemble_operator(curve, adj);
        Json ivj;
        ivj["rank_bound"] = ivhs::rank_bound(curve);
        ivj["image_dimension"] = op.image_dimension;
        ivj["node_span_dimension"] = op.node_span_dimension;
        Json jets = Json::array(), resd = Json::array();
        for (const auto& rec : curve.singularities) {
            jets.push_back(ivhs::jet_bound(rec));
            resd.push_back(ivhs::residue_dimension(rec));
        }
        ivj["jet_bounds"] = jets;
        ivj["residue_dimensions"] = resd;
        ivhs::NormalSheafDims ns = ivhs::normal_sheaf_dims(curve.degree, g.geometric_genus);
        ivj["normal_sheaf"] = Json{{"degree", ns.degree},
                                   {"h0", ns.nonspecial ? Json(ns.h0) : Json(nullptr)},
                                   {"nonspecial", ns.nonspecial}};
        result.envelope["ivhs"] = ivj;
        result.envelope["claims"] = claims_to_json(verdict);
        for (const auto& t : verdict.tension_flags) result.envelope["tension_flags"].push_back(t);
        result.envelope["all_consistent"] = verdict.all_consistent();
        curvekit::set_branch_order_override(0);
    });
}

CommandResult cmd_verify_lemmas(uint64_t seed, int trials) {
    std::string digest = report::input_digest("verify-lemmas:" + std::to_string(seed) + ":" +
                                              std::to_string(trials));
    return guarded("verify-lemmas", digest, seed, [&](CommandResult& result) {
        if (trials < 1) throw input_error("trials must be at least 1");
        Rng rng(seed);
        const int window = 6;
        auto random_series = [&](int min_exp) {
            std::vector<Rat> cs;
            for (int e = min_exp; e < window; ++e) cs.push_back(rng.rat_in_box(5, 2));
            return exact::TruncSeries::from_coeffs(std::move(cs), min_exp, window);
        };
        auto node_pair = [&]() {
            exact::TruncSeries p = random_series(-1);
            exact::TruncSeries q = random_series(-1);
            // enforce the residue condition
            q = q + exact::TruncSeries::monomial(-p.coeff(-1) - q.coeff(-1), -1, window);
            return ivhs::LocalPair{{p}, {q}};
        };

        int cusp_zero = 0, node_symmetric = 0, node_bilinear = 0;
        int engine_eq_a = 0, engine_eq_b = 0, a_eq_minus_b = 0, a_eq_b = 0;
        int top_pole_invariant = 0, exact_form_zero = 0;
        for (int t = 0; t < trials; ++t) {
            ivhs::LocalPair w1 = node_pair(), w2 = node_pair(), w3 = node_pair();
            ivhs::NodePairing p12 = ivhs::local_pairing_node(w1, w2);
            ivhs::NodePairing p21 = ivhs::local_pairing_node(w2, w1);
            if (p12.engine_value == p21.engine_value) ++node_symmetric;
            // bilinearity in the first slot with random exact scalars
            Rat alpha = rng.rat_in_box(4, 2), beta = rng.rat_in_box(4, 2);
            ivhs::LocalPair combo{
                {w1.at_p.coeff_series * alpha + w3.at_p.coeff_series * beta},
                {w1.at_q.coeff_series * alpha + w3.at_q.coeff_series * beta}};
            ivhs::NodePairing pc = ivhs::local_pairing_node(combo, w2);
            ivhs::NodePairing p32 = ivhs::local_pairing_node(w3, w2);
            if (pc.engine_value == alpha * p12.engine_value + beta * p32.engine_value)
                ++node_bilinear;
            if (p12.engine_matches_a) ++engine_eq_a;
            if (p12.engine_matches_b) ++engine_eq_b;
            if (p12.form_a == -p12.form_b) ++a_eq_minus_b;
            if (p12.form_a == p12.form_b) ++a_eq_b;

            // cusp side: admissible pole order 2, no simple-pole term
            auto cusp_form = [&]() {
                std::vector<Rat> cs;
                cs.push_back(rng.rat_in_box(5, 2));  // t^-2
                cs.push_back(Rat(0));                // t^-1 forced by admissibility
                for (int e = 0; e < window; ++e) cs.push_back(rng.rat_in_box(5, 2));
                return exact::DiffForm{exact::TruncSeries::from_coeffs(std::move(cs), -2, window)};
            };
            exact::DiffForm c1 = cusp_form(), c2 = cusp_form();
            Rat v = ivhs::local_pairing_cusp(c1, c2);
            if (sgn(v) == 0) ++cusp_zero;
            // perturb the top Laurent coefficient; the pairing must not move
            exact::DiffForm c1p{c1.coeff_series +
                                exact::TruncSeries::monomial(rng.nonzero_rat_in_box(5, 2), -2,
                                                             window)};
            if (ivhs::local_pairing_cusp(c1p, c2) == v &&
                ivhs::local_pairing_cusp(c2, c1p) == ivhs::local_pairing_cusp(c2, c1))
                ++top_pole_invariant;
            // residues of exact differentials vanish
            exact::TruncSeries f = random_series(-3);
            if (sgn(exact::series_residue({f.derivative()})) == 0) ++exact_form_zero;
        }
        Json tallies;
        tallies["trials"] = trials;
        tallies["cusp_pairing_zero"] = cusp_zero;
        tallies["node_engine_symmetric"] = node_symmetric;
        tallies["node_engine_bilinear"] = node_bilinear;
        tallies["engine_matches_statement_form"] = engine_eq_a;
        tallies["engine_matches_proof_form"] = engine_eq_b;
        tallies["statement_form_equals_minus_proof_form"] = a_eq_minus_b;
        tallies["statement_form_equals_proof_form"] = a_eq_b;
        tallies["top_pole_perturbation_invariant"] = top_pole_invariant;
        tallies["exact_differential_residue_zero"] = exact_form_zero;
        result.envelope["tallies"] = tallies;
        result.envelope["tension_flags"].push_back("nodal-pairing-sign-pattern");
        result.envelope["sign_pattern_note"] =
            "the statement-level pairing and the proof-level pairing differ by a sign pattern; "
            "both are tallied against the engine and neither is silently preferred";
    });
}

CommandResult cmd_family_scan(const std::string& spec_json, bool want_csv) {
    return guarded("family-scan", report::input_digest(spec_json), 0, [&](CommandResult& result) {
        Json in = Json::parse(spec_json, nullptr, true, true);
        families::FamilySpec spec;
        spec.degree = in.at("degree").get<int>();
        for (const Json& p : in.at("node_points")) spec.node_points.push_back(point_from_json(p));
        spec.sample_count = in.at("sample_count").get<int>();
        spec.seed = in.at("seed").get<uint64_t>();
        if (in.contains("coefficient_box")) {
            spec.coeff_numerator_bound = in["coefficient_box"].value("numerator", 8);
            spec.coeff_denominator_bound = in["coefficient_box"].value("denominator", 3);
        }
        result.envelope["seed"] = spec.seed;
        families::FamilyScanResult scan = families::family_scan(spec);
        Json rows = Json::array();
        for (const auto& r : scan.samples) {
            Json j;
            j["index"] = r.index;
            j["verified"] = r.verified;
            j["curve_hash"] = r.curve_hash;
            j["rejection_reason"] = r.rejection_reason;
            j["resamples"] = r.resamples;
            j["genus"] = r.genus;
            j["adjoint_dimension"] = r.adjoint_dimension;
            j["adjoint_matches_genus"] = r.adjoint_matches_genus;
            j["double_vanishing_dimension"] = r.double_vanishing_dimension;
            j["node_span_dimension"] =
                r.node_span_dimension >= 0 ? Json(r.node_span_dimension) : Json(nullptr);
            j["node_span_upper_bound"] = r.node_span_upper_bound;
            j["image_dimension"] = r.image_dimension >= 0 ? Json(r.image_dimension) : Json(nullptr);
            j["tangents_rational"] = r.tangents_rational;
            j["extra_singularity_scan_complete"] = r.extra_singularity_scan_complete;
            rows.push_back(j);
        }
        Json summary;
        summary["kernel_dimension"] = scan.kernel_dimension;
        summary["verified_count"] = scan.verified_count;
        summary["degenerate_count"] = scan.degenerate_count;
        summary["max_observed_span"] = scan.max_observed_span;
        summary["fraction_at_max"] = rat_to_string(scan.fraction_at_max);
        summary["openness_probe_ran"] = scan.openness_probe_ran;
        summary["openness_probe_held"] = scan.openness_probe_held;
        summary["openness_witness"] = scan.openness_witness;
        result.envelope["assumption_note"] = scan.assumption_note;
        result.envelope["samples"] = rows;
        result.envelope["summary"] = summary;
        if (want_csv) result.csv = families::scan_csv(scan);
    });
}

CommandResult cmd_surface_report(int e, int m, const std::string& singularities_csv) {
    std::string digest = report::input_digest("surface:" + std::to_string(e) + ":" +
                                              std::to_string(m) + ":" + singularities_csv);
    return guarded("surface-report", digest, 0, [&](CommandResult& result) {
        std::vector<curvekit::SingularityRecord> records;
        std::stringstream ss(singularities_csv);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
            if (item.empty()) continue;
            int count = 1;
            size_t x = item.find('x');
            std::string tag = item;
            if (x != std::string::npos && x > 0 && std::isdigit(static_cast<unsigned char>(item[0]))) {
                count = std::stoi(item.substr(0, x));
                tag = item.substr(x + 1);
            }
            curvekit::AdeType t = curvekit::parse_ade_type(tag);
            int delta = 0, r = 0;
            curvekit::ade_invariants(t, &delta, &r);
            for (int k = 0; k < count; ++k) {
                curvekit::SingularityRecord rec;
                rec.type = t;
                rec.delta = delta;
                rec.branch_count = r;
                rec.milnor = 2 * delta - r + 1;
                records.push_back(rec);
            }
        }
        curvekit::SurfaceReport rep = curvekit::surface_numeric_report(e, m, records);
        Json j;
        j["surface_degree"] = e;
        j["divisor_multiple"] = m;
        j["arithmetic_genus"] = rep.arithmetic_genus;
        j["geometric_genus"] = rep.geometric_genus;
        j["node_count"] = rep.node_count;
        j["delta_total"] = rep.delta_total;
        j["nodes_at_least_genus"] = rep.nodes_at_least_genus;
        j["has_ade_beyond_cusp"] = rep.has_ade_beyond_cusp;
        j["node_count_below_example_bound"] = rep.example_inequality;
        result.envelope["surface"] = j;
    });
}

}  // namespace civhs::cli
