#include "civhs/families.hpp"

#include <algorithm>
#include <sstream>
#include "civhs/adjoint.hpp"
#include "civhs/errors.hpp"
#include "civhs/ivhs.hpp"
#include "civhs/linalg.hpp"
#include "civhs/rng.hpp"

namespace civhs::families {

using curvekit::PlaneCurve;
using curvekit::ProjPoint;
using exact::MultiPoly;

std::string form_digest(const MultiPoly& form) {
    // FNV-1a over the canonical text
    std::string text = form.to_string();
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

std::vector<std::vector<Rat>> node_condition_kernel(const FamilySpec& spec) {
    if (spec.degree < 1) throw input_error("family degree must be positive");
    std::vector<exact::Expo> mons = adjoint::form_monomials(spec.degree);
    linalg::Mat rows;
    for (const auto& p : spec.node_points) {
        int chart = curvekit::chart_of(p);
        std::vector<Rat> center;
        for (int i = 0; i < 3; ++i)
            if (i != chart) {
                Rat v = p.h[static_cast<size_t>(i)] / p.h[static_cast<size_t>(chart)];
                v.canonicalize();
                center.push_back(v);
            }
        for (int cond = 0; cond < 3; ++cond) {
            linalg::Vec row;
            row.reserve(mons.size());
            for (const auto& e : mons) {
                MultiPoly m = MultiPoly::monomial(Rat(1), e, 3)
                                  .substitute_value(chart, Rat(1))
                                  .drop_variable(chart);
                if (cond > 0) m = m.partial(cond - 1);
                row.push_back(m.evaluate(center));
            }
            rows.push_back(std::move(row));
        }
    }
    return linalg::kernel_basis(rows, static_cast<int>(mons.size()));
}

namespace {

MultiPoly form_from_coords(const std::vector<std::vector<Rat>>& kernel,
                           const std::vector<exact::Expo>& mons, const std::vector<Rat>& coords) {
    MultiPoly form(3);
    for (size_t k = 0; k < kernel.size(); ++k) {
        if (sgn(coords[k]) == 0) continue;
        for (size_t i = 0; i < kernel[k].size(); ++i)
            if (sgn(kernel[k][i]) != 0)
                form = form + MultiPoly::monomial(coords[k] * kernel[k][i], mons[i], 3);
    }
    return form;
}

struct Validated {
    PlaneCurve curve;
    bool ok = false;
    bool scan_complete = true;
    std::string reason;
};

Validated validate_sample(const FamilySpec& spec, const MultiPoly& form) {
    Validated out;
    try {
        out.curve = curvekit::make_curve(form);
    } catch (const input_error& e) {
        out.reason = e.what();
        return out;
    }
    if (out.curve.degree != spec.degree) {
        out.reason = "sample degenerated to lower degree";
        return out;
    }
    for (const auto& p : spec.node_points) {
        if (!curvekit::verify_singular_point(out.curve, p)) {
            out.reason = "prescribed point " + p.to_string() + " failed singularity verification";
            return out;
        }
        curvekit::SingularityRecord rec;
        try {
            rec = curvekit::classify_ade(out.curve, p);
        } catch (const error& e) {
            out.reason = std::string("classification failed: ") + e.what();
            return out;
        }
        if (!rec.type.is_node()) {
            out.reason = "prescribed point " + p.to_string() + " degenerated to " + rec.type.name();
            return out;
        }
        out.curve.singularities.push_back(std::move(rec));
    }
    try {
        curvekit::geometric_genus(out.curve);
    } catch (const input_error& e) {
        out.reason = e.what();
        return out;
    }
    // equisingularity: reject unprescribed rational singular points
    for (const auto& q :
         curvekit::find_rational_singular_points(out.curve.form, &out.scan_complete)) {
        bool declared = false;
        for (const auto& p : spec.node_points)
            if (p == q) { declared = true; break; }
        if (!declared) {
            out.reason = "unprescribed rational singular point at " + q.to_string();
            return out;
        }
    }
    out.ok = true;
    return out;
}

struct Drawn {
    Validated v;
    std::vector<Rat> coords;
    int resamples = 0;
};

Drawn draw_sample(const FamilySpec& spec, const std::vector<std::vector<Rat>>& kernel,
                  const std::vector<exact::Expo>& mons, uint64_t stream) {
    Rng rng(stream);
    Drawn d;
    for (int attempt = 0; attempt < spec.rejection_budget; ++attempt) {
        d.coords.clear();
        for (size_t k = 0; k < kernel.size(); ++k)
            d.coords.push_back(rng.rat_in_box(spec.coeff_numerator_bound,
                                              spec.coeff_denominator_bound));
        d.v = validate_sample(spec, form_from_coords(kernel, mons, d.coords));
        d.resamples = attempt;
        if (d.v.ok) return d;
    }
    return d;
}

struct PipelineOut {
    int genus = -1;
    int adjoint_dim = -1;
    int dv_dim = -1;
    int span = -1;
    int span_upper = -1;
    int image = -1;
    bool tangents_rational = false;

    int observed_span() const { return span >= 0 ? span : span_upper; }
};

PipelineOut run_pipeline(const PlaneCurve& curve) {
    PipelineOut out;
    out.genus = curvekit::geometric_genus(curve).geometric_genus;
    adjoint::SpanCheck span = adjoint::residue_span_check(curve);
    out.adjoint_dim = span.adjoint_dimension;
    out.dv_dim = span.double_vanishing_dimension;
    out.span = span.span_dimension;
    out.span_upper = std::min(span.node_count, span.jet_span_dimension);
    out.tangents_rational =
        std::all_of(curve.singularities.begin(), curve.singularities.end(),
                    [](const curvekit::SingularityRecord& r) { return r.tangents_rational; });
    if (span.span_dimension >= 0) {
        adjoint::LinearSystem adj = adjoint::adjoint_space(curve);
        out.image = ivhs::assemble_operator(curve, adj).image_dimension;
    }
    return out;
}

uint64_t sample_stream(uint64_t seed, int index) {
    return seed ^ (0x9e3779b97f4a7c15ULL * static_cast<uint64_t>(index + 1));
}

// small rational offset in [-1/4, 1/4]
Rat rng_offset(Rng& rng) { return rat(rng.int_in(-2, 2), 8); }

}  // namespace

PlaneCurve curve_with_prescribed_nodes(const FamilySpec& spec, int sample_index, int* resamples) {
    std::vector<std::vector<Rat>> kernel = node_condition_kernel(spec);
    if (kernel.empty())
        throw input_error("over-constrained family: the node conditions admit no curve");
    std::vector<exact::Expo> mons = adjoint::form_monomials(spec.degree);
    Drawn d = draw_sample(spec, kernel, mons, sample_stream(spec.seed, sample_index));
    if (!d.v.ok)
        throw error("rejection budget exhausted for sample " + std::to_string(sample_index) +
                    " (last reason: " + d.v.reason + ")");
    if (resamples) *resamples = d.resamples;
    return d.v.curve;
}

FamilyScanResult family_scan(const FamilySpec& spec) {
    FamilyScanResult scan;
    scan.assumption_note =
        "node positions are held fixed across the family (stronger than constancy of the "
        "node count); unprescribed singular points are detected at rational points only";
    std::vector<std::vector<Rat>> kernel = node_condition_kernel(spec);
    if (kernel.empty())
        throw input_error("over-constrained family: the node conditions admit no curve");
    scan.kernel_dimension = static_cast<int>(kernel.size());
    scan.fraction_at_max = Rat(0);
    std::vector<exact::Expo> mons = adjoint::form_monomials(spec.degree);

    std::vector<std::vector<Rat>> verified_coords(static_cast<size_t>(spec.sample_count));
    for (int s = 0; s < spec.sample_count; ++s) {
        SampleResult row;
        row.index = s;
        Drawn d = draw_sample(spec, kernel, mons, sample_stream(spec.seed, s));
        row.resamples = d.resamples;
        if (!d.v.ok) {
            row.rejection_reason = d.v.reason;
            ++scan.degenerate_count;
            scan.samples.push_back(std::move(row));
            continue;
        }
        row.verified = true;
        row.extra_singularity_scan_complete = d.v.scan_complete;
        row.curve_hash = form_digest(d.v.curve.form);
        PipelineOut out = run_pipeline(d.v.curve);
        row.genus = out.genus;
        row.adjoint_dimension = out.adjoint_dim;
        row.adjoint_matches_genus = out.adjoint_dim == out.genus;
        row.double_vanishing_dimension = out.dv_dim;
        row.node_span_dimension = out.span;
        row.node_span_upper_bound = out.span_upper;
        row.image_dimension = out.image;
        row.tangents_rational = out.tangents_rational;
        verified_coords[static_cast<size_t>(s)] = d.coords;
        ++scan.verified_count;
        scan.samples.push_back(std::move(row));
    }

    int max_span = -1;
    auto observed = [](const SampleResult& r) {
        return r.node_span_dimension >= 0 ? r.node_span_dimension : r.node_span_upper_bound;
    };
    for (const auto& r : scan.samples)
        if (r.verified) max_span = std::max(max_span, observed(r));
    scan.max_observed_span = max_span;
    if (scan.verified_count > 0) {
        int at_max = 0;
        for (const auto& r : scan.samples)
            if (r.verified && observed(r) == max_span) ++at_max;
        scan.fraction_at_max = rat(at_max, scan.verified_count);
    }

    // openness probe: small rational offsets on the attaining sample's kernel
    // coordinates should reach at least the same span in one of 5 tries
    for (const auto& r : scan.samples) {
        if (!r.verified || observed(r) != max_span) continue;
        scan.openness_probe_ran = true;
        const std::vector<Rat>& base = verified_coords[static_cast<size_t>(r.index)];
        Rng prng(spec.seed ^ 0xa5a5a5a5a5a5a5a5ULL);
        for (int k = 0; k < 5 && !scan.openness_probe_held; ++k) {
            std::vector<Rat> coords = base;
            for (auto& c : coords) c += rng_offset(prng);
            Validated v = validate_sample(spec, form_from_coords(kernel, mons, coords));
            if (!v.ok) continue;
            PipelineOut out = run_pipeline(v.curve);
            if (out.observed_span() >= max_span) scan.openness_probe_held = true;
        }
        if (!scan.openness_probe_held)
            scan.openness_witness = "no perturbation of sample " + std::to_string(r.index) +
                                    " reached span " + std::to_string(max_span);
        break;
    }
    return scan;
}

std::string scan_csv(const FamilyScanResult& scan) {
    std::ostringstream os;
    os << "index,verified,curve_hash,genus,adjoint_dimension,double_vanishing_dimension,"
          "node_span_dimension,node_span_upper_bound,image_dimension,tangents_rational,"
          "resamples,rejection_reason\n";
    for (const auto& r : scan.samples) {
        os << r.index << ',' << (r.verified ? 1 : 0) << ',' << r.curve_hash << ',' << r.genus
           << ',' << r.adjoint_dimension << ',' << r.double_vanishing_dimension << ','
           << r.node_span_dimension << ',' << r.node_span_upper_bound << ',' << r.image_dimension
           << ',' << (r.tangents_rational ? 1 : 0) << ',' << r.resamples << ',' << '"'
           << r.rejection_reason << '"' << '\n';
    }
    return os.str();
}

}  // namespace civhs::families
