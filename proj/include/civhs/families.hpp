#ifndef CIVHS_FAMILIES_HPP
#define CIVHS_FAMILIES_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>
#include "civhs/curve.hpp"

namespace civhs::families {

struct FamilySpec {
    int degree = 0;
    std::vector<curvekit::ProjPoint> node_points;
    int sample_count = 0;
    uint64_t seed = 0;
    long coeff_numerator_bound = 8;
    long coeff_denominator_bound = 3;
    int rejection_budget = 64;
};

struct SampleResult {
    int index = 0;
    std::string curve_hash;
    bool verified = false;
    std::string rejection_reason;  // empty when verified
    int resamples = 0;
    int genus = -1;
    int adjoint_dimension = -1;
    bool adjoint_matches_genus = false;
    int double_vanishing_dimension = -1;
    int node_span_dimension = -1;      // -1 when functionals are unavailable
    int node_span_upper_bound = -1;    // min(node count, jet-route span)
    int image_dimension = -1;          // -1 when functionals are unavailable
    bool tangents_rational = false;
    bool extra_singularity_scan_complete = true;
};

struct FamilyScanResult {
    int kernel_dimension = 0;
    std::vector<SampleResult> samples;
    int verified_count = 0;
    int degenerate_count = 0;
    int max_observed_span = -1;
    // fraction of verified samples whose observed span attains the maximum
    Rat fraction_at_max;
    std::string assumption_note;
    // openness probe on the first sample attaining the maximum
    bool openness_probe_ran = false;
    bool openness_probe_held = false;
    std::string openness_witness;
};

// kernel of the node conditions on degree-d coefficients
std::vector<std::vector<Rat>> node_condition_kernel(const FamilySpec& spec);

// seeded sample with its prescribed points verified as A1; throws input_error
// when the spec is over-constrained, error when the rejection budget runs out
curvekit::PlaneCurve curve_with_prescribed_nodes(const FamilySpec& spec, int sample_index,
                                                 int* resamples = nullptr);

FamilyScanResult family_scan(const FamilySpec& spec);

// deterministic content hash of a form (used in per-sample rows)
std::string form_digest(const exact::MultiPoly& form);

std::string scan_csv(const FamilyScanResult& scan);

}  // namespace civhs::families

#endif
