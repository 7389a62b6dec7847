#ifndef CIVHS_IVHS_HPP
#define CIVHS_IVHS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>
#include "civhs/adjoint.hpp"
#include "civhs/curve.hpp"
#include "civhs/series.hpp"

namespace civhs::ivhs {

// residue functional of one node, written in the dual basis of the adjoint space
struct DualVector {
    std::vector<Rat> coordinates;
    std::string source;       // "node <point> branch <k>"
    int node_index = 0;
    int branch_choice = 0;
    Rat normalization;        // leading partial coefficient divided out
    int normalization_partial = 1;
};

// symmetric g x g matrix of exact scalars
struct SymForm {
    int g = 0;
    std::vector<Rat> entries;  // row-major, g*g

    const Rat& at(int i, int j) const { return entries[static_cast<size_t>(i * g + j)]; }
};

SymForm outer_square(const std::vector<Rat>& v);

struct IvhsOperator {
    std::vector<SymForm> generators;           // one per singularity
    std::vector<std::string> generator_sources;
    int genus = 0;
    int image_dimension = 0;       // rank of the generators in Sym^2
    int node_span_dimension = 0;   // rank of the residue vectors themselves
};

struct NodePairing {
    Rat engine_value;  // sum over both points of Res((d/dt . w1) w2)
    Rat form_a;        // Res_p(w1)Res_q(w2) + Res_q(w1)Res_p(w2)
    Rat form_b;        // Res_p(w1)Res_p(w2) + Res_q(w1)Res_q(w2)
    bool engine_matches_a = false;
    bool engine_matches_b = false;
};

struct LocalPair {
    exact::DiffForm at_p, at_q;
};

DualVector residue_functional(const curvekit::PlaneCurve& curve, int record_index,
                              int branch_choice, const adjoint::LinearSystem& system);

// Node engine: exact residues of the full contracted product at both
// preimages, alongside the two closed-form candidates.
NodePairing local_pairing_node(const LocalPair& w1, const LocalPair& w2);

// Cusp engine: the t^-1 d/dt cocycle pairs through the principal parts; the
// result is exactly zero on every admissible input. Inputs must have pole
// order at most 2 and no simple-pole term.
Rat local_pairing_cusp(const exact::DiffForm& w1, const exact::DiffForm& w2);

int jet_bound(const curvekit::SingularityRecord& rec);        // delta - 1
int residue_dimension(const curvekit::SingularityRecord& rec);  // 1 for nodes, else 0
int rank_bound(const curvekit::PlaneCurve& curve);

IvhsOperator assemble_from_functionals(const std::vector<std::vector<Rat>>& functionals, int g,
                                       int zero_generator_count);
IvhsOperator assemble_operator(const curvekit::PlaneCurve& curve,
                               const adjoint::LinearSystem& system);

struct NormalSheafDims {
    int degree = 0;
    int h0 = 0;
    bool nonspecial = false;
};

NormalSheafDims normal_sheaf_dims(int d, int g);

struct ClaimRecord {
    std::string claim_id;
    std::string computed;
    std::string prediction;
    bool agree = false;
    std::string witness;
    uint64_t seed = 0;
};

struct VerdictReport {
    std::vector<ClaimRecord> claims;
    std::vector<std::string> tension_flags;

    bool all_consistent() const {
        for (const auto& c : claims)
            if (!c.agree) return false;
        return true;
    }
};

VerdictReport maximality_report(const curvekit::PlaneCurve& curve, uint64_t seed);

}  // namespace civhs::ivhs

#endif
