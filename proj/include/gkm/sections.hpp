#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "gkm/fga.hpp"
#include "gkm/moment_graph.hpp"

namespace gkm {

// Structure sheaf on a moment graph.  Each vertex carries the invariant
// subring S^{W_u} of its theta mask (0 means all of S); each edge carries a
// twist element applied to the head value before the congruence test, so a
// tuple t is compatible along the edge when t_src - twist(t_dst) lies in
// x_label S.  Parabolic sheaves have trivial vertex masks and twists.
struct Sheaf {
  const FglContext* ctx = nullptr;
  MomentGraph graph;
  bool doubled = false;
  uint32_t theta_q = 0, theta_p = 0;
  std::vector<uint32_t> vertex_theta;  // per vertex position
  std::vector<int> twist;              // per edge, element id (0 = identity)
};

// One value per vertex, aligned with sheaf.graph.vertices.
using SectionTuple = std::vector<SElem>;

Sheaf structure_sheaf_parabolic(const FglContext& ctx, uint32_t theta_p);
// The twist of an edge u -> u2 with label l is the w from the decomposition
// s_l u = w u2 v (w minimal in its W_{u2} coset, v in W_P).
Sheaf structure_sheaf_double(const FglContext& ctx, const DoubleCosetTable& dt,
                             LabelPolicy policy = LabelPolicy::MinLabel);

// Compatibility of t over the induced subgraph on the vertex positions in I
// (all vertices when I is null).  Throws VertexModuleViolation when a value
// at a position in I escapes its vertex module.
bool is_section(const Sheaf& sh, const SectionTuple& t,
                const std::vector<int>* I = nullptr);

// Twisted-invariant description over the coset representatives ct.reps:
// (i) b_v - b_{proj(s_b v)} in x_b S for every positive root b,
// (ii) b_{proj(s_a v)} = s_a(b_v) for every reflection s_a inside W_Q.
// Condition (ii) at fixed v subsumes membership of b_v in its invariant ring.
bool membership_RWQ_WP(const FglContext& ctx, const CosetTable& ct,
                       uint32_t theta_q, const std::vector<SElem>& b);

// Congruence conditions of the double-coset description, precomputed.  Each
// quad (i, j, w, a) demands c_i - w(c_j) in x_a S; they are generated from
// all (u', w in W_Q, a positive) whose reflected coset s_a w u' W_P meets the
// representative set, with w swept over minimal coset representatives only
// (per-coset equality of the conditions holds on invariant tuples).
struct QapConditions {
  std::vector<std::array<int, 4>> quads;  // (dst rep idx, src rep idx, w, root)
};
QapConditions make_qap_conditions(const WeylGroup& W,
                                  const DoubleCosetTable& dt);

// Membership in the double-coset model: invariance c_u in S^{W_u} for every
// representative plus every congruence quad.
bool membership_QAP(const FglContext& ctx, const DoubleCosetTable& dt,
                    const QapConditions& qc, const std::vector<SElem>& c);

// Orbit expansion: the value at the coset representative of w u is w(c_u),
// w over the minimal representatives of W_Q / W_u.  Covers ct.reps exactly
// once.  Inverse on the image: restriction to the double representatives.
std::vector<SElem> psi(const FglContext& ctx, const CosetTable& ct,
                       const DoubleCosetTable& dt,
                       const std::vector<SElem>& c);
std::vector<SElem> project_hat(const FglContext& ctx, const CosetTable& ct,
                               const DoubleCosetTable& dt,
                               const std::vector<SElem>& b);

// Graded solution spaces, additive law only (the x_lambda are then linear
// forms and all constraints are degree-preserving).
struct GradedBasis {
  int max_deg = 0;
  std::vector<int> dim;                         // slice dimension per degree
  std::vector<std::vector<SectionTuple>> gens;  // new generators per degree
  int rank() const {
    int r = 0;
    for (const auto& g : gens) r += int(g.size());
    return r;
  }
};

// Basis of the degree-d sections for each d <= max_deg, reduced modulo
// multiples of lower-degree sections by invariants of theta_q (all of S for
// parabolic sheaves).  Throws UnsupportedLaw on non-additive contexts.
GradedBasis gamma_basis_graded(const Sheaf& sh, int max_deg);

// Slice dimensions of S^{W_theta} and of the double-coset solution space.
std::vector<int> invariant_graded_dims(const FglContext& ctx, uint32_t theta,
                                       int max_deg);
std::vector<int> qap_graded_dims(const FglContext& ctx,
                                 const DoubleCosetTable& dt,
                                 const QapConditions& qc, int max_deg);

nlohmann::json section_json(const Sheaf& sh, const SectionTuple& t);

}  // namespace gkm
