#pragma once

#include <nlohmann/json_fwd.hpp>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gkm/weyl.hpp"

namespace gkm {

// MinLabel keeps only the smallest admissible label per edge (smallest root
// id in the fixed root order); AllCandidates keeps the full admissible set,
// which closure experiments need.  The chosen label is the minimum either way.
enum class LabelPolicy { MinLabel, AllCandidates };

struct MGEdge {
  int src = 0;  // indices into MomentGraph::vertices
  int dst = 0;
  int label = 0;                // positive root id
  std::vector<int> candidates;  // ascending root ids; label is candidates[0]
};

// Labelled graph on coset representatives, ordered by the Bruhat restriction.
// Edges point strictly upward (src before dst, lower length), so the graph is
// acyclic by construction; one chosen label per edge.
struct MomentGraph {
  const WeylGroup* W = nullptr;
  std::vector<int> vertices;    // element ids, canonical (length, word) order
  std::vector<int> vertex_pos;  // element id -> index into vertices, or -1
  // Element id -> vertex index of its representative under the graph's own
  // projection (left cosets for parabolic graphs and subgraphs of them,
  // double cosets for double graphs).  Drives vertex actions w(v) = proj(wv).
  std::vector<int> vproj;
  std::vector<MGEdge> edges;  // sorted by (src, dst)
  std::map<std::pair<int, int>, int> edge_index;

  int vpos(int elem) const;                 // asserted vertex lookup
  const MGEdge* find_edge(int s, int d) const;  // by vertex indices
  bool leq(int vi, int vj) const;           // Bruhat order on vertex indices

  std::string dot() const;
  nlohmann::json to_json() const;
};

// Vertices W^P; edges w -> proj(s_a w) upward for every positive root a that
// moves the coset.  The admissible label is unique per edge (asserted).
MomentGraph build_parabolic_graph(const WeylGroup& W, uint32_t theta_p);

// Vertices ^QW^P; edges u -> proj(s_b u) upward over positive roots b.
// Distinct roots can produce the same edge; see LabelPolicy.
MomentGraph build_double_graph(const WeylGroup& W, const DoubleCosetTable& dt,
                               LabelPolicy policy = LabelPolicy::MinLabel);

// Whether g is W_H-closed: every transported edge exists and carries the
// transported label, with direction flipped when the label goes negative.
bool check_mge(const MomentGraph& g, uint32_t theta_h);

// W_Q-closure of the double graph embedded in the parabolic graph G^P:
// orbit vertices, the G^P edges inside single W_Q-orbits, and all W_Q
// transports of the embedded edges u -> proj(s_label u).  Returns a subgraph
// of G^P; every produced edge is asserted to exist there with the same label.
MomentGraph wq_closure(const WeylGroup& W, const DoubleCosetTable& dt,
                       const MomentGraph& dbl);

// Same vertex sets and the same (src, dst, label) triples.
bool graphs_equal(const MomentGraph& a, const MomentGraph& b);

// Closedness by definition: for every u in ^QW^P and all positive a, b with
// u < proj(s_a u) = proj(s_b u) there is w in W_Q fixing the coset of u with
// s_b = s_{w(a)}.  Label-choice independent.
bool is_closed_brute(const WeylGroup& W, uint32_t theta_q, uint32_t theta_p);

// Closedness via the per-type classification; throws UnclassifiedType for
// kinds without one.
bool is_closed_classified(const RootSystem& rs, uint32_t theta_q,
                          uint32_t theta_p);

// Multiset fingerprint of a W_Q-orbit in type B.  Coordinates are grouped
// into the tuples cut out by the simple transpositions missing from Theta_Q;
// the last tuple also admits sign changes when the sign flip s_n is present,
// and is then recorded unsigned.
struct InvariantDescription {
  std::vector<int> bounds;  // tuple boundaries k_0=0 < ... < k_{r+1}=n
  // (tuple index, value) -> multiplicity; only nonzero entries, and only
  // values >= 0 for the signed tuple.
  std::map<std::pair<int, long>, int> mult;
  bool has_tau = false;  // last tuple carries the signed action

  bool operator==(const InvariantDescription&) const = default;
};

InvariantDescription invariant_description(const RootSystem& rs,
                                           const std::vector<long>& mu,
                                           uint32_t theta_q);

// Whether mu and mu2 lie in the same W_Q-orbit.  Always computed by orbit
// enumeration; in type B the invariant-description route is computed too and
// asserted to agree.
bool orbit_equal(const WeylGroup& W, const QVec& mu, const QVec& mu2,
                 uint32_t theta_q);

}  // namespace gkm
