#pragma once

#include <cstdint>
#include <vector>

#include "gkm/root_system.hpp"

namespace gkm {

// Finite Weyl group, fully tabulated.  Element ids are canonical: sorted by
// (length, lexicographically minimal reduced word), so id 0 is the identity
// and ids 1..rank are the simple reflections in order.
struct WeylGroup {
  const RootSystem* rs = nullptr;
  int n = 0;  // number of elements

  std::vector<QMat> mat;                    // ambient action
  std::vector<int> length;
  std::vector<std::vector<int>> word;       // lex-min reduced word (simple indices)
  std::vector<std::vector<int>> right_gen;  // [w][i] -> w * s_i
  std::vector<std::vector<int>> left_gen;   // [w][i] -> s_i * w
  std::vector<int> inv;
  std::vector<std::vector<int>> root_act;   // [w][root id] -> root id of w(root)
  std::vector<int> refl;                    // positive root id -> element id of s_root
  std::vector<int> simple_elem;             // simple index -> element id

  // bruhat[y] has bit x set iff x <= y.
  std::vector<std::vector<uint64_t>> bruhat;

  int id() const { return 0; }
  int mult(int a, int b) const;  // a * b
  int act_root(int w, int r) const { return root_act[w][r]; }
  QVec act(int w, const QVec& v) const { return mat[w].apply(v); }

  // ell(w s_i) < ell(w)
  bool right_descent(int w, int i) const {
    return !rs->is_positive(root_act[w][rs->simple[i]]);
  }
  // ell(s_i w) < ell(w)
  bool left_descent(int w, int i) const {
    return !rs->is_positive(root_act[inv[w]][rs->simple[i]]);
  }

  bool bruhat_leq(int x, int y) const {
    return (bruhat[y][x >> 6] >> (x & 63)) & 1;
  }

  // Longest element of the standard parabolic subgroup for theta.
  int longest(uint32_t theta) const;
};

// Enumerates the group; throws GroupTooLarge if |W| would exceed `cap`.
WeylGroup build_weyl_group(const RootSystem& rs, int cap = 100000);

// Minimal-length left coset representatives of W/W_P and the projection map.
struct CosetTable {
  const WeylGroup* W = nullptr;
  uint32_t theta = 0;
  std::vector<int> reps;      // canonical element order
  std::vector<int> rep_pos;   // element -> index into reps, or -1
  std::vector<int> proj;      // element -> element id of its rep
  std::vector<int> sub;       // elements of W_P, canonical order
};

CosetTable make_coset_table(const WeylGroup& W, uint32_t theta);

// Minimal-length double coset representatives of W_Q \ W / W_P.
struct DoubleCosetTable {
  const WeylGroup* W = nullptr;
  uint32_t theta_q = 0, theta_p = 0;
  std::vector<int> reps;
  std::vector<int> rep_pos;                 // element -> index or -1
  std::vector<int> proj;                    // element -> rep element id
  std::vector<uint32_t> theta_u;            // per rep: Theta_u as a mask
  std::vector<std::vector<int>> w_u;        // per rep: elements of W_u
  std::vector<std::vector<int>> wq_u;       // per rep: minimal reps of W_Q/W_u
};

DoubleCosetTable make_double_coset_table(const WeylGroup& W, uint32_t theta_q,
                                         uint32_t theta_p);

// y = w * u * v with u in ^QW^P, w in W_Q^u, v in W_P; lengths add.
struct DoubleDecomp {
  int w, u, v;
};
DoubleDecomp double_parabolic_decompose(const WeylGroup& W,
                                        const DoubleCosetTable& t, int y);

// Greedy right-descent removal; the unique minimal representative of w W_P.
int project_min(const WeylGroup& W, uint32_t theta_p, int w);
// Unique minimal representative of W_Q w W_P (alternating two-sided descent
// removal; terminates at the unique element minimal on both sides).
int project_min_double(const WeylGroup& W, uint32_t theta_q, uint32_t theta_p,
                       int w);

// Elements of the standard parabolic subgroup W_theta, canonical order.
std::vector<int> parabolic_elements(const WeylGroup& W, uint32_t theta);

}  // namespace gkm
