#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gkm/fga.hpp"
#include "gkm/weyl.hpp"

namespace gkm {

// Element of the twisted group algebra Q_W: a finite sum q_w delta_w keyed
// by element id, zero coefficients pruned.  The twist delta_w q = w(q) delta_w
// is baked into twisted_mul.
using TwElem = std::map<int, QElem>;

TwElem tw_scalar(const FglContext& ctx, const QElem& q);  // q delta_e
TwElem tw_delta(const FglContext& ctx, int w);            // delta_w
TwElem tw_add(const FglContext& ctx, const TwElem& a, const TwElem& b);
TwElem tw_scale(const FglContext& ctx, const QElem& q, const TwElem& a);
TwElem twisted_mul(const FglContext& ctx, const TwElem& a, const TwElem& b);
bool tw_eq(const FglContext& ctx, const TwElem& a, const TwElem& b);
std::string tw_str(const FglContext& ctx, const TwElem& a);

// Natural action of Q_W on Q: (q delta_w) . p = q w(p).
QElem tw_apply(const FglContext& ctx, const TwElem& a, const QElem& p);

// Push-pull element Y_i = 1/x_{-a_i} + (1/x_{a_i}) delta_{s_i}.
TwElem push_pull(const FglContext& ctx, int i);

// Q-valued cofunction on the cosets W/W_P, stored as one coefficient per
// representative of the table (theta == 0 recovers functions on all of W).
struct Cofunction {
  const CosetTable* ct = nullptr;
  std::vector<QElem> c;
};

Cofunction cof_zero(const CosetTable& ct);
bool cof_eq(const FglContext& ctx, const Cofunction& a, const Cofunction& b);
Cofunction cof_add(const FglContext& ctx, const Cofunction& a,
                   const Cofunction& b);
Cofunction cof_scale(const FglContext& ctx, const QElem& q,
                     const Cofunction& f);
std::string cof_str(const FglContext& ctx, const Cofunction& f);

// Right Hecke action (q delta_w) . (p f_v) = p v w^{-1}(q) f_{v w^{-1}}.
// On a parabolic table the cofunction is expanded to the full group, acted
// on there, and collapsed back; the result must again be constant on cosets
// (asserted), which holds for the operators used here.
Cofunction bullet(const FglContext& ctx, const TwElem& a, const Cofunction& f);

// Left action (p delta_w) . (q f_v) = p w(q) f_{wv}, which descends to any
// parabolic quotient as f_{wv} -> f at the representative of w v W_P.
Cofunction odot(const FglContext& ctx, const TwElem& a, const Cofunction& f);

// Characteristic map c(q) = sum_v v(q) f_v over the table's representatives.
// With theta != 0 the input must be W_P-invariant (NotParabolicInvariant).
Cofunction char_map(const FglContext& ctx, const SElem& q,
                    const CosetTable& ct);
Cofunction char_map_q(const FglContext& ctx, const QElem& q,
                      const CosetTable& ct);

// Image of s (x) s' under the Borel-model product map: s . c(s').
Cofunction borel_pair(const FglContext& ctx, const SElem& s, const SElem& sp,
                      const CosetTable& ct);

// Class x_Q f_e with x_Q = prod of x_{-beta} over positive beta outside
// Sigma_Q; the product itself is exposed for reuse.
SElem point_class_coeff(const FglContext& ctx, uint32_t theta_q);
Cofunction point_class(const FglContext& ctx, uint32_t theta_q,
                       const CosetTable& ct);

// Composite of two coefficient tuples: c over the representatives of ch,
// b over those of cp, giving a_w = sum b_v v(c_u) over all (v, u) whose
// product lands in the coset of w.  Throws IndexMismatch on size mismatch.
std::vector<QElem> correspondence_product_q(const FglContext& ctx,
                                            const CosetTable& ch,
                                            const CosetTable& cp,
                                            const std::vector<QElem>& c,
                                            const std::vector<QElem>& b);
std::vector<SElem> correspondence_product(const FglContext& ctx,
                                          const CosetTable& ch,
                                          const CosetTable& cp,
                                          const std::vector<SElem>& c,
                                          const std::vector<SElem>& b);

// Whether the tuple b over the representatives of cp defines a module map
// out of the theta_q quotient: x_Q b_v must land in S for every v, and the
// scaled entries must satisfy one divisibility per (v, alpha) with alpha
// positive outside Sigma_P, against the entry at the coset of s_{v(alpha)} v.
bool hom_membership(const FglContext& ctx, const CosetTable& cp,
                    uint32_t theta_q, const std::vector<QElem>& b);

}  // namespace gkm
