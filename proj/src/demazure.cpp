#include "gkm/demazure.hpp"

#include <cassert>
#include <sstream>

#include "gkm/errors.hpp"

namespace gkm {

namespace {

void prune(TwElem& a) {
  for (auto it = a.begin(); it != a.end();) {
    if (it->second.is_zero()) {
      it = a.erase(it);
    } else {
      ++it;
    }
  }
}

}  // namespace

TwElem tw_scalar(const FglContext& ctx, const QElem& q) {
  TwElem a;
  if (!q.is_zero()) a[0] = ctx.reduce(q);
  return a;
}

TwElem tw_delta(const FglContext& ctx, int w) {
  TwElem a;
  a[w] = ctx.q(s_const(1, ctx.nvars));
  return a;
}

TwElem tw_add(const FglContext& ctx, const TwElem& a, const TwElem& b) {
  TwElem r = a;
  for (const auto& [w, q] : b) {
    auto it = r.find(w);
    if (it == r.end()) {
      r[w] = q;
    } else {
      it->second = ctx.qadd(it->second, q);
    }
  }
  prune(r);
  return r;
}

TwElem tw_scale(const FglContext& ctx, const QElem& q, const TwElem& a) {
  TwElem r;
  for (const auto& [w, p] : a) r[w] = ctx.qmul(q, p);
  prune(r);
  return r;
}

TwElem twisted_mul(const FglContext& ctx, const TwElem& a, const TwElem& b) {
  const WeylGroup& W = *ctx.W;
  TwElem r;
  for (const auto& [w, qw] : a) {
    for (const auto& [v, pv] : b) {
      int key = W.mult(w, v);
      QElem term = ctx.qmul(qw, ctx.qact(w, pv));
      auto it = r.find(key);
      if (it == r.end()) {
        r[key] = term;
      } else {
        it->second = ctx.qadd(it->second, term);
      }
    }
  }
  prune(r);
  return r;
}

bool tw_eq(const FglContext& ctx, const TwElem& a, const TwElem& b) {
  QElem zero;
  auto coeff = [&](const TwElem& t, int w) -> const QElem& {
    auto it = t.find(w);
    return it == t.end() ? zero : it->second;
  };
  for (const auto& [w, q] : a) {
    if (!ctx.qeq(q, coeff(b, w))) return false;
  }
  for (const auto& [w, q] : b) {
    if (!ctx.qeq(coeff(a, w), q)) return false;
  }
  return true;
}

std::string tw_str(const FglContext& ctx, const TwElem& a) {
  if (a.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, q] : a) {
    if (!first) os << " + ";
    first = false;
    os << "(" << ctx.qstr(q) << ")*d" << w;
  }
  return os.str();
}

QElem tw_apply(const FglContext& ctx, const TwElem& a, const QElem& p) {
  QElem r;
  for (const auto& [w, q] : a) r = ctx.qadd(r, ctx.qmul(q, ctx.qact(w, p)));
  return r;
}

TwElem push_pull(const FglContext& ctx, int i) {
  const RootSystem& rs = *ctx.rs;
  TwElem y;
  y[0] = ctx.qinv_chern(rs.neg[rs.simple[i]]);
  y[ctx.W->simple_elem[i]] = ctx.qinv_chern(rs.simple[i]);
  return y;
}

Cofunction cof_zero(const CosetTable& ct) {
  return Cofunction{&ct, std::vector<QElem>(ct.reps.size())};
}

bool cof_eq(const FglContext& ctx, const Cofunction& a, const Cofunction& b) {
  assert(a.ct && b.ct && a.ct->theta == b.ct->theta);
  if (a.c.size() != b.c.size()) return false;
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (!ctx.qeq(a.c[i], b.c[i])) return false;
  }
  return true;
}

Cofunction cof_add(const FglContext& ctx, const Cofunction& a,
                   const Cofunction& b) {
  assert(a.c.size() == b.c.size());
  Cofunction r = a;
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = ctx.qadd(a.c[i], b.c[i]);
  return r;
}

Cofunction cof_scale(const FglContext& ctx, const QElem& q,
                     const Cofunction& f) {
  Cofunction r = f;
  for (auto& x : r.c) x = ctx.qmul(q, x);
  return r;
}

std::string cof_str(const FglContext& ctx, const Cofunction& f) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < f.c.size(); ++i) {
    if (i) os << ", ";
    os << ctx.qstr(f.c[i]);
  }
  os << ")";
  return os.str();
}

Cofunction bullet(const FglContext& ctx, const TwElem& a, const Cofunction& f) {
  const WeylGroup& W = *ctx.W;
  const CosetTable& ct = *f.ct;
  // Functions on cosets sit inside functions on the group as the tuples
  // constant on each coset; the Hecke action only exists at the group level.
  std::vector<QElem> full(W.n), r(W.n);
  for (int x = 0; x < W.n; ++x) full[x] = f.c[ct.rep_pos[ct.proj[x]]];
  for (const auto& [w, qw] : a) {
    for (int v = 0; v < W.n; ++v) {
      r[v] = ctx.qadd(r[v], ctx.qmul(ctx.qact(v, qw), full[W.mult(v, w)]));
    }
  }
  Cofunction out = cof_zero(ct);
  for (size_t i = 0; i < ct.reps.size(); ++i) out.c[i] = r[ct.reps[i]];
  if (ct.theta != 0) {
    // The operator must map coset-constant tuples to coset-constant tuples
    // for the result to make sense on the quotient again.
    for (int x = 0; x < W.n; ++x) assert(ctx.qeq(r[x], r[ct.proj[x]]));
  }
  return out;
}

Cofunction odot(const FglContext& ctx, const TwElem& a, const Cofunction& f) {
  const WeylGroup& W = *ctx.W;
  const CosetTable& ct = *f.ct;
  Cofunction out = cof_zero(ct);
  for (const auto& [w, p] : a) {
    for (size_t vi = 0; vi < ct.reps.size(); ++vi) {
      int dst = ct.rep_pos[ct.proj[W.mult(w, ct.reps[vi])]];
      out.c[dst] = ctx.qadd(out.c[dst], ctx.qmul(p, ctx.qact(w, f.c[vi])));
    }
  }
  return out;
}

Cofunction char_map(const FglContext& ctx, const SElem& q,
                    const CosetTable& ct) {
  if (ct.theta != 0 && !ctx.invariant(q, ct.theta)) {
    throw NotParabolicInvariant(
        "characteristic map input is not invariant under the quotient "
        "subgroup");
  }
  Cofunction out = cof_zero(ct);
  for (size_t i = 0; i < ct.reps.size(); ++i) {
    out.c[i] = ctx.q(ctx.act(ct.reps[i], q));
  }
  return out;
}

Cofunction char_map_q(const FglContext& ctx, const QElem& q,
                      const CosetTable& ct) {
  if (ct.theta != 0) {
    for (int i = 0; i < ctx.rs->rank; ++i) {
      if (!((ct.theta >> i) & 1)) continue;
      if (!ctx.qeq(ctx.qact(ctx.W->simple_elem[i], q), q)) {
        throw NotParabolicInvariant(
            "characteristic map input is not invariant under the quotient "
            "subgroup");
      }
    }
  }
  Cofunction out = cof_zero(ct);
  for (size_t i = 0; i < ct.reps.size(); ++i) {
    out.c[i] = ctx.qact(ct.reps[i], q);
  }
  return out;
}

Cofunction borel_pair(const FglContext& ctx, const SElem& s, const SElem& sp,
                      const CosetTable& ct) {
  return cof_scale(ctx, ctx.q(s), char_map(ctx, sp, ct));
}

SElem point_class_coeff(const FglContext& ctx, uint32_t theta_q) {
  const RootSystem& rs = *ctx.rs;
  SElem x = s_const(1, ctx.nvars);
  for (int a = 0; a < rs.npos; ++a) {
    if (rs.support_in(a, theta_q)) continue;
    x = ctx.mul(x, ctx.chern_root(rs.neg[a]));
  }
  return x;
}

Cofunction point_class(const FglContext& ctx, uint32_t theta_q,
                       const CosetTable& ct) {
  Cofunction out = cof_zero(ct);
  out.c[ct.rep_pos[ct.proj[0]]] = ctx.q(point_class_coeff(ctx, theta_q));
  return out;
}

std::vector<QElem> correspondence_product_q(const FglContext& ctx,
                                            const CosetTable& ch,
                                            const CosetTable& cp,
                                            const std::vector<QElem>& c,
                                            const std::vector<QElem>& b) {
  if (c.size() != ch.reps.size() || b.size() != cp.reps.size()) {
    throw IndexMismatch("tuple sizes do not match their coset tables");
  }
  const WeylGroup& W = *ctx.W;
  std::vector<QElem> a(ch.reps.size());
  for (size_t vi = 0; vi < cp.reps.size(); ++vi) {
    if (b[vi].is_zero()) continue;
    int v = cp.reps[vi];
    for (size_t ui = 0; ui < ch.reps.size(); ++ui) {
      if (c[ui].is_zero()) continue;
      int wi = ch.rep_pos[ch.proj[W.mult(v, ch.reps[ui])]];
      a[wi] = ctx.qadd(a[wi], ctx.qmul(b[vi], ctx.qact(v, c[ui])));
    }
  }
  return a;
}

std::vector<SElem> correspondence_product(const FglContext& ctx,
                                          const CosetTable& ch,
                                          const CosetTable& cp,
                                          const std::vector<SElem>& c,
                                          const std::vector<SElem>& b) {
  std::vector<QElem> cq(c.size()), bq(b.size());
  for (size_t i = 0; i < c.size(); ++i) cq[i] = ctx.q(c[i]);
  for (size_t i = 0; i < b.size(); ++i) bq[i] = ctx.q(b[i]);
  std::vector<QElem> aq = correspondence_product_q(ctx, ch, cp, cq, bq);
  std::vector<SElem> a(aq.size());
  for (size_t i = 0; i < aq.size(); ++i) {
    assert(aq[i].den.empty());
    a[i] = aq[i].num;
  }
  return a;
}

bool hom_membership(const FglContext& ctx, const CosetTable& cp,
                    uint32_t theta_q, const std::vector<QElem>& b) {
  if (b.size() != cp.reps.size()) {
    throw IndexMismatch("tuple size does not match the coset table");
  }
  const RootSystem& rs = *ctx.rs;
  const WeylGroup& W = *ctx.W;
  QElem xq = ctx.q(point_class_coeff(ctx, theta_q));
  std::vector<SElem> bp(b.size());
  for (size_t i = 0; i < b.size(); ++i) {
    QElem t = ctx.qmul(xq, b[i]);
    if (!t.den.empty()) return false;
    bp[i] = t.num;
  }
  for (size_t vi = 0; vi < cp.reps.size(); ++vi) {
    int v = cp.reps[vi];
    for (int a = 0; a < rs.npos; ++a) {
      if (rs.support_in(a, cp.theta)) continue;
      int la = W.act_root(v, a);
      int pos = rs.is_positive(la) ? la : rs.neg[la];
      int ti = cp.rep_pos[cp.proj[W.mult(W.refl[pos], v)]];
      assert(ti != static_cast<int>(vi));
      if (!ctx.divisible(bp[vi] - bp[ti], pos)) return false;
    }
  }
  return true;
}

}  // namespace gkm
