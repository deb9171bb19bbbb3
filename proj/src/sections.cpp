#include "gkm/sections.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <utility>

#include "gkm/errors.hpp"

namespace gkm {

Sheaf structure_sheaf_parabolic(const FglContext& ctx, uint32_t theta_p) {
  Sheaf sh;
  sh.ctx = &ctx;
  sh.graph = build_parabolic_graph(*ctx.W, theta_p);
  sh.doubled = false;
  sh.theta_p = theta_p;
  sh.vertex_theta.assign(sh.graph.vertices.size(), 0);
  sh.twist.assign(sh.graph.edges.size(), 0);
  return sh;
}

Sheaf structure_sheaf_double(const FglContext& ctx, const DoubleCosetTable& dt,
                             LabelPolicy policy) {
  const WeylGroup& W = *ctx.W;
  Sheaf sh;
  sh.ctx = &ctx;
  sh.graph = build_double_graph(W, dt, policy);
  sh.doubled = true;
  sh.theta_q = dt.theta_q;
  sh.theta_p = dt.theta_p;
  sh.vertex_theta.resize(sh.graph.vertices.size());
  for (size_t i = 0; i < sh.graph.vertices.size(); ++i) {
    int ri = dt.rep_pos[sh.graph.vertices[i]];
    assert(ri >= 0);
    sh.vertex_theta[i] = dt.theta_u[ri];
  }
  sh.twist.resize(sh.graph.edges.size());
  for (size_t k = 0; k < sh.graph.edges.size(); ++k) {
    const MGEdge& e = sh.graph.edges[k];
    int u = sh.graph.vertices[e.src];
    DoubleDecomp dec =
        double_parabolic_decompose(W, dt, W.mult(W.refl[e.label], u));
    assert(dec.u == sh.graph.vertices[e.dst]);
    sh.twist[k] = dec.w;
  }
  return sh;
}

bool is_section(const Sheaf& sh, const SectionTuple& t,
                const std::vector<int>* I) {
  const FglContext& ctx = *sh.ctx;
  const MomentGraph& g = sh.graph;
  assert(t.size() == g.vertices.size());
  std::vector<char> in(g.vertices.size(), I == nullptr);
  if (I != nullptr)
    for (int p : *I) {
      assert(p >= 0 && p < int(g.vertices.size()));
      in[p] = 1;
    }
  for (size_t p = 0; p < t.size(); ++p)
    if (in[p] && sh.vertex_theta[p] && !ctx.invariant(t[p], sh.vertex_theta[p]))
      throw VertexModuleViolation("tuple value escapes its vertex module");
  for (size_t k = 0; k < g.edges.size(); ++k) {
    const MGEdge& e = g.edges[k];
    if (!in[e.src] || !in[e.dst]) continue;
    if (!ctx.divisible(t[e.src] - ctx.act(sh.twist[k], t[e.dst]), e.label))
      return false;
  }
  return true;
}

bool membership_RWQ_WP(const FglContext& ctx, const CosetTable& ct,
                       uint32_t theta_q, const std::vector<SElem>& b) {
  const WeylGroup& W = *ctx.W;
  const RootSystem& rs = *ctx.rs;
  assert(b.size() == ct.reps.size());
  std::vector<char> in_wq(W.n, 0);
  for (int w : parabolic_elements(W, theta_q)) in_wq[w] = 1;
  for (size_t vi = 0; vi < ct.reps.size(); ++vi) {
    int v = ct.reps[vi];
    for (int a = 0; a < rs.npos; ++a) {
      int s = W.refl[a];
      int ti = ct.rep_pos[ct.proj[W.mult(s, v)]];
      if (ti != int(vi) && !ctx.divisible(b[vi] - b[ti], a)) return false;
      if (in_wq[s] && !(b[ti] == ctx.act(s, b[vi]))) return false;
    }
  }
  return true;
}

QapConditions make_qap_conditions(const WeylGroup& W,
                                  const DoubleCosetTable& dt) {
  const RootSystem& rs = *W.rs;
  std::set<std::array<int, 4>> qs;
  for (size_t ji = 0; ji < dt.reps.size(); ++ji)
    for (int w : dt.wq_u[ji]) {
      int wu = W.mult(w, dt.reps[ji]);
      for (int a = 0; a < rs.npos; ++a) {
        int y = project_min(W, dt.theta_p, W.mult(W.refl[a], wu));
        int ii = dt.rep_pos[y];
        if (ii < 0) continue;                   // coset misses every rep
        if (ii == int(ji) && w == 0) continue;  // tautology
        qs.insert({ii, int(ji), w, a});
      }
    }
  return QapConditions{{qs.begin(), qs.end()}};
}

bool membership_QAP(const FglContext& ctx, const DoubleCosetTable& dt,
                    const QapConditions& qc, const std::vector<SElem>& c) {
  assert(c.size() == dt.reps.size());
  for (size_t i = 0; i < c.size(); ++i)
    if (!ctx.invariant(c[i], dt.theta_u[i])) return false;
  for (const auto& q : qc.quads)
    if (!ctx.divisible(c[q[0]] - ctx.act(q[2], c[q[1]]), q[3])) return false;
  return true;
}

std::vector<SElem> psi(const FglContext& ctx, const CosetTable& ct,
                       const DoubleCosetTable& dt,
                       const std::vector<SElem>& c) {
  const WeylGroup& W = *ctx.W;
  assert(ct.theta == dt.theta_p);
  assert(c.size() == dt.reps.size());
  std::vector<SElem> b(ct.reps.size());
  std::vector<char> hit(ct.reps.size(), 0);
  for (size_t ui = 0; ui < dt.reps.size(); ++ui)
    for (int w : dt.wq_u[ui]) {
      int v = W.mult(w, dt.reps[ui]);
      assert(ct.proj[v] == v);  // orbit sweep stays inside the minimal reps
      int vi = ct.rep_pos[v];
      assert(!hit[vi]);
      hit[vi] = 1;
      b[vi] = ctx.act(w, c[ui]);
    }
  for (char h : hit) {
    assert(h);
    (void)h;
  }
  return b;
}

std::vector<SElem> project_hat(const FglContext& ctx, const CosetTable& ct,
                               const DoubleCosetTable& dt,
                               const std::vector<SElem>& b) {
  (void)ctx;
  assert(ct.theta == dt.theta_p);
  assert(b.size() == ct.reps.size());
  std::vector<SElem> c(dt.reps.size());
  for (size_t ui = 0; ui < dt.reps.size(); ++ui) {
    int vi = ct.rep_pos[dt.reps[ui]];
    assert(vi >= 0);
    c[ui] = b[vi];
  }
  return c;
}

namespace {

void gen_monomials(int nvars, int d, int i, std::vector<int>& cur,
                   std::vector<std::vector<int>>& out) {
  if (i == nvars - 1) {
    cur[i] = d;
    out.push_back(cur);
    return;
  }
  for (int e = d; e >= 0; --e) {
    cur[i] = e;
    gen_monomials(nvars, d - e, i + 1, cur, out);
  }
}

// all exponent vectors of total degree d, first variable descending
std::vector<std::vector<int>> monomials(int nvars, int d) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(nvars, 0);
  gen_monomials(nvars, d, 0, cur, out);
  return out;
}

SElem mono_elem(const std::vector<int>& e) {
  SElem s;
  s.add_term(SKey{e, 0}, 1);
  return s;
}

// Evaluation on the hyperplane x_label = 0.  The pivot variable is replaced
// by the solved linear form, so the kernel is exactly x_label S and equality
// of images is congruence modulo the label.
struct ModLabel {
  const FglContext* ctx;
  int pivot = -1;
  SElem rep;

  ModLabel(const FglContext& c, int label) : ctx(&c) {
    const auto& co = c.root_coord[label];
    for (int i = 0; i < c.nvars && pivot < 0; ++i)
      if (co[i] != 0) pivot = i;
    assert(pivot >= 0);
    std::vector<int> unit(c.nvars, 0);
    for (int i = 0; i < c.nvars; ++i) {
      if (i == pivot || co[i] == 0) continue;
      unit[i] = 1;
      Rat f(-co[i]);
      f /= co[pivot];
      rep = rep + mono_elem(unit).scaled(f);
      unit[i] = 0;
    }
  }

  SElem apply(const SElem& s) const {
    SElem out;
    for (const auto& [k, coef] : s.t) {
      std::vector<int> e = k.v;
      int p = e[pivot];
      e[pivot] = 0;
      SElem m = mono_elem(e).scaled(coef);
      if (p > 0) m = ctx->mul(m, ctx->pow(rep, p));
      out = out + m;
    }
    return out;
  }
};

struct Cong {
  int a, b, w, label;  // f_a - w(f_b) = 0 modulo x_label
};

// Exact nullspace of the degree-d system: vertex invariances plus the
// congruences, over (vertex, monomial) coefficient columns.
std::vector<std::vector<Rat>> slice_nullspace(
    const FglContext& ctx, int nverts, const std::vector<uint32_t>& vtheta,
    const std::vector<Cong>& congs, const std::vector<std::vector<int>>& mons) {
  const WeylGroup& W = *ctx.W;
  const int M = int(mons.size());
  const int U = nverts * M;
  std::map<std::vector<int>, int> mpos;
  for (int m = 0; m < M; ++m) mpos[mons[m]] = m;

  std::vector<std::vector<Rat>> rows;
  auto new_block = [&](int count) {
    int base = int(rows.size());
    rows.resize(base + count, std::vector<Rat>(U));
    return base;
  };
  for (int p = 0; p < nverts; ++p)
    for (int j = 0; j < ctx.rs->rank; ++j) {
      if (!((vtheta[p] >> j) & 1)) continue;
      int base = new_block(M);
      int sj = W.simple_elem[j];
      for (int m = 0; m < M; ++m) {
        for (const auto& [k, c] : ctx.act(sj, mono_elem(mons[m])).t)
          rows[base + mpos.at(k.v)][p * M + m] += c;
        rows[base + m][p * M + m] -= 1;
      }
    }
  for (const auto& cg : congs) {
    ModLabel ml(ctx, cg.label);
    std::map<std::vector<int>, int> rpos;
    for (const auto& e : mons)
      if (e[ml.pivot] == 0) rpos.emplace(e, int(rpos.size()));
    int base = new_block(int(rpos.size()));
    for (int m = 0; m < M; ++m) {
      for (const auto& [k, c] : ml.apply(mono_elem(mons[m])).t)
        rows[base + rpos.at(k.v)][cg.a * M + m] += c;
      for (const auto& [k, c] : ml.apply(ctx.act(cg.w, mono_elem(mons[m]))).t)
        rows[base + rpos.at(k.v)][cg.b * M + m] -= c;
    }
  }

  const int R = int(rows.size());
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < U && r < R; ++c) {
    int pr = -1;
    for (int i = r; i < R && pr < 0; ++i)
      if (rows[i][c] != 0) pr = i;
    if (pr < 0) continue;
    std::swap(rows[r], rows[pr]);
    Rat lead = rows[r][c];
    for (int cc = c; cc < U; ++cc) rows[r][cc] /= lead;
    for (int i = 0; i < R; ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Rat f = rows[i][c];
      for (int cc = c; cc < U; ++cc) rows[i][cc] -= f * rows[r][cc];
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<char> is_pivot(U, 0);
  for (int c : pivot_col) is_pivot[c] = 1;
  std::vector<std::vector<Rat>> basis;
  for (int c = 0; c < U; ++c) {
    if (is_pivot[c]) continue;
    std::vector<Rat> v(U);
    v[c] = 1;
    for (size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -rows[i][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

SectionTuple tuple_of(const std::vector<Rat>& v, int nverts,
                      const std::vector<std::vector<int>>& mons) {
  const int M = int(mons.size());
  SectionTuple t(nverts);
  for (int p = 0; p < nverts; ++p)
    for (int m = 0; m < M; ++m)
      if (v[p * M + m] != 0) t[p].add_term(SKey{mons[m], 0}, v[p * M + m]);
  return t;
}

}  // namespace

GradedBasis gamma_basis_graded(const Sheaf& sh, int max_deg) {
  const FglContext& ctx = *sh.ctx;
  if (ctx.law != Law::Additive)
    throw UnsupportedLaw("graded basis needs the additive law");
  const int nv = int(sh.graph.vertices.size());
  std::vector<Cong> congs;
  for (size_t k = 0; k < sh.graph.edges.size(); ++k) {
    const MGEdge& e = sh.graph.edges[k];
    congs.push_back({e.src, e.dst, sh.twist[k], e.label});
  }
  // scalar slices: invariants of theta_q, which is all of S for parabolic
  // sheaves
  std::vector<std::vector<SElem>> scal(max_deg + 1);
  for (int d = 0; d <= max_deg; ++d) {
    auto mons = monomials(ctx.nvars, d);
    for (const auto& v : slice_nullspace(ctx, 1, {sh.theta_q}, {}, mons)) {
      SElem s;
      for (size_t m = 0; m < mons.size(); ++m)
        if (v[m] != 0) s.add_term(SKey{mons[m], 0}, v[m]);
      scal[d].push_back(s);
    }
  }

  GradedBasis gb;
  gb.max_deg = max_deg;
  gb.dim.assign(max_deg + 1, 0);
  gb.gens.resize(max_deg + 1);
  for (int d = 0; d <= max_deg; ++d) {
    auto mons = monomials(ctx.nvars, d);
    const int M = int(mons.size());
    const int U = nv * M;
    std::map<std::vector<int>, int> mpos;
    for (int m = 0; m < M; ++m) mpos[mons[m]] = m;
    auto null_d = slice_nullspace(ctx, nv, sh.vertex_theta, congs, mons);
    gb.dim[d] = int(null_d.size());

    // reduction rows: scalar multiples of the lower-degree generators, kept
    // in reduced row form; accepted residues join them so generators of the
    // same degree stay independent
    std::vector<std::vector<Rat>> red;
    std::vector<int> lead;
    auto reduce = [&](std::vector<Rat> v) {
      for (size_t i = 0; i < red.size(); ++i)
        if (v[lead[i]] != 0) {
          Rat f = v[lead[i]];
          for (int c = 0; c < U; ++c) v[c] -= f * red[i][c];
        }
      return v;
    };
    auto insert_row = [&](std::vector<Rat> v) {
      v = reduce(std::move(v));
      int lc = -1;
      for (int c = 0; c < U && lc < 0; ++c)
        if (v[c] != 0) lc = c;
      if (lc < 0) return;
      Rat f = v[lc];
      for (int c = 0; c < U; ++c) v[c] /= f;
      for (size_t i = 0; i < red.size(); ++i)
        if (red[i][lc] != 0) {
          Rat g = red[i][lc];
          for (int c = 0; c < U; ++c) red[i][c] -= g * v[c];
        }
      red.push_back(std::move(v));
      lead.push_back(lc);
    };
    for (int dl = 0; dl < d; ++dl)
      for (const auto& g : gb.gens[dl])
        for (const auto& s : scal[d - dl]) {
          std::vector<Rat> v(U);
          for (int p = 0; p < nv; ++p)
            for (const auto& [k, c] : ctx.mul(s, g[p]).t)
              v[p * M + mpos.at(k.v)] += c;
          insert_row(std::move(v));
        }
    for (const auto& w : null_d) {
      auto v = reduce(w);
      int lc = -1;
      for (int c = 0; c < U && lc < 0; ++c)
        if (v[c] != 0) lc = c;
      if (lc < 0) continue;
      Rat f = v[lc];
      for (int c = 0; c < U; ++c) v[c] /= f;
      gb.gens[d].push_back(tuple_of(v, nv, mons));
      insert_row(std::move(v));
    }
  }
  return gb;
}

std::vector<int> invariant_graded_dims(const FglContext& ctx, uint32_t theta,
                                       int max_deg) {
  if (ctx.law != Law::Additive)
    throw UnsupportedLaw("graded slices need the additive law");
  std::vector<int> dims;
  for (int d = 0; d <= max_deg; ++d)
    dims.push_back(int(
        slice_nullspace(ctx, 1, {theta}, {}, monomials(ctx.nvars, d)).size()));
  return dims;
}

std::vector<int> qap_graded_dims(const FglContext& ctx,
                                 const DoubleCosetTable& dt,
                                 const QapConditions& qc, int max_deg) {
  if (ctx.law != Law::Additive)
    throw UnsupportedLaw("graded slices need the additive law");
  std::vector<Cong> congs;
  for (const auto& q : qc.quads) congs.push_back({q[0], q[1], q[2], q[3]});
  std::vector<int> dims;
  for (int d = 0; d <= max_deg; ++d)
    dims.push_back(int(slice_nullspace(ctx, int(dt.reps.size()), dt.theta_u,
                                       congs, monomials(ctx.nvars, d))
                           .size()));
  return dims;
}

nlohmann::json section_json(const Sheaf& sh, const SectionTuple& t) {
  assert(t.size() == sh.graph.vertices.size());
  nlohmann::json arr = nlohmann::json::array();
  for (size_t i = 0; i < t.size(); ++i)
    arr.push_back({{"vertex", sh.graph.vertices[i]},
                   {"value", sh.ctx->str(t[i])}});
  return arr;
}

}  // namespace gkm
