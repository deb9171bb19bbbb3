#include "gkm/fga.hpp"

#include <algorithm>
#include <cassert>
#include <climits>
#include <sstream>

#include "gkm/errors.hpp"

namespace gkm {

std::string law_str(Law l) {
  switch (l) {
    case Law::Additive: return "additive";
    case Law::Multiplicative: return "multiplicative";
    case Law::TruncatedCustom: return "custom";
  }
  return "?";
}

Law law_parse(const std::string& s) {
  if (s == "additive") return Law::Additive;
  if (s == "multiplicative") return Law::Multiplicative;
  if (s == "custom") return Law::TruncatedCustom;
  throw WrongType("unknown formal group law: " + s);
}

Lattice lattice_parse(const std::string& s) {
  if (s == "weight") return Lattice::Weight;
  if (s == "root") return Lattice::Root;
  throw WrongType("unknown lattice: " + s);
}

SElem& SElem::add_term(const SKey& k, const Rat& c) {
  if (c == 0) return *this;
  auto it = t.find(k);
  if (it == t.end()) {
    t.emplace(k, c);
  } else {
    it->second += c;
    if (it->second == 0) t.erase(it);
  }
  return *this;
}

SElem SElem::operator+(const SElem& o) const {
  SElem r = *this;
  for (const auto& [k, c] : o.t) r.add_term(k, c);
  return r;
}

SElem SElem::operator-(const SElem& o) const {
  SElem r = *this;
  for (const auto& [k, c] : o.t) r.add_term(k, -c);
  return r;
}

SElem SElem::operator-() const {
  SElem r;
  for (const auto& [k, c] : t) r.t.emplace(k, -c);
  return r;
}

SElem SElem::scaled(const Rat& c) const {
  SElem r;
  if (c == 0) return r;
  for (const auto& [k, v] : t) r.t.emplace(k, v * c);
  return r;
}

SElem s_const(const Rat& c, int nvars) {
  SElem r;
  r.add_term(SKey{std::vector<int>(nvars, 0), 0}, c);
  return r;
}

namespace {

SElem s_var(int i, int nvars) {
  SKey k{std::vector<int>(nvars, 0), 0};
  k.v[i] = 1;
  SElem r;
  r.add_term(k, 1);
  return r;
}

// Extended gcd with non-negative g.
struct Egcd {
  long g, x, y;
};

Egcd ext_gcd(long a, long b) {
  long r0 = a, r1 = b, x0 = 1, x1 = 0, y0 = 0, y1 = 1;
  while (r1 != 0) {
    long q = r0 / r1;
    r0 -= q * r1;
    std::swap(r0, r1);
    x0 -= q * x1;
    std::swap(x0, x1);
    y0 -= q * y1;
    std::swap(y0, y1);
  }
  if (r0 < 0) {
    r0 = -r0;
    x0 = -x0;
    y0 = -y0;
  }
  return {r0, x0, y0};
}

using Mat = std::vector<std::vector<long>>;

Mat mat_identity(int r) {
  Mat m(r, std::vector<long>(r, 0));
  for (int i = 0; i < r; ++i) m[i][i] = 1;
  return m;
}

// U unimodular with U*lam = g*e1, g = gcd > 0; V = U^{-1}.
std::pair<Mat, Mat> unimodular_to_e1(std::vector<long> lam) {
  int r = int(lam.size());
  Mat U = mat_identity(r), V = mat_identity(r);
  for (int i = 1; i < r; ++i) {
    if (lam[i] == 0) continue;
    Egcd e = ext_gcd(lam[0], lam[i]);
    long a = lam[0] / e.g, b = lam[i] / e.g;
    for (int j = 0; j < r; ++j) {
      long u0 = U[0][j], ui = U[i][j];
      U[0][j] = e.x * u0 + e.y * ui;
      U[i][j] = -b * u0 + a * ui;
    }
    for (int j = 0; j < r; ++j) {
      long v0 = V[j][0], vi = V[j][i];
      V[j][0] = a * v0 + b * vi;
      V[j][i] = -e.y * v0 + e.x * vi;
    }
    lam[0] = e.g;
    lam[i] = 0;
  }
  assert(lam[0] != 0);
  if (lam[0] < 0) {
    for (int j = 0; j < r; ++j) {
      U[0][j] = -U[0][j];
      V[j][0] = -V[j][0];
    }
  }
  return {U, V};
}

std::vector<int> mat_apply(const Mat& m, const std::vector<int>& v) {
  int r = int(v.size());
  std::vector<int> out(r, 0);
  for (int i = 0; i < r; ++i) {
    long acc = 0;
    for (int j = 0; j < r; ++j) acc += m[i][j] * v[j];
    assert(acc >= INT_MIN && acc <= INT_MAX);
    out[i] = int(acc);
  }
  return out;
}

// Exact division of s by a nonzero linear form; absent when the remainder
// after eliminating the pivot variable is nonzero.
std::optional<SElem> linear_divide(const SElem& s, const SElem& lin) {
  int pivot = -1;
  Rat pc;
  for (const auto& [k, c] : lin.t) {
    assert(k.b == 0 && k.total() == 1);
    int i = 0;
    while (k.v[i] == 0) ++i;
    if (pivot < 0 || i < pivot) {
      pivot = i;
      pc = c;
    }
  }
  assert(pivot >= 0);
  SElem q, r = s;
  while (true) {
    // Largest term with a positive pivot exponent, highest pivot power first.
    const SKey* best = nullptr;
    for (const auto& [k, c] : r.t) {
      if (k.v[pivot] == 0) continue;
      if (!best || k.v[pivot] > best->v[pivot] ||
          (k.v[pivot] == best->v[pivot] && *best < k))
        best = &k;
    }
    if (!best) break;
    SKey qk = *best;
    qk.v[pivot] -= 1;
    Rat qc = r.t.at(*best) / pc;
    q.add_term(qk, qc);
    for (const auto& [lk, lc] : lin.t) {
      SKey nk = qk;
      for (size_t j = 0; j < nk.v.size(); ++j) nk.v[j] += lk.v[j];
      r.add_term(nk, -qc * lc);
    }
  }
  if (!r.is_zero()) return std::nullopt;
  return q;
}

SElem homogeneous_part(const SElem& s, long d) {
  SElem r;
  for (const auto& [k, c] : s.t)
    if (k.total() == d) r.t.emplace(k, c);
  return r;
}

}  // namespace

SElem FglContext::truncate(SElem s) const {
  if (law != Law::TruncatedCustom) return s;
  for (auto it = s.t.begin(); it != s.t.end();)
    it = it->first.total() >= trunc ? s.t.erase(it) : std::next(it);
  return s;
}

SElem FglContext::mul(const SElem& a, const SElem& b) const {
  SElem r;
  for (const auto& [ka, ca] : a.t)
    for (const auto& [kb, cb] : b.t) {
      SKey k{ka.v, ka.b + kb.b};
      for (size_t i = 0; i < k.v.size(); ++i) k.v[i] += kb.v[i];
      if (law == Law::TruncatedCustom && k.total() >= trunc) continue;
      r.add_term(k, ca * cb);
    }
  return r;
}

SElem FglContext::pow(const SElem& a, int k) const {
  SElem r = s_const(1, nvars);
  for (int i = 0; i < k; ++i) r = mul(r, a);
  return r;
}

long FglContext::min_degree(const SElem& s) const {
  long d = LONG_MAX;
  for (const auto& [k, c] : s.t) d = std::min(d, k.total());
  return d;
}

SElem FglContext::chern(const std::vector<int>& coords) const {
  assert(int(coords.size()) == nvars);
  switch (law) {
    case Law::Additive: {
      SElem r;
      for (int i = 0; i < nvars; ++i)
        if (coords[i] != 0) r.add_term(s_var(i, nvars).t.begin()->first, coords[i]);
      return r;
    }
    case Law::Multiplicative: {
      // x_lambda = b^{-1}(1 - e^{-lambda}); cancels to 0 at lambda = 0.
      SElem r;
      std::vector<int> neg(nvars);
      for (int i = 0; i < nvars; ++i) neg[i] = -coords[i];
      r.add_term(SKey{std::vector<int>(nvars, 0), -1}, 1);
      r.add_term(SKey{neg, -1}, -1);
      return r;
    }
    case Law::TruncatedCustom: {
      auto it = chern_memo.find(coords);
      if (it != chern_memo.end()) return it->second;
      SElem r;
      int i = 0;
      while (i < nvars && coords[i] == 0) ++i;
      if (i < nvars) {
        std::vector<int> rest = coords;
        int sg = coords[i] > 0 ? 1 : -1;
        rest[i] -= sg;
        SElem step = sg > 0 ? s_var(i, nvars) : formal_neg(s_var(i, nvars));
        r = formal_sum(chern(rest), step);
      }
      chern_memo.emplace(coords, r);
      return r;
    }
  }
  return {};
}

SElem FglContext::chern_root(int root_id) const {
  if (chern_cache.empty()) {
    chern_cache.resize(rs->roots.size());
    chern_cached.assign(rs->roots.size(), 0);
  }
  if (!chern_cached[root_id]) {
    chern_cache[root_id] = chern(root_coord[root_id]);
    chern_cached[root_id] = 1;
  }
  return chern_cache[root_id];
}

SElem FglContext::formal_sum(const SElem& a, const SElem& b) const {
  switch (law) {
    case Law::Additive:
      return a + b;
    case Law::Multiplicative: {
      SElem beta;
      beta.add_term(SKey{std::vector<int>(nvars, 0), 1}, 1);
      return a + b - mul(beta, mul(a, b));
    }
    case Law::TruncatedCustom: {
      for (const SElem* s : {&a, &b}) {
        if (s->is_zero()) continue;
        long d = min_degree(*s);
        if (d >= trunc) throw TruncationExceeded("formal_sum input at truncation degree");
        assert(d >= 1);
      }
      SElem r = a + b;
      for (const auto& [ij, aij] : coeff) {
        auto [i, j] = ij;
        SElem term = mul(pow(a, i), pow(b, j));
        r = r + term.scaled(aij);
      }
      return truncate(r);
    }
  }
  return {};
}

SElem FglContext::formal_neg(const SElem& a) const {
  switch (law) {
    case Law::Additive:
      return -a;
    case Law::Multiplicative: {
      // -_F x = x / (bx - 1); the denominator must be a monomial unit.
      SElem beta;
      beta.add_term(SKey{std::vector<int>(nvars, 0), 1}, 1);
      SElem d = mul(beta, a) - s_const(1, nvars);
      return mul(a, invert_unit(d));
    }
    case Law::TruncatedCustom: {
      if (a.is_zero()) return a;
      long md = min_degree(a);
      if (md >= trunc) throw TruncationExceeded("formal_neg input at truncation degree");
      assert(md >= 1);
      SElem y = -a;
      for (int pass = 0; pass < trunc; ++pass) {
        SElem acc = -a;
        for (const auto& [ij, aij] : coeff) {
          auto [i, j] = ij;
          acc = acc - mul(pow(a, i), pow(y, j)).scaled(aij);
        }
        y = truncate(acc);
      }
      assert(formal_sum(a, y).is_zero());
      return y;
    }
  }
  return {};
}

SElem FglContext::invert_unit(const SElem& s) const {
  if (s.is_zero()) throw NonUnit("zero is not a unit");
  if (s.t.size() == 1) {
    const auto& [k, c] = *s.t.begin();
    if (law == Law::Multiplicative) {
      SKey ik{k.v, -k.b};
      for (int& e : ik.v) e = -e;
      SElem r;
      r.add_term(ik, Rat(1) / c);
      return r;
    }
    if (k.total() == 0) return s_const(Rat(1) / c, nvars);
  }
  if (law == Law::TruncatedCustom) {
    auto c0 = s.t.find(SKey{std::vector<int>(nvars, 0), 0});
    if (c0 == s.t.end()) throw NonUnit("no constant term");
    // s = c(1 - r) with r of positive degree: geometric series.
    SElem r = (s_const(c0->second, nvars) - s).scaled(Rat(1) / c0->second);
    SElem inv = s_const(1, nvars), p = s_const(1, nvars);
    for (int k = 1; k < trunc; ++k) {
      p = mul(p, r);
      if (p.is_zero()) break;
      inv = inv + p;
    }
    return inv.scaled(Rat(1) / c0->second);
  }
  throw NonUnit("not a unit in S");
}

SElem FglContext::neg_unit(int pos_root_id) const {
  assert(rs->is_positive(pos_root_id));
  if (neg_unit_cache.empty()) {
    neg_unit_cache.resize(rs->npos);
    neg_unit_inv_cache.resize(rs->npos);
    neg_unit_cached.assign(rs->npos, 0);
  }
  if (!neg_unit_cached[pos_root_id]) {
    SElem u;
    switch (law) {
      case Law::Additive:
        u = s_const(-1, nvars);
        break;
      case Law::Multiplicative: {
        u.add_term(SKey{root_coord[pos_root_id], 0}, -1);
        break;
      }
      case Law::TruncatedCustom: {
        auto q = div_chern(chern_root(rs->neg[pos_root_id]), pos_root_id);
        assert(q.has_value());
        u = *q;
        break;
      }
    }
    assert((chern_root(rs->neg[pos_root_id]) - mul(u, chern_root(pos_root_id)))
               .is_zero());
    neg_unit_cache[pos_root_id] = u;
    neg_unit_inv_cache[pos_root_id] = invert_unit(u);
    neg_unit_cached[pos_root_id] = 1;
  }
  return neg_unit_cache[pos_root_id];
}

SElem FglContext::neg_unit_inv(int pos_root_id) const {
  neg_unit(pos_root_id);
  return neg_unit_inv_cache[pos_root_id];
}

SElem FglContext::act(int w, const SElem& s) const {
  const auto& M = latmat[w];
  if (law == Law::Multiplicative) {
    SElem r;
    for (const auto& [k, c] : s.t) {
      std::vector<int> nv(nvars, 0);
      for (int i = 0; i < nvars; ++i) {
        long acc = 0;
        for (int j = 0; j < nvars; ++j) acc += M[i][j] * k.v[j];
        nv[i] = int(acc);
      }
      r.add_term(SKey{nv, k.b}, c);
    }
    return r;
  }
  // Polynomial modes: substitute the image series of each coordinate.
  std::vector<SElem> img(nvars);
  for (int i = 0; i < nvars; ++i) {
    std::vector<int> col(nvars);
    for (int j = 0; j < nvars; ++j) col[j] = int(M[j][i]);
    img[i] = chern(col);
  }
  SElem r;
  for (const auto& [k, c] : s.t) {
    SElem term = s_const(c, nvars);
    for (int i = 0; i < nvars; ++i)
      if (k.v[i] != 0) term = mul(term, pow(img[i], k.v[i]));
    r = r + term;
  }
  return r;
}

bool FglContext::invariant(const SElem& s, uint32_t theta) const {
  for (int j = 0; j < rs->rank; ++j)
    if (theta & (1u << j))
      if (!(act(W->simple_elem[j], s) == s)) return false;
  return true;
}

std::optional<SElem> FglContext::div_chern(const SElem& s, int pos_root_id) const {
  assert(rs->is_positive(pos_root_id));
  if (s.is_zero()) return SElem{};
  switch (law) {
    case Law::Additive:
      return linear_divide(s, chern_root(pos_root_id));
    case Law::Multiplicative: {
      // s / x_alpha = (b*s) / (1 - e^{-alpha}); rotate alpha to g*e1 by a
      // unimodular change of lattice basis, then divide 1 - t1^{-g} off
      // each univariate slice.
      std::vector<long> lam(root_coord[pos_root_id].begin(),
                            root_coord[pos_root_id].end());
      auto [U, V] = unimodular_to_e1(lam);
      long g = 0;
      for (int j = 0; j < nvars; ++j) g += U[0][j] * lam[j];
      assert(g > 0);
      std::map<std::pair<std::vector<int>, int>, std::map<long, Rat>> slices;
      for (const auto& [k, c] : s.t) {
        std::vector<int> tv = mat_apply(U, k.v);
        std::vector<int> tail(tv.begin() + 1, tv.end());
        slices[{tail, k.b + 1}][tv[0]] += c;
      }
      SElem q;
      for (auto& [group, poly] : slices) {
        for (auto it = poly.begin(); it != poly.end();)
          it = it->second == 0 ? poly.erase(it) : std::next(it);
        if (poly.empty()) continue;
        // Divisible by 1 - t^{-g} iff each residue class sums to zero.
        std::map<long, Rat> cls;
        for (const auto& [e, c] : poly) cls[((e % g) + g) % g] += c;
        for (const auto& [cl, sum] : cls)
          if (sum != 0) return std::nullopt;
        long guard = 0;
        while (!poly.empty()) {
          ++guard;
          assert(guard < 1000000);
          auto top = std::prev(poly.end());
          long e = top->first;
          Rat c = top->second;
          std::vector<int> full(nvars);
          full[0] = int(e);
          for (int j = 1; j < nvars; ++j) full[j] = group.first[j - 1];
          std::vector<int> back = mat_apply(V, full);
          q.add_term(SKey{back, group.second}, c);
          poly.erase(top);
          auto lo = poly.find(e - g);
          if (lo == poly.end()) {
            poly.emplace(e - g, c);
          } else {
            lo->second += c;
            if (lo->second == 0) poly.erase(lo);
          }
        }
      }
      assert((mul(q, chern_root(pos_root_id)) - s).is_zero());
      return q;
    }
    case Law::TruncatedCustom: {
      SElem X = chern_root(pos_root_id);
      SElem lin = homogeneous_part(X, 1);
      assert(!lin.is_zero());
      SElem q, rem = s;
      while (!rem.is_zero()) {
        long d = min_degree(rem);
        if (d == 0) return std::nullopt;
        auto qd = linear_divide(homogeneous_part(rem, d), lin);
        if (!qd) return std::nullopt;
        q = q + *qd;
        rem = truncate(rem - mul(*qd, X));
      }
      return q;
    }
  }
  return std::nullopt;
}

bool FglContext::divisible(const SElem& s, int pos_root_id) const {
  return div_chern(s, pos_root_id).has_value();
}

QElem FglContext::reduce(QElem q) const {
  if (q.num.is_zero()) {
    q.den.clear();
    return q;
  }
  bool progress = true;
  while (progress) {
    progress = false;
    for (auto it = q.den.begin(); it != q.den.end(); ++it) {
      auto d = div_chern(q.num, *it);
      if (d) {
        q.num = *d;
        q.den.erase(it);
        progress = true;
        break;
      }
    }
  }
  return q;
}

QElem FglContext::qadd(const QElem& a, const QElem& b) const {
  std::multiset<int> u;
  {
    auto ia = a.den.begin();
    auto ib = b.den.begin();
    while (ia != a.den.end() || ib != b.den.end()) {
      if (ib == b.den.end() || (ia != a.den.end() && *ia < *ib)) {
        u.insert(*ia++);
      } else if (ia == a.den.end() || *ib < *ia) {
        u.insert(*ib++);
      } else {
        u.insert(*ia++);
        ++ib;
      }
    }
  }
  auto lift = [&](const QElem& x) {
    SElem n = x.num;
    std::multiset<int> extra = u;
    for (int id : x.den) extra.erase(extra.find(id));
    for (int id : extra) n = mul(n, chern_root(id));
    return n;
  };
  return reduce(QElem{lift(a) + lift(b), u});
}

QElem FglContext::qsub(const QElem& a, const QElem& b) const {
  return qadd(a, qneg(b));
}

QElem FglContext::qmul(const QElem& a, const QElem& b) const {
  std::multiset<int> d = a.den;
  d.insert(b.den.begin(), b.den.end());
  return reduce(QElem{mul(a.num, b.num), d});
}

QElem FglContext::qneg(QElem a) const {
  a.num = -a.num;
  return a;
}

bool FglContext::qeq(const QElem& a, const QElem& b) const {
  SElem lhs = a.num, rhs = b.num;
  for (int id : b.den) lhs = mul(lhs, chern_root(id));
  for (int id : a.den) rhs = mul(rhs, chern_root(id));
  return lhs == rhs;
}

QElem FglContext::qinv_chern(int root_id) const {
  if (rs->is_positive(root_id)) return QElem{s_const(1, nvars), {root_id}};
  int p = rs->neg[root_id];
  return QElem{neg_unit_inv(p), {p}};
}

QElem FglContext::qact(int w, const QElem& a) const {
  SElem n = act(w, a.num);
  std::multiset<int> d;
  for (int id : a.den) {
    int r = W->root_act[w][id];
    if (rs->is_positive(r)) {
      d.insert(r);
    } else {
      int p = rs->neg[r];
      n = mul(n, neg_unit_inv(p));
      d.insert(p);
    }
  }
  return reduce(QElem{n, d});
}

std::string FglContext::str(const SElem& s) const {
  if (s.is_zero()) return "0";
  // Group-ring elements read best with the scalar part leading.
  std::vector<std::pair<SKey, Rat>> terms(s.t.begin(), s.t.end());
  if (law == Law::Multiplicative) std::reverse(terms.begin(), terms.end());
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms) {
    Rat a = c;
    if (first) {
      if (a < 0) {
        os << "-";
        a = -a;
      }
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    std::vector<std::string> parts;
    if (k.b != 0) parts.push_back("b^" + std::to_string(k.b));
    if (law == Law::Multiplicative) {
      bool nz = false;
      for (int e : k.v) nz |= e != 0;
      if (nz) {
        std::string ex = "e[";
        for (int i = 0; i < nvars; ++i)
          ex += (i ? "," : "") + std::to_string(k.v[i]);
        parts.push_back(ex + "]");
      }
    } else {
      for (int i = 0; i < nvars; ++i) {
        if (k.v[i] == 0) continue;
        std::string p = "z" + std::to_string(i + 1);
        if (k.v[i] != 1) p += "^" + std::to_string(k.v[i]);
        parts.push_back(p);
      }
    }
    std::string mono;
    for (const auto& p : parts) mono += (mono.empty() ? "" : "*") + p;
    if (mono.empty()) {
      os << a.get_str();
    } else if (a == 1) {
      os << mono;
    } else {
      os << a.get_str() << "*" << mono;
    }
    first = false;
  }
  return os.str();
}

std::string FglContext::qstr(const QElem& q) const {
  if (q.den.empty()) return str(q.num);
  std::string d;
  for (int id : q.den)
    d += (d.empty() ? "" : "*") + ("x(" + vec_str(rs->roots[id]) + ")");
  return "(" + str(q.num) + ") / (" + d + ")";
}

FglContext make_context(const RootSystem& rs, const WeylGroup& W, Law law,
                        Lattice lattice, int trunc,
                        std::map<std::pair<int, int>, Rat> coeff) {
  FglContext ctx;
  ctx.rs = &rs;
  ctx.W = &W;
  ctx.law = law;
  ctx.lattice = lattice;
  ctx.nvars = rs.rank;
  ctx.trunc = trunc;
  ctx.coeff = std::move(coeff);

  ctx.root_coord.resize(rs.roots.size());
  for (size_t id = 0; id < rs.roots.size(); ++id) {
    const auto& src =
        lattice == Lattice::Weight ? rs.weight_coords[id] : rs.simple_coords[id];
    ctx.root_coord[id].assign(src.begin(), src.end());
  }

  ctx.latmat.resize(W.n);
  for (int w = 0; w < W.n; ++w) {
    Mat M(rs.rank, std::vector<long>(rs.rank, 0));
    if (lattice == Lattice::Root) {
      for (int j = 0; j < rs.rank; ++j) {
        int img = W.root_act[w][rs.simple[j]];
        for (int i = 0; i < rs.rank; ++i) M[i][j] = rs.simple_coords[img][i];
      }
    } else {
      for (int j = 0; j < rs.rank; ++j) {
        QVec img = W.act(w, rs.fund_weights[j]);
        QVec pv = rs.pairing_vector(img);
        for (int i = 0; i < rs.rank; ++i) {
          assert(pv[i].b == 0 && pv[i].a.get_den() == 1);
          M[i][j] = pv[i].a.get_num().get_si();
        }
      }
    }
    ctx.latmat[w] = std::move(M);
  }
  return ctx;
}

std::map<std::pair<int, int>, Rat> multiplicative_coefficients(const Rat& beta) {
  return {{{1, 1}, -beta}};
}

}  // namespace gkm
