#include "gkm/root_system.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <nlohmann/json.hpp>

#include "gkm/errors.hpp"

namespace gkm {

std::string kind_str(Kind k) {
  switch (k) {
    case Kind::A: return "A";
    case Kind::B: return "B";
    case Kind::C: return "C";
    case Kind::D: return "D";
    case Kind::G2: return "G2";
  }
  return "?";
}

Kind kind_parse(const std::string& s) {
  if (s == "A" || s == "a") return Kind::A;
  if (s == "B" || s == "b") return Kind::B;
  if (s == "C" || s == "c") return Kind::C;
  if (s == "D" || s == "d") return Kind::D;
  if (s == "G2" || s == "g2" || s == "G" || s == "g") return Kind::G2;
  throw WrongType("unknown root system kind: " + s);
}

namespace {

std::string vec_key(const QVec& v) {
  std::string s;
  for (const auto& q : v) {
    s += q.a.get_str();
    s += ':';
    s += q.b.get_str();
    s += ';';
  }
  return s;
}

QVec basis_vec(int dim, int i, Quad c = Quad(1)) {
  QVec v(dim, Quad(0));
  v[i] = c;
  return v;
}

bool lex_less(const QVec& x, const QVec& y) {
  for (size_t i = 0; i < x.size(); ++i) {
    int s = (x[i] - y[i]).sgn();
    if (s < 0) return true;
    if (s > 0) return false;
  }
  return false;
}

}  // namespace

QVec RootSystem::reflect(int root_id, const QVec& v) const {
  const QVec& a = roots[root_id];
  Quad c = (dot(v, a) / dot(a, a)) * Quad(2);
  return v - c * a;
}

int RootSystem::reflect_root(int root_id, int other_id) const {
  int r = find_root(reflect(root_id, roots[other_id]));
  assert(r >= 0);
  return r;
}

int RootSystem::find_root(const QVec& v) const {
  auto it = root_index.find(vec_key(v));
  return it == root_index.end() ? -1 : it->second;
}

QVec RootSystem::pairing_vector(const QVec& v) const {
  QVec out(rank);
  for (int i = 0; i < rank; ++i) {
    const QVec& a = simple_root(i);
    out[i] = dot(v, a) / dot(a, a) * Quad(2);
  }
  return out;
}

bool RootSystem::support_in(int id, uint32_t theta) const {
  const auto& sc = simple_coords[id];
  for (int i = 0; i < rank; ++i)
    if (sc[i] != 0 && !(theta & (1u << i))) return false;
  return true;
}

QVec RootSystem::dominant_weight(uint32_t theta) const {
  auto in = [&](int i) { return (theta & (1u << i)) != 0; };
  if (kind == Kind::G2) {
    QVec th(dim, Quad(0));
    for (int i = 0; i < rank; ++i)
      if (!in(i)) th = th + fund_weights[i];
    return th;
  }
  // Non-increasing integer coordinates; equal steps exactly on theta.
  QVec th(dim, Quad(0));
  int n = rank;
  if (kind == Kind::A) {
    th[n] = Quad(0);
    for (int i = n - 1; i >= 0; --i)
      th[i] = th[i + 1] + Quad(in(i) ? 0 : 1);
  } else if (kind == Kind::B || kind == Kind::C) {
    th[n - 1] = Quad(in(n - 1) ? 0 : 1);
    for (int i = n - 2; i >= 0; --i)
      th[i] = th[i + 1] + Quad(in(i) ? 0 : 1);
  } else {  // D
    bool pn1 = in(n - 2), pn = in(n - 1);
    if (pn1 && pn) {
      th[n - 2] = Quad(0);
      th[n - 1] = Quad(0);
    } else if (pn1) {
      th[n - 2] = Quad(1);
      th[n - 1] = Quad(1);
    } else if (pn) {
      th[n - 2] = Quad(1);
      th[n - 1] = Quad(-1);
    } else {
      th[n - 2] = Quad(2);
      th[n - 1] = Quad(1);
    }
    for (int i = n - 3; i >= 0; --i)
      th[i] = th[i + 1] + Quad(in(i) ? 0 : 1);
  }
  return th;
}

RootSystem build_root_system(Kind kind, int rank) {
  switch (kind) {
    case Kind::A:
      if (rank < 1) throw InvalidRank("type A needs rank >= 1");
      break;
    case Kind::B:
    case Kind::C:
      if (rank < 2) throw InvalidRank("types B, C need rank >= 2");
      break;
    case Kind::D:
      if (rank < 4) throw InvalidRank("type D needs rank >= 4");
      break;
    case Kind::G2:
      if (rank != 2) throw InvalidRank("type G2 has rank exactly 2");
      break;
  }

  RootSystem rs;
  rs.kind = kind;
  rs.rank = rank;
  rs.dim = kind == Kind::A ? rank + 1 : (kind == Kind::G2 ? 2 : rank);

  std::vector<QVec> all;
  std::vector<QVec> simples;
  int n = rank, dim = rs.dim;

  auto e = [&](int i) { return basis_vec(dim, i); };

  if (kind == Kind::A) {
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        if (i != j) all.push_back(e(i) - e(j));
    for (int i = 0; i < n; ++i) simples.push_back(e(i) - e(i + 1));
  } else if (kind == Kind::B || kind == Kind::C || kind == Kind::D) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int si : {1, -1})
          for (int sj : {1, -1}) {
            QVec v(dim, Quad(0));
            v[i] = Quad(si);
            v[j] = Quad(sj);
            all.push_back(v);
          }
    if (kind == Kind::B)
      for (int i = 0; i < n; ++i)
        for (int s : {1, -1}) all.push_back(basis_vec(dim, i, Quad(s)));
    if (kind == Kind::C)
      for (int i = 0; i < n; ++i)
        for (int s : {1, -1}) all.push_back(basis_vec(dim, i, Quad(2 * s)));
    for (int i = 0; i + 1 < n; ++i) simples.push_back(e(i) - e(i + 1));
    if (kind == Kind::B)
      simples.push_back(e(n - 1));
    else if (kind == Kind::C)
      simples.push_back(basis_vec(dim, n - 1, Quad(2)));
    else
      simples.push_back(e(n - 2) + e(n - 1));
  } else {  // G2
    QVec a1 = {Quad(1), Quad(0)};
    QVec a2 = {Quad(Rat(-3, 2)), Quad(Rat(0), Rat(1, 2))};
    simples = {a1, a2};
    std::vector<std::pair<int, int>> pos = {{1, 0}, {0, 1}, {1, 1},
                                            {2, 1}, {3, 1}, {3, 2}};
    for (auto [c1, c2] : pos) {
      QVec v = Quad(c1) * a1 + Quad(c2) * a2;
      all.push_back(v);
      all.push_back(-v);
    }
  }

  // Coordinates in the simple basis, exact; used for sign/height/support.
  QMat smat(dim, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < dim; ++i) smat(i, j) = simples[j][i];
  // Least squares is unnecessary: roots lie in the span, so solve the
  // Gram system  G c = (a_i, v).
  QMat gram(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) gram(i, j) = dot(simples[i], simples[j]);

  auto simple_coord = [&](const QVec& v) {
    QVec rhs(n);
    for (int i = 0; i < n; ++i) rhs[i] = dot(simples[i], v);
    QVec c = solve_linear(gram, rhs);
    std::vector<long> out(n);
    for (int i = 0; i < n; ++i) {
      assert(c[i].is_rational());
      Rat r = c[i].a;
      assert(r.get_den() == 1 && "root has non-integral simple coordinates");
      out[i] = long(r.get_num().get_si());
    }
    return out;
  };

  struct Entry {
    QVec v;
    std::vector<long> sc;
    long h;
  };
  std::vector<Entry> entries;
  for (auto& v : all) {
    Entry en;
    en.sc = simple_coord(v);
    en.h = 0;
    for (long c : en.sc) en.h += c;
    en.v = v;
    entries.push_back(std::move(en));
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& x, const Entry& y) {
                     bool px = x.h > 0, py = y.h > 0;
                     if (px != py) return px;
                     long hx = std::abs(x.h), hy = std::abs(y.h);
                     if (hx != hy) return hx < hy;
                     return lex_less(x.v, y.v);
                   });

  rs.npos = int(entries.size()) / 2;
  for (int id = 0; id < int(entries.size()); ++id) {
    rs.roots.push_back(entries[id].v);
    rs.simple_coords.push_back(entries[id].sc);
    rs.height.push_back(entries[id].h);
    rs.root_index[vec_key(entries[id].v)] = id;
  }
  assert(int(rs.roots.size()) == 2 * rs.npos);
  for (int id = 0; id < 2 * rs.npos; ++id) {
    assert((id < rs.npos) == (rs.height[id] > 0));
    int nid = rs.find_root(-rs.roots[id]);
    assert(nid >= 0);
    rs.neg.push_back(nid);
  }

  rs.simple.resize(n);
  for (int i = 0; i < n; ++i) {
    int id = rs.find_root(simples[i]);
    assert(id >= 0);
    rs.simple[i] = id;
  }

  rs.cartan.assign(n, std::vector<long>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Quad c = dot(simples[j], simples[i]) / dot(simples[i], simples[i]) *
               Quad(2);
      assert(c.is_rational() && c.a.get_den() == 1);
      rs.cartan[i][j] = long(c.a.get_num().get_si());
    }

  for (int id = 0; id < 2 * rs.npos; ++id) {
    std::vector<long> wc(n);
    for (int i = 0; i < n; ++i) {
      long acc = 0;
      for (int j = 0; j < n; ++j) acc += rs.cartan[i][j] * rs.simple_coords[id][j];
      wc[i] = acc;
    }
    rs.weight_coords.push_back(std::move(wc));
  }

  // Fundamental weights solved inside the span of the simples:
  // omega_i = sum_j c_j alpha_j with <omega_i, alpha_k^vee> = delta_ik.
  for (int i = 0; i < n; ++i) {
    QMat M(n, n);
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) M(k, j) = Quad(rs.cartan[k][j]);
    QVec rhs(n, Quad(0));
    rhs[i] = Quad(1);
    QVec c = solve_linear(M, rhs);
    QVec w(dim, Quad(0));
    for (int j = 0; j < n; ++j) w = w + c[j] * simples[j];
    rs.fund_weights.push_back(w);
  }

  return rs;
}

nlohmann::json RootSystem::to_json() const {
  nlohmann::json j;
  j["kind"] = kind_str(kind);
  j["rank"] = rank;
  j["dim"] = dim;
  j["n_positive"] = npos;
  nlohmann::json jr = nlohmann::json::array();
  for (const auto& r : roots) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& c : r) row.push_back(c.str());
    jr.push_back(row);
  }
  j["roots"] = jr;
  j["simple"] = simple;
  return j;
}

}  // namespace gkm
