#include "gkm/weyl.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <string>
#include <unordered_map>

#include "gkm/errors.hpp"

namespace gkm {

namespace {

QMat reflection_matrix(const RootSystem& rs, int root_id) {
  int d = rs.dim;
  QMat M(d, d);
  for (int j = 0; j < d; ++j) {
    QVec ej(d, Quad(0));
    ej[j] = Quad(1);
    QVec img = rs.reflect(root_id, ej);
    for (int i = 0; i < d; ++i) M(i, j) = img[i];
  }
  return M;
}

}  // namespace

int WeylGroup::mult(int a, int b) const {
  int r = a;
  for (int i : word[b]) r = right_gen[r][i];
  return r;
}

int WeylGroup::longest(uint32_t theta) const {
  int w = 0;
  for (;;) {
    bool moved = false;
    for (int i = 0; i < rs->rank; ++i) {
      if (!(theta & (1u << i))) continue;
      if (!right_descent(w, i)) {
        w = right_gen[w][i];
        moved = true;
      }
    }
    if (!moved) return w;
  }
}

WeylGroup build_weyl_group(const RootSystem& rs, int cap) {
  WeylGroup W;
  W.rs = &rs;
  int r = rs.rank;

  std::vector<QMat> gen(r);
  for (int i = 0; i < r; ++i) gen[i] = reflection_matrix(rs, rs.simple[i]);

  // Plain BFS enumeration by right multiplication.
  std::vector<QMat> mats;
  std::unordered_map<std::string, int> index;
  std::vector<std::vector<int>> rgen;
  mats.push_back(QMat::identity(rs.dim));
  index[mats[0].key()] = 0;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int w = queue.front();
    queue.pop_front();
    if (int(rgen.size()) <= w) rgen.resize(w + 1);
    rgen[w].assign(r, -1);
    for (int i = 0; i < r; ++i) {
      QMat m = mats[w] * gen[i];
      std::string k = m.key();
      auto it = index.find(k);
      int id;
      if (it == index.end()) {
        id = int(mats.size());
        if (id >= cap)
          throw GroupTooLarge("Weyl group exceeds enumeration cap");
        index.emplace(k, id);
        mats.push_back(std::move(m));
        queue.push_back(id);
      } else {
        id = it->second;
      }
      rgen[w][i] = id;
    }
  }
  int n = int(mats.size());
  rgen.resize(n);

  // Root permutation and length for each element, in BFS ids.
  int nroots = 2 * rs.npos;
  std::vector<std::vector<int>> ract(n, std::vector<int>(nroots));
  std::vector<int> len(n);
  for (int w = 0; w < n; ++w) {
    int inversions = 0;
    for (int a = 0; a < nroots; ++a) {
      int img = rs.find_root(mats[w].apply(rs.roots[a]));
      assert(img >= 0 && "Weyl action must permute the roots");
      ract[w][a] = img;
      if (a < rs.npos && img >= rs.npos) ++inversions;
    }
    len[w] = inversions;
  }

  // Lex-min reduced word: repeatedly strip the smallest left descent.
  // i is a left descent of w iff w^{-1}(alpha_i) < 0; build inverses first.
  std::vector<int> binv(n, -1);
  for (int w = 0; w < n; ++w) {
    std::string k = mats[w].transposed().key();
    auto it = index.find(k);
    assert(it != index.end() && "realization matrices must be orthogonal");
    binv[w] = it->second;
  }
  auto left_desc = [&](int w, int i) {
    return ract[binv[w]][rs.simple[i]] >= rs.npos;
  };
  std::vector<std::vector<int>> words(n);
  // s_i * w in BFS ids: w -> inverse trick is wasteful; iterate instead via
  // index of gen[i] * mats[w].
  auto left_mul = [&](int i, int w) {
    QMat m = gen[i] * mats[w];
    auto it = index.find(m.key());
    assert(it != index.end());
    return it->second;
  };
  for (int w0 = 0; w0 < n; ++w0) {
    int w = w0;
    std::vector<int> wd;
    while (w != 0) {
      int pick = -1;
      for (int i = 0; i < r; ++i)
        if (left_desc(w, i)) {
          pick = i;
          break;
        }
      assert(pick >= 0);
      wd.push_back(pick);
      w = left_mul(pick, w);
    }
    assert(int(wd.size()) == len[w0]);
    words[w0] = std::move(wd);
  }

  // Canonical order: (length, word).
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    if (len[x] != len[y]) return len[x] < len[y];
    return words[x] < words[y];
  });
  std::vector<int> newid(n);
  for (int i = 0; i < n; ++i) newid[order[i]] = i;

  W.n = n;
  W.mat.resize(n);
  W.length.resize(n);
  W.word.resize(n);
  W.right_gen.assign(n, std::vector<int>(r));
  W.left_gen.assign(n, std::vector<int>(r));
  W.inv.resize(n);
  W.root_act.resize(n);
  for (int old = 0; old < n; ++old) {
    int id = newid[old];
    W.mat[id] = mats[old];
    W.length[id] = len[old];
    W.word[id] = words[old];
    W.inv[id] = newid[binv[old]];
    W.root_act[id] = ract[old];
    for (int i = 0; i < r; ++i) {
      W.right_gen[id][i] = newid[rgen[old][i]];
      W.left_gen[id][i] = newid[left_mul(i, old)];
    }
  }
  assert(W.length[0] == 0);

  W.simple_elem.resize(r);
  for (int i = 0; i < r; ++i) {
    W.simple_elem[i] = W.right_gen[0][i];
    assert(W.length[W.simple_elem[i]] == 1);
  }
  W.refl.resize(rs.npos);
  for (int a = 0; a < rs.npos; ++a) {
    QMat m = reflection_matrix(rs, a);
    auto it = index.find(m.key());
    assert(it != index.end());
    W.refl[a] = newid[it->second];
  }

  // Bruhat order as bitsets: {x : x <= y} = {y} ∪ ⋃ {x : x <= s_a y} over
  // reflections with ell(s_a y) < ell(y) (strong exchange), so rows can be
  // filled in increasing length order.
  int nw = (n + 63) / 64;
  W.bruhat.assign(n, std::vector<uint64_t>(nw, 0));
  std::vector<int> bylen(n);
  for (int i = 0; i < n; ++i) bylen[i] = i;
  std::sort(bylen.begin(), bylen.end(),
            [&](int x, int y) { return W.length[x] < W.length[y]; });
  for (int y : bylen) {
    auto& row = W.bruhat[y];
    row[y >> 6] |= uint64_t(1) << (y & 63);
    for (int a = 0; a < rs.npos; ++a) {
      int x = W.mult(W.refl[a], y);
      if (W.length[x] < W.length[y]) {
        auto& lo = W.bruhat[x];
        for (int k = 0; k < nw; ++k) row[k] |= lo[k];
      }
    }
  }
  return W;
}

int project_min(const WeylGroup& W, uint32_t theta_p, int w) {
  for (;;) {
    int pick = -1;
    for (int i = 0; i < W.rs->rank; ++i)
      if ((theta_p & (1u << i)) && W.right_descent(w, i)) {
        pick = i;
        break;
      }
    if (pick < 0) return w;
    w = W.right_gen[w][pick];
  }
}

int project_min_double(const WeylGroup& W, uint32_t theta_q,
                       uint32_t theta_p, int w) {
  for (;;) {
    bool moved = false;
    for (;;) {
      int pick = -1;
      for (int i = 0; i < W.rs->rank; ++i)
        if ((theta_p & (1u << i)) && W.right_descent(w, i)) {
          pick = i;
          break;
        }
      if (pick < 0) break;
      w = W.right_gen[w][pick];
      moved = true;
    }
    for (;;) {
      int pick = -1;
      for (int i = 0; i < W.rs->rank; ++i)
        if ((theta_q & (1u << i)) && W.left_descent(w, i)) {
          pick = i;
          break;
        }
      if (pick < 0) break;
      w = W.left_gen[w][pick];
      moved = true;
    }
    if (!moved) return w;
  }
}

std::vector<int> parabolic_elements(const WeylGroup& W, uint32_t theta) {
  std::vector<char> seen(W.n, 0);
  std::vector<int> out;
  std::deque<int> queue{0};
  seen[0] = 1;
  while (!queue.empty()) {
    int w = queue.front();
    queue.pop_front();
    out.push_back(w);
    for (int i = 0; i < W.rs->rank; ++i) {
      if (!(theta & (1u << i))) continue;
      int x = W.right_gen[w][i];
      if (!seen[x]) {
        seen[x] = 1;
        queue.push_back(x);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

CosetTable make_coset_table(const WeylGroup& W, uint32_t theta) {
  CosetTable t;
  t.W = &W;
  t.theta = theta;
  t.proj.resize(W.n);
  t.rep_pos.assign(W.n, -1);
  for (int w = 0; w < W.n; ++w) t.proj[w] = project_min(W, theta, w);
  for (int w = 0; w < W.n; ++w)
    if (t.proj[w] == w) {
      t.rep_pos[w] = int(t.reps.size());
      t.reps.push_back(w);
    }
  t.sub = parabolic_elements(W, theta);
  assert(t.reps.size() * t.sub.size() == size_t(W.n));
  return t;
}

DoubleCosetTable make_double_coset_table(const WeylGroup& W, uint32_t theta_q,
                                         uint32_t theta_p) {
  DoubleCosetTable t;
  t.W = &W;
  t.theta_q = theta_q;
  t.theta_p = theta_p;
  t.proj.resize(W.n);
  t.rep_pos.assign(W.n, -1);
  for (int w = 0; w < W.n; ++w)
    t.proj[w] = project_min_double(W, theta_q, theta_p, w);
  for (int w = 0; w < W.n; ++w)
    if (t.proj[w] == w) {
      t.rep_pos[w] = int(t.reps.size());
      t.reps.push_back(w);
    }

  const RootSystem& rs = *W.rs;
  for (int u : t.reps) {
    // Theta_u = Theta_Q ∩ u(Sigma_P^+): j such that u^{-1}(alpha_j) is a
    // positive root supported on Theta_P.
    uint32_t mask = 0;
    for (int j = 0; j < rs.rank; ++j) {
      if (!(theta_q & (1u << j))) continue;
      int img = W.root_act[W.inv[u]][rs.simple[j]];
      if (rs.is_positive(img) && rs.support_in(img, theta_p))
        mask |= 1u << j;
    }
    t.theta_u.push_back(mask);
    t.w_u.push_back(parabolic_elements(W, mask));
    std::vector<int> mins;
    for (int w : parabolic_elements(W, theta_q)) {
      bool min = true;
      for (int j = 0; j < rs.rank && min; ++j)
        if ((mask & (1u << j)) && W.right_descent(w, j)) min = false;
      if (min) mins.push_back(w);
    }
    t.wq_u.push_back(std::move(mins));
  }
  return t;
}

DoubleDecomp double_parabolic_decompose(const WeylGroup& W,
                                        const DoubleCosetTable& t, int y) {
  int u = t.proj[y];
  int ybar = project_min(W, t.theta_p, y);
  int v = W.mult(W.inv[ybar], y);
  int w = W.mult(ybar, W.inv[u]);
  int pos = t.rep_pos[u];
  assert(pos >= 0);
  // w in W_Q^u and all lengths additive; these pin the decomposition.
  assert(W.length[w] + W.length[u] == W.length[ybar]);
  assert(W.length[ybar] + W.length[v] == W.length[y]);
  assert(std::binary_search(t.wq_u[pos].begin(), t.wq_u[pos].end(), w));
  return {w, u, v};
}

}  // namespace gkm
