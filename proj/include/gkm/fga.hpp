#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gkm/root_system.hpp"
#include "gkm/weyl.hpp"

namespace gkm {

enum class Law { Additive, Multiplicative, TruncatedCustom };
enum class Lattice { Weight, Root };

std::string law_str(Law l);
Law law_parse(const std::string& s);  // throws WrongType
Lattice lattice_parse(const std::string& s);

// Monomial key.  Polynomial modes (Additive, TruncatedCustom): v holds the
// exponents of the coordinate variables z_1..z_r and b == 0.  Multiplicative
// mode: v is a lattice point (entries of either sign) and b is the exponent
// of the invertible scalar symbol; the monomial means b^{key.b} e^{v}.
struct SKey {
  std::vector<int> v;
  int b = 0;

  long total() const {
    long t = 0;
    for (int e : v) t += e;
    return t;
  }
  bool operator==(const SKey& o) const { return b == o.b && v == o.v; }
  bool operator<(const SKey& o) const {
    if (b != o.b) return b < o.b;
    long ta = total(), tb = o.total();
    if (ta != tb) return ta < tb;
    return o.v < v;  // low degree first, then z1 before z2
  }
};

// Element of S in canonical form: sorted terms, no zero coefficients.
struct SElem {
  std::map<SKey, Rat> t;

  bool is_zero() const { return t.empty(); }
  bool operator==(const SElem& o) const { return t == o.t; }

  SElem& add_term(const SKey& k, const Rat& c);
  SElem operator+(const SElem& o) const;
  SElem operator-(const SElem& o) const;
  SElem operator-() const;
  SElem scaled(const Rat& c) const;
};

SElem s_const(const Rat& c, int nvars);

// Element of the localization Q = S[1/x_alpha]: num / prod of x_alpha over
// the positive-root ids in den (with multiplicity).
struct QElem {
  SElem num;
  std::multiset<int> den;

  bool is_zero() const { return num.is_zero(); }
};

// Per-root-system arithmetic context: formal group law, lattice choice,
// integer matrices of the Weyl action on lattice coordinates, caches.
struct FglContext {
  const RootSystem* rs = nullptr;
  const WeylGroup* W = nullptr;
  Law law = Law::Additive;
  Lattice lattice = Lattice::Weight;
  int nvars = 0;
  int trunc = 8;                             // TruncatedCustom modulus
  std::map<std::pair<int, int>, Rat> coeff;  // a_ij of the custom law, i,j >= 1

  std::vector<std::vector<std::vector<long>>> latmat;  // per element
  std::vector<std::vector<int>> root_coord;            // per root id

  // Lazy caches.
  mutable std::vector<SElem> chern_cache;
  mutable std::vector<char> chern_cached;
  mutable std::map<std::vector<int>, SElem> chern_memo;
  mutable std::vector<SElem> neg_unit_cache, neg_unit_inv_cache;
  mutable std::vector<char> neg_unit_cached;

  // Ring operations beyond the plain +/- on SElem.
  SElem truncate(SElem s) const;
  SElem mul(const SElem& a, const SElem& b) const;
  SElem pow(const SElem& a, int k) const;
  long min_degree(const SElem& s) const;  // LONG_MAX on zero

  // Formal group law.
  SElem chern(const std::vector<int>& coords) const;  // x_lambda
  SElem chern_root(int root_id) const;                // x_alpha, cached
  SElem formal_sum(const SElem& a, const SElem& b) const;
  SElem formal_neg(const SElem& a) const;
  SElem neg_unit(int pos_root_id) const;      // u with x_{-a} = u x_a
  SElem neg_unit_inv(int pos_root_id) const;  // u^{-1}
  SElem invert_unit(const SElem& s) const;    // throws NonUnit

  // Weyl action and invariance.
  SElem act(int w, const SElem& s) const;
  bool invariant(const SElem& s, uint32_t theta) const;

  // Exact division by x_alpha (alpha positive); absent when not divisible.
  std::optional<SElem> div_chern(const SElem& s, int pos_root_id) const;
  bool divisible(const SElem& s, int pos_root_id) const;

  // Localization arithmetic.  Fractions are kept reduced.
  QElem q(SElem s) const { return reduce(QElem{std::move(s), {}}); }
  QElem reduce(QElem q) const;
  QElem qadd(const QElem& a, const QElem& b) const;
  QElem qsub(const QElem& a, const QElem& b) const;
  QElem qmul(const QElem& a, const QElem& b) const;
  QElem qneg(QElem a) const;
  bool qeq(const QElem& a, const QElem& b) const;  // cross-multiplied
  // 1/x_alpha for a root id of either sign, as a QElem factor.
  QElem qinv_chern(int root_id) const;
  QElem qact(int w, const QElem& a) const;

  // Deterministic text form.
  std::string str(const SElem& s) const;
  std::string qstr(const QElem& q) const;
};

FglContext make_context(const RootSystem& rs, const WeylGroup& W,
                        Law law = Law::Additive,
                        Lattice lattice = Lattice::Weight, int trunc = 8,
                        std::map<std::pair<int, int>, Rat> coeff = {});

// The multiplicative law x + y - bxy as a TruncatedCustom coefficient table,
// for cross-checking the two representations.
std::map<std::pair<int, int>, Rat> multiplicative_coefficients(const Rat& beta);

}  // namespace gkm
