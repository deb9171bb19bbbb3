#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>
#include <unordered_map>
#include <vector>

#include "gkm/scalar.hpp"

namespace gkm {

enum class Kind { A, B, C, D, G2 };

std::string kind_str(Kind k);
Kind kind_parse(const std::string& s);  // throws WrongType

// Crystallographic root system in an explicit ambient realization:
//   A_n : { e_i - e_j } in R^{n+1}, simples e_i - e_{i+1}
//   B_n : { ±e_i±e_j, ±e_i } in R^n, last simple e_n
//   C_n : { ±e_i±e_j, ±2e_i } in R^n, last simple 2e_n
//   D_n : { ±e_i±e_j } in R^n, last simple e_{n-1}+e_n
//   G_2 : planar, short simple (1,0), long simple (-3/2, √3/2)
// Roots are stored positives first; within each sign block sorted by
// (height, lexicographic ambient coordinates).
struct RootSystem {
  Kind kind;
  int rank;
  int dim;   // ambient dimension
  int npos;  // ids [0, npos) are the positive roots

  std::vector<QVec> roots;
  std::vector<int> simple;  // rank many ids into roots
  std::vector<int> neg;     // id of the negated root

  // Integer coordinates of every root in the simple basis / in the
  // fundamental-weight basis (the latter are the Cartan pairings).
  std::vector<std::vector<long>> simple_coords;
  std::vector<std::vector<long>> weight_coords;
  std::vector<long> height;  // sum of simple coordinates

  // cartan[i][j] = <alpha_j, alpha_i^vee>
  std::vector<std::vector<long>> cartan;
  // Fundamental weights, inside the span of the simple roots.
  std::vector<QVec> fund_weights;

  std::unordered_map<std::string, int> root_index;

  bool is_positive(int id) const { return id < npos; }
  const QVec& root(int id) const { return roots[id]; }
  const QVec& simple_root(int i) const { return roots[simple[i]]; }

  Quad inner(const QVec& x, const QVec& y) const { return dot(x, y); }

  // s_a(v) = v - <v, a^vee> a
  QVec reflect(int root_id, const QVec& v) const;
  int reflect_root(int root_id, int other_id) const;

  // id of the root with these coordinates, or -1.
  int find_root(const QVec& v) const;

  // <v, alpha_i^vee> for all i; integral for lattice vectors.
  QVec pairing_vector(const QVec& v) const;

  // Dominant vector whose stabilizer in W is exactly the standard parabolic
  // subgroup generated by { s_i : i in theta }.  Integral coordinates for
  // the classical types, exact Q(√3) coordinates for G2.
  QVec dominant_weight(uint32_t theta) const;

  // Simple-support test: all nonzero simple coordinates of `id` lie in theta.
  bool support_in(int id, uint32_t theta) const;

  nlohmann::json to_json() const;
};

// Throws InvalidRank unless: A n>=1, B n>=2, C n>=2, D n>=4, G2 n==2.
RootSystem build_root_system(Kind kind, int rank);

}  // namespace gkm
