#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "gkm/fga.hpp"
#include "gkm/moment_graph.hpp"
#include "gkm/root_system.hpp"

namespace gkm {

// Fully validated invocation parameters shared by every subcommand.
struct RunConfig {
  Kind kind = Kind::A;
  int rank = 2;
  uint32_t theta_q = 0;
  uint32_t theta_p = 0;
  Law law = Law::Additive;
  std::map<std::pair<int, int>, Rat> coeff;  // custom-law table
  Lattice lattice = Lattice::Weight;
  int trunc = 8;
  LabelPolicy policy = LabelPolicy::MinLabel;
  std::string format = "text";  // text | dot | json
  unsigned long long seed = 0;
};

// Simple-root subsets are 1-based comma-separated index lists; "" is the
// empty set and "all" the full set.  Throws WrongType on bad tokens.
uint32_t parse_theta(const std::string& s, int rank);
std::string subset_str(uint32_t theta, int rank);

// Exit status: 0 success, 1 usage error, 2 mathematical-domain error.
int run_cli(int argc, char** argv);

}  // namespace gkm
