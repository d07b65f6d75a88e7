#pragma once

#include "setsharing/exsubst.hpp"

namespace setsharing {

struct SldAnswer {
  ExSubst answer;  // computed answer restricted to vars(goal), as a class
  int length;      // number of resolution steps of the shortest refutation
};

// Depth-bounded leftmost SLD resolution: all refutations of length at most
// max_depth, enumerated breadth-first over clause choices, with each clause
// renamed apart through the fresh supply at every step. `init` instantiates
// the goal before resolution starts; answers are the classes of
// (sigma_n o ... o sigma_1 o init) over vars(goal), deduplicated.
std::vector<SldAnswer> sld_solve(const Program& p, const Goal& g, const Substitution& init,
                                 int max_depth);

inline std::vector<SldAnswer> sld_solve(const Program& p, const Goal& g, int max_depth) {
  return sld_solve(p, g, Substitution(), max_depth);
}

}  // namespace setsharing
