#pragma once

#include "setsharing/sharing.hpp"

namespace setsharing {

// Realizability machinery behind the optimality of sh_unif_opt: for every
// group X in the operator's output there is a single concrete substitution
// delta, no more instantiated than the input element, whose unification with
// theta produces X.

// The relation deciding whether two input groups can be merged into X by
// unifying with theta: some x1 in B1 and x2 in B2 whose theta-images share a
// variable of X, with a double occurrence required when x1 = x2.
bool related(const SharingGroup& b1, const SharingGroup& b2, const Substitution& theta,
             const SharingGroup& x);

struct WitnessPlan {
  SharingGroup target;                  // X
  std::vector<SharingGroup> cover;      // K1: groups of S1 covering X n U1
  std::map<SharingGroup, VarId> w;      // one fresh variable per cover group
  std::map<VarId, VarId> carrier;       // x_y for y in vars(theta(U1)) n X
  size_t width = 0;                     // N: max |rel(K1, x)| over x in X n U1
};

// Finds a cover of X n U1 by groups of S1 that is connected under the
// transitive closure of `related`, or reports none. For X produced by
// sh_unif_opt a plan always exists.
std::optional<WitnessPlan> connected_decomposition(const GroupSet& s1, const VarSet& u1,
                                                   const Substitution& theta,
                                                   const SharingGroup& x);

// The substitution delta realizing the plan: each occurrence of a range
// variable of theta is replaced by a tower of reserved-symbol terms carrying
// the per-group fresh variables, arranged so that unifying with theta merges
// exactly the cover. dom(delta) is U1 and alpha([delta]_U1) has group set
// K1 plus the empty group.
Substitution build_witness(const WitnessPlan& plan, const Substitution& theta, const VarSet& u1);

// Re-derives the optimality claim through the exsubst and sharing layers:
// alpha([delta]_U1) within [S1, U1], and X among the groups of
// alpha(mgu([delta]_U1, [theta]_U)).
bool check_witness(const Substitution& delta, const Substitution& theta, const GroupSet& s1,
                   const VarSet& u1, const SharingGroup& x);

}  // namespace setsharing
