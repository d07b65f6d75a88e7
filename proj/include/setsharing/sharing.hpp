#pragma once

#include "setsharing/concrete.hpp"

namespace setsharing {

using SharingGroup = VarSet;
using GroupSet = std::set<SharingGroup>;
using Binding = std::pair<VarId, Term>;

// The set-sharing abstract domain: Bot | Top | a set S of sharing groups
// over U, with B within U for every group and the membership invariant
// S nonempty => empty group in S.
class SharingElem {
 public:
  static SharingElem bot();
  static SharingElem top();
  static SharingElem make(GroupSet groups, VarSet u);

  bool is_bot() const { return kind_ == Kind::bot; }
  bool is_top() const { return kind_ == Kind::top; }
  bool is_sh() const { return kind_ == Kind::sh; }

  const GroupSet& groups() const;
  const VarSet& interest() const;

  friend bool operator==(const SharingElem& a, const SharingElem& b);
  friend bool operator!=(const SharingElem& a, const SharingElem& b) { return !(a == b); }
  friend bool operator<(const SharingElem& a, const SharingElem& b);

 private:
  enum class Kind { bot, top, sh };
  Kind kind_ = Kind::bot;
  GroupSet groups_;
  VarSet u_;
};

bool sh_leq(const SharingElem& a, const SharingElem& b);
SharingElem sh_lub(const SharingElem& a, const SharingElem& b);

// Abstraction of a single class: the sharing groups are occ(sigma, y) n U
// for y ranging over the representative's variables plus one variable
// outside them (which contributes the empty group).
SharingElem alpha(const ExSubst& e);
// Pointwise lift: Bot/Top preserved, sets joined member by member.
SharingElem alpha(const PsubElem& a);

// Membership in the concretization, decided through alpha. The element and
// the class must agree on the variables of interest.
bool gamma_contains(const SharingElem& sh, const ExSubst& e);

// One witness class per sharing group (group variables aliased to a shared
// fresh variable, the rest of U grounded); alpha of the witness set
// reproduces the element exactly.
std::set<ExSubst> gamma_witnesses(const SharingElem& sh);

// A single class realizing all the groups at once: each variable is bound to
// a tuple of the fresh variables of the groups containing it, so alpha of
// the result is exactly the element. Empty for Bot/Top/the empty element.
std::optional<ExSubst> gamma_joint_witness(const SharingElem& sh);

SharingElem sh_project(const SharingElem& a, const VarSet& v);
SharingElem sh_rename(const Renaming& rho, const SharingElem& a);
SharingElem sh_iota(const SharingElem& a, const VarSet& v);

// Combinators of abstract unification.
GroupSet rel(const GroupSet& a, const VarSet& v);
GroupSet bin(const GroupSet& a, const GroupSet& b);
GroupSet star(const GroupSet& a);

// Standard one-binding-at-a-time abstract unification kernel; bindings are
// processed in the given order (the result can depend on it).
GroupSet u_sh_std(GroupSet s, const std::vector<Binding>& bindings);

// Refined kernel threading the set of variables known to be free and
// independent; `refined` additionally narrows rel(S, Y) to the groups fully
// contained in Y (result unchanged, fewer intermediate groups).
GroupSet u_sh_f(GroupSet s, VarSet free_vars, const std::vector<Binding>& bindings,
                bool refined = true);

// Standard abstract unification; requires vars(delta) within U.
SharingElem sh_unif_std(const SharingElem& a, const Substitution& delta);
SharingElem sh_unif_std_ordered(const SharingElem& a, const std::vector<Binding>& bindings);

// Optimal abstract unification: new variables of theta enter as free
// singletons and the refined kernel exploits their freeness/linearity. theta
// must be idempotent. The result does not depend on the binding order.
SharingElem sh_unif_opt(const SharingElem& a, const Substitution& theta, bool refined = true);
SharingElem sh_unif_opt_ordered(const SharingElem& a, const std::vector<Binding>& bindings,
                                bool refined = true);

// Optimal abstract matching.
SharingElem sh_match(const SharingElem& a, const SharingElem& b);

// Forward unification, optimal and standard variants. vars(a1) must be
// within the call's variables of interest; Bot on head clash.
SharingElem sh_forward_opt(const SharingElem& chi, const Atom& a1, const Atom& a2);
SharingElem sh_forward_std(const SharingElem& chi, const Atom& a1, const Atom& a2);

// Backward unification, matching-based (optimal) and unification-based
// (standard) variants.
SharingElem sh_backward_opt(const SharingElem& exit, const SharingElem& call, const Atom& a1,
                            const Atom& a2);
SharingElem sh_backward_std(const SharingElem& exit, const SharingElem& call, const Atom& a1,
                            const Atom& a2);

// Deterministic binding order used when a Substitution is exploded.
std::vector<Binding> bindings_of(const Substitution& theta);

// Renders as `{x y, y z}`: groups sorted by size then lexicographically,
// the empty group omitted.
std::string to_string(const SharingElem& a);
std::string group_to_string(const SharingGroup& g);

}  // namespace setsharing
