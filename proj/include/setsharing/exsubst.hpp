#pragma once

#include <optional>

#include "setsharing/subst.hpp"

namespace setsharing {

// An existential substitution: the equivalence class [theta]_U of
// substitutions that agree on the variables of interest U up to renaming of
// everything else. Stored as a canonical representative, so class equality
// is structural equality.
//
// Canonical form: dom(rep) = U; every variable occurring in a bound term is
// a normalized fresh variable not in U, numbered by first occurrence when
// traversing U in the global variable order and each term left to right
// (ids of fresh variables already in U are skipped).
class ExSubst {
 public:
  ExSubst() = default;

  // Builds the class of theta over U. Accepts non-idempotent theta; the
  // image theta(u) is taken literally (single application).
  static ExSubst canonicalize(const Substitution& theta, const VarSet& u);

  const Substitution& rep() const { return rep_; }
  const VarSet& interest() const { return u_; }

  // rep value of v, identity outside U.
  Term value(VarId v) const { return rep_.value(v); }

  friend bool operator==(const ExSubst& a, const ExSubst& b) {
    return a.u_ == b.u_ && a.rep_ == b.rep_;
  }
  friend bool operator!=(const ExSubst& a, const ExSubst& b) { return !(a == b); }
  friend bool operator<(const ExSubst& a, const ExSubst& b);

 private:
  Substitution rep_;
  VarSet u_;
};

// Decides theta1 ~_U theta2; sound and complete by the canonical-form
// invariant.
inline bool ex_equal(const ExSubst& a, const ExSubst& b) { return a == b; }

// Decides rep1 <=_W rep2 (e1 an instance of e2 on W): one-sided matching of
// e2's values against e1's, where e1's side is rigid.
bool ex_leq(const ExSubst& e1, const ExSubst& e2, const VarSet& w);

// pi_V([sigma]_U) = [sigma]_{U n V}.
ExSubst ex_project(const ExSubst& e, const VarSet& v);

// rho([sigma]_U) = [rho(sigma)]_{rho(U)}.
ExSubst ex_rename(const Renaming& rho, const ExSubst& e);

// Class-level mgu over U1 u U2; the glb of the instantiation order. The
// representatives' fresh ranges are redrawn so that
// (U1 u vars(rep1)) n (U2 u vars(rep2)) = U1 n U2, the side condition that
// makes the operation well defined.
std::optional<ExSubst> ex_mgu(const ExSubst& e1, const ExSubst& e2);

struct VarStatus {
  bool free = false;
  VarSet independent_of;  // variables of U sharing no range variable with x
  bool unused = false;    // free and independent of all of U
};

// Status of x in e; x must belong to e's variables of interest.
VarStatus var_status(const ExSubst& e, VarId x);

std::string to_string(const ExSubst& e);

}  // namespace setsharing
