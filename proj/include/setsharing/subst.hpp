#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "setsharing/syntax.hpp"

namespace setsharing {

// Finite map from variables to terms with the dom convention of first-order
// substitutions: theta(x) != x for every x in the map. Idempotency
// (dom and range variables disjoint) is a checkable predicate, not an
// invariant; composition legitimately produces non-idempotent results.
class Substitution {
 public:
  Substitution() = default;
  explicit Substitution(std::map<VarId, Term> bindings);

  static Substitution identity() { return Substitution(); }
  static Substitution single(VarId x, Term t);

  const std::map<VarId, Term>& bindings() const { return bindings_; }
  bool empty() const { return bindings_.empty(); }

  // theta(x): bound image or x itself.
  Term value(VarId x) const;
  bool binds(VarId x) const { return bindings_.count(x) != 0; }

  // Simultaneous replacement (single pass, no iteration to a fixpoint).
  Term apply(const Term& t) const;
  Atom apply(const Atom& a) const;
  Goal apply(const Goal& g) const;

  VarSet domain() const;
  VarSet range_vars() const;
  VarSet vars() const;  // dom union range vars
  bool is_idempotent() const;

  friend bool operator==(const Substitution& a, const Substitution& b) {
    return a.bindings_ == b.bindings_;
  }
  friend bool operator!=(const Substitution& a, const Substitution& b) { return !(a == b); }

 private:
  std::map<VarId, Term> bindings_;
};

// (theta . delta)(x) = theta(delta(x)); identity bindings dropped.
Substitution compose(const Substitution& theta, const Substitution& delta);

// theta restricted to U: identity outside U.
Substitution restrict_to(const Substitution& theta, const VarSet& u);

// theta restricted to dom(theta) \ U.
Substitution restrict_away(const Substitution& theta, const VarSet& u);

// occ(sigma, y) = { z | y in vars(sigma(z)) }; finite because z outside
// dom(sigma) contributes only z == y.
VarSet occ(const Substitution& sigma, VarId y);

// A variable-to-variable bijection, stored with its inverse.
class Renaming {
 public:
  Renaming() = default;

  // From explicit pairs (x -> y); fails (throws std::invalid_argument) if the
  // pairs do not extend to a bijection. Unmentioned sources map to
  // themselves; range variables not used as sources get the reverse mapping,
  // closing the bijection by swapping.
  static Renaming from_pairs(const std::vector<std::pair<VarId, VarId>>& pairs);

  // Maps each variable of `from` to a brand-new fresh variable.
  static Renaming fresh_for(const VarSet& from);

  VarId apply(VarId v) const;
  Term apply(const Term& t) const;
  Atom apply(const Atom& a) const;
  VarSet apply(const VarSet& vs) const;

  Renaming inverse() const;

  // rho(theta) = { rho(x) / rho(theta(x)) } (both sides renamed); equals
  // rho . theta . rho^-1 pointwise.
  Substitution apply_subst(const Substitution& theta) const;

 private:
  std::map<VarId, VarId> fwd_;
  std::map<VarId, VarId> inv_;
};

using Equation = std::pair<Term, Term>;
using EquationSet = std::vector<Equation>;

// Robinson unification with occurs check. Deterministic: equations are
// processed in list order, argument pairs left to right, variable
// orientation lhs-to-rhs. On success the result is idempotent with
// vars(sigma) contained in vars(E). Failure is a value, never an exception.
std::optional<Substitution> mgu_eqs(const EquationSet& eqs);

// mgu(Eq(s1) u ... u Eq(sn)) with Eq(s) = { x = s(x) | x in dom(s) }.
std::optional<Substitution> mgu_substs(const std::vector<Substitution>& substs);

// mgu of two atoms; fails on predicate or arity clash.
std::optional<Substitution> mgu_atoms(const Atom& a, const Atom& b);

std::string to_string(const Substitution& s);

}  // namespace setsharing
