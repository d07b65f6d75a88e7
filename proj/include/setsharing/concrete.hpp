#pragma once

#include <set>

#include "setsharing/exsubst.hpp"

namespace setsharing {

// Raised when an analysis reaches Top: the engine never legitimately mixes
// variable-of-interest sets, so Top indicates an internal defect, not a
// program property.
struct AnalysisError : std::runtime_error {
  explicit AnalysisError(const std::string& msg) : std::runtime_error(msg) {}
};

// The concrete collecting domain: Bot | Top | a finite set of existential
// substitutions over a common set of variables of interest.
class PsubElem {
 public:
  static PsubElem bot();
  static PsubElem top();
  static PsubElem make(std::set<ExSubst> substs, VarSet u);
  // Convenience: the singleton of [theta]_U.
  static PsubElem of(const Substitution& theta, const VarSet& u);

  bool is_bot() const { return kind_ == Kind::bot; }
  bool is_top() const { return kind_ == Kind::top; }
  bool is_set() const { return kind_ == Kind::set; }

  const std::set<ExSubst>& substs() const;
  const VarSet& interest() const;

  friend bool operator==(const PsubElem& a, const PsubElem& b);
  friend bool operator!=(const PsubElem& a, const PsubElem& b) { return !(a == b); }
  friend bool operator<(const PsubElem& a, const PsubElem& b);

 private:
  enum class Kind { bot, top, set };
  Kind kind_ = Kind::bot;
  std::set<ExSubst> substs_;
  VarSet u_;
};

// a included in b (same U and subset of members); Bot least, Top greatest.
bool ps_leq(const PsubElem& a, const PsubElem& b);

// Least upper bound: union of members when the U's agree, Top otherwise.
PsubElem ps_lub(const PsubElem& a, const PsubElem& b);

// Pointwise projection onto V.
PsubElem ps_project(const PsubElem& a, const VarSet& v);

// Pointwise mgu with [delta]_{vars(delta)}; members that fail to unify are
// dropped. delta may mention variables outside U; the result is over
// U u vars(delta). delta must be idempotent.
PsubElem ps_unif(const PsubElem& a, const Substitution& delta);

// Enlarges the variables of interest to U u V; the new variables are unused
// in every member.
PsubElem ps_iota(const PsubElem& a, const VarSet& v);

// Pointwise renaming.
PsubElem ps_rename(const Renaming& rho, const PsubElem& a);

// Matching: unifies pairs (e1, e2) only when e1 is an instance of e2 on the
// shared variables of interest.
PsubElem ps_match(const PsubElem& a, const PsubElem& b);

// Forward unification: entry description over vars(a2) for a call described
// by chi over U (vars(a1) must be within U). Bot when the atoms clash.
PsubElem ps_forward(const PsubElem& chi, const Atom& a1, const Atom& a2);

// Backward unification via matching: answer description over
// U2 u vars(a2) from the exit (over U1, vars(a1) within U1) and the call
// (over U2, vars(a2) within U2).
PsubElem ps_backward(const PsubElem& exit, const PsubElem& call, const Atom& a1, const Atom& a2);

// The unification-based backward variant (no instance filter), kept for
// precision comparison.
PsubElem ps_backward_unif(const PsubElem& exit, const PsubElem& call, const Atom& a1,
                          const Atom& a2);

std::string to_string(const PsubElem& a);

}  // namespace setsharing
