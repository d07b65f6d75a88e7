#include "setsharing/concrete.hpp"

#include <sstream>

namespace setsharing {

PsubElem PsubElem::bot() { return PsubElem(); }

PsubElem PsubElem::top() {
  PsubElem e;
  e.kind_ = Kind::top;
  return e;
}

PsubElem PsubElem::make(std::set<ExSubst> substs, VarSet u) {
  for (const ExSubst& e : substs)
    if (e.interest() != u)
      throw AnalysisError("PsubElem member over a different set of variables of interest");
  PsubElem e;
  e.kind_ = Kind::set;
  e.substs_ = std::move(substs);
  e.u_ = std::move(u);
  return e;
}

PsubElem PsubElem::of(const Substitution& theta, const VarSet& u) {
  return make({ExSubst::canonicalize(theta, u)}, u);
}

const std::set<ExSubst>& PsubElem::substs() const {
  if (kind_ != Kind::set) throw AnalysisError("substs() on non-set Psub element");
  return substs_;
}

const VarSet& PsubElem::interest() const {
  if (kind_ != Kind::set) throw AnalysisError("interest() on non-set Psub element");
  return u_;
}

bool operator==(const PsubElem& a, const PsubElem& b) {
  if (a.kind_ != b.kind_) return false;
  if (a.kind_ != PsubElem::Kind::set) return true;
  return a.u_ == b.u_ && a.substs_ == b.substs_;
}

bool operator<(const PsubElem& a, const PsubElem& b) {
  if (a.kind_ != b.kind_) return a.kind_ < b.kind_;
  if (a.kind_ != PsubElem::Kind::set) return false;
  if (a.u_ != b.u_) return a.u_ < b.u_;
  return a.substs_ < b.substs_;
}

bool ps_leq(const PsubElem& a, const PsubElem& b) {
  if (a.is_bot() || b.is_top()) return true;
  if (b.is_bot() || a.is_top()) return false;
  if (a.interest() != b.interest()) return false;
  for (const ExSubst& e : a.substs())
    if (!b.substs().count(e)) return false;
  return true;
}

PsubElem ps_lub(const PsubElem& a, const PsubElem& b) {
  if (a.is_top() || b.is_top()) return PsubElem::top();
  if (a.is_bot()) return b;
  if (b.is_bot()) return a;
  if (a.interest() != b.interest()) return PsubElem::top();
  std::set<ExSubst> out = a.substs();
  out.insert(b.substs().begin(), b.substs().end());
  return PsubElem::make(std::move(out), a.interest());
}

namespace {

// Strictness/top propagation shared by all operations.
template <typename F>
PsubElem lift1(const PsubElem& a, F&& f) {
  if (a.is_bot()) return PsubElem::bot();
  if (a.is_top()) return PsubElem::top();
  return f();
}

template <typename F>
PsubElem lift2(const PsubElem& a, const PsubElem& b, F&& f) {
  if (a.is_bot() || b.is_bot()) return PsubElem::bot();
  if (a.is_top() || b.is_top()) return PsubElem::top();
  return f();
}

}  // namespace

PsubElem ps_project(const PsubElem& a, const VarSet& v) {
  return lift1(a, [&] {
    VarSet u;
    for (VarId x : a.interest())
      if (v.count(x)) u.insert(x);
    std::set<ExSubst> out;
    for (const ExSubst& e : a.substs()) out.insert(ex_project(e, v));
    return PsubElem::make(std::move(out), std::move(u));
  });
}

PsubElem ps_unif(const PsubElem& a, const Substitution& delta) {
  return lift1(a, [&] {
    if (!delta.is_idempotent()) throw AnalysisError("ps_unif: non-idempotent substitution");
    VarSet dv = delta.vars();
    ExSubst d = ExSubst::canonicalize(delta, dv);
    VarSet u = a.interest();
    u.insert(dv.begin(), dv.end());
    std::set<ExSubst> out;
    for (const ExSubst& e : a.substs())
      if (auto m = ex_mgu(e, d)) out.insert(*m);
    return PsubElem::make(std::move(out), std::move(u));
  });
}

PsubElem ps_iota(const PsubElem& a, const VarSet& v) {
  return lift1(a, [&] {
    VarSet u = a.interest();
    u.insert(v.begin(), v.end());
    std::set<ExSubst> out;
    for (const ExSubst& e : a.substs()) out.insert(ExSubst::canonicalize(e.rep(), u));
    return PsubElem::make(std::move(out), std::move(u));
  });
}

PsubElem ps_rename(const Renaming& rho, const PsubElem& a) {
  return lift1(a, [&] {
    std::set<ExSubst> out;
    for (const ExSubst& e : a.substs()) out.insert(ex_rename(rho, e));
    return PsubElem::make(std::move(out), rho.apply(a.interest()));
  });
}

PsubElem ps_match(const PsubElem& a, const PsubElem& b) {
  return lift2(a, b, [&] {
    VarSet shared;
    for (VarId x : a.interest())
      if (b.interest().count(x)) shared.insert(x);
    VarSet u = a.interest();
    u.insert(b.interest().begin(), b.interest().end());
    std::set<ExSubst> out;
    for (const ExSubst& e1 : a.substs())
      for (const ExSubst& e2 : b.substs()) {
        if (!ex_leq(e1, e2, shared)) continue;
        if (auto m = ex_mgu(e1, e2)) out.insert(*m);
      }
    return PsubElem::make(std::move(out), std::move(u));
  });
}

namespace {

struct HeadUnification {
  Renaming rho;
  Substitution head_mgu;
};

// Renames the call side apart and unifies the renamed a1 with a2; nullopt on
// clash.
std::optional<HeadUnification> head_unify(const VarSet& call_vars, const Atom& a1,
                                          const Atom& a2) {
  VarSet to_rename = call_vars;
  VarSet av = vars_of(a1);
  to_rename.insert(av.begin(), av.end());
  Renaming rho = Renaming::fresh_for(to_rename);
  auto h = mgu_atoms(rho.apply(a1), a2);
  if (!h) return std::nullopt;
  return HeadUnification{std::move(rho), std::move(*h)};
}

}  // namespace

// Atom variables outside the element's interest set are first occurrences
// and enter as unconstrained variables through the head unifier (equivalent
// to enlarging the element first, by the iota law).
PsubElem ps_forward(const PsubElem& chi, const Atom& a1, const Atom& a2) {
  return lift1(chi, [&] {
    auto h = head_unify(chi.interest(), a1, a2);
    if (!h) return PsubElem::bot();
    return ps_project(ps_unif(ps_rename(h->rho, chi), h->head_mgu), vars_of(a2));
  });
}

namespace {

template <typename Combine>
PsubElem backward_impl(const PsubElem& exit, const PsubElem& call, const Atom& a1, const Atom& a2,
                       Combine&& combine) {
  return lift2(exit, call, [&] {
    auto h = head_unify(exit.interest(), a1, a2);
    if (!h) return PsubElem::bot();
    VarSet target = call.interest();
    VarSet av2 = vars_of(a2);
    target.insert(av2.begin(), av2.end());
    PsubElem instantiated_call = ps_unif(call, h->head_mgu);
    return ps_project(combine(ps_rename(h->rho, exit), instantiated_call), target);
  });
}

}  // namespace

PsubElem ps_backward(const PsubElem& exit, const PsubElem& call, const Atom& a1, const Atom& a2) {
  return backward_impl(exit, call, a1, a2,
                       [](const PsubElem& x, const PsubElem& c) { return ps_match(x, c); });
}

PsubElem ps_backward_unif(const PsubElem& exit, const PsubElem& call, const Atom& a1,
                          const Atom& a2) {
  // Pointwise mgu with no instance filter.
  return backward_impl(exit, call, a1, a2, [](const PsubElem& x, const PsubElem& c) {
    VarSet u = x.interest();
    u.insert(c.interest().begin(), c.interest().end());
    std::set<ExSubst> out;
    for (const ExSubst& e1 : x.substs())
      for (const ExSubst& e2 : c.substs())
        if (auto m = ex_mgu(e1, e2)) out.insert(*m);
    return PsubElem::make(std::move(out), std::move(u));
  });
}

std::string to_string(const PsubElem& a) {
  if (a.is_bot()) return "bot";
  if (a.is_top()) return "top";
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const ExSubst& e : a.substs()) {
    if (!first) os << ", ";
    os << to_string(e);
    first = false;
  }
  os << "} over " << to_string(a.interest());
  return os.str();
}

}  // namespace setsharing
