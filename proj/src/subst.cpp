#include "setsharing/subst.hpp"

#include <deque>
#include <sstream>
#include <stdexcept>

namespace setsharing {

Substitution::Substitution(std::map<VarId, Term> bindings) : bindings_(std::move(bindings)) {
  for (auto it = bindings_.begin(); it != bindings_.end();) {
    if (it->second.is_var() && it->second.as_var() == it->first)
      it = bindings_.erase(it);
    else
      ++it;
  }
}

Substitution Substitution::single(VarId x, Term t) {
  std::map<VarId, Term> m;
  m.emplace(x, std::move(t));
  return Substitution(std::move(m));
}

Term Substitution::value(VarId x) const {
  auto it = bindings_.find(x);
  return it == bindings_.end() ? Term::var(x) : it->second;
}

Term Substitution::apply(const Term& t) const {
  if (bindings_.empty()) return t;
  if (t.is_var()) return value(t.as_var());
  std::vector<Term> args;
  args.reserve(t.arity());
  bool changed = false;
  for (const Term& a : t.args()) {
    args.push_back(apply(a));
    if (!(args.back() == a)) changed = true;
  }
  if (!changed) return t;
  return Term::fn(t.symbol(), std::move(args));
}

Atom Substitution::apply(const Atom& a) const {
  Atom out{a.predicate, {}};
  out.args.reserve(a.args.size());
  for (const Term& t : a.args) out.args.push_back(apply(t));
  return out;
}

Goal Substitution::apply(const Goal& g) const {
  Goal out;
  out.reserve(g.size());
  for (const Atom& a : g) out.push_back(apply(a));
  return out;
}

VarSet Substitution::domain() const {
  VarSet d;
  for (auto& [x, t] : bindings_) d.insert(x);
  return d;
}

VarSet Substitution::range_vars() const {
  VarSet r;
  for (auto& [x, t] : bindings_) {
    VarSet v = vars_of(t);
    r.insert(v.begin(), v.end());
  }
  return r;
}

VarSet Substitution::vars() const {
  VarSet v = domain();
  VarSet r = range_vars();
  v.insert(r.begin(), r.end());
  return v;
}

bool Substitution::is_idempotent() const {
  VarSet r = range_vars();
  for (auto& [x, t] : bindings_)
    if (r.count(x)) return false;
  return true;
}

Substitution compose(const Substitution& theta, const Substitution& delta) {
  std::map<VarId, Term> out;
  for (auto& [x, t] : delta.bindings()) out.emplace(x, theta.apply(t));
  for (auto& [x, t] : theta.bindings())
    if (!delta.binds(x)) out.emplace(x, t);
  return Substitution(std::move(out));
}

Substitution restrict_to(const Substitution& theta, const VarSet& u) {
  std::map<VarId, Term> out;
  for (auto& [x, t] : theta.bindings())
    if (u.count(x)) out.emplace(x, t);
  return Substitution(std::move(out));
}

Substitution restrict_away(const Substitution& theta, const VarSet& u) {
  std::map<VarId, Term> out;
  for (auto& [x, t] : theta.bindings())
    if (!u.count(x)) out.emplace(x, t);
  return Substitution(std::move(out));
}

VarSet occ(const Substitution& sigma, VarId y) {
  VarSet out;
  for (auto& [z, t] : sigma.bindings())
    if (vars_of(t).count(y)) out.insert(z);
  if (!sigma.binds(y)) out.insert(y);
  return out;
}

Renaming Renaming::from_pairs(const std::vector<std::pair<VarId, VarId>>& pairs) {
  Renaming r;
  for (auto& [x, y] : pairs) {
    if (x == y) continue;
    auto [it, inserted] = r.fwd_.emplace(x, y);
    if (!inserted && !(it->second == y))
      throw std::invalid_argument("renaming maps a variable twice");
    auto [jt, jinserted] = r.inv_.emplace(y, x);
    if (!jinserted && !(jt->second == x))
      throw std::invalid_argument("renaming is not injective");
  }
  // Close the injective partial map into a bijection: every maximal chain
  // s0 -> s1 -> ... -> sk gets the back edge sk -> s0; cycles are already
  // closed.
  std::vector<VarId> chain_ends;
  for (auto& [y, x] : r.inv_)
    if (!r.fwd_.count(y)) chain_ends.push_back(y);
  for (VarId end : chain_ends) {
    VarId start = end;
    auto it = r.inv_.find(start);
    while (it != r.inv_.end()) {
      start = it->second;
      it = r.inv_.find(start);
    }
    r.fwd_.emplace(end, start);
    r.inv_.emplace(start, end);
  }
  return r;
}

Renaming Renaming::fresh_for(const VarSet& from) {
  std::vector<std::pair<VarId, VarId>> pairs;
  pairs.reserve(from.size());
  for (VarId v : from) pairs.emplace_back(v, fresh_var());
  return from_pairs(pairs);
}

VarId Renaming::apply(VarId v) const {
  auto it = fwd_.find(v);
  return it == fwd_.end() ? v : it->second;
}

Term Renaming::apply(const Term& t) const {
  if (t.is_var()) return Term::var(apply(t.as_var()));
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const Term& a : t.args()) args.push_back(apply(a));
  return Term::fn(t.symbol(), std::move(args));
}

Atom Renaming::apply(const Atom& a) const {
  Atom out{a.predicate, {}};
  out.args.reserve(a.args.size());
  for (const Term& t : a.args) out.args.push_back(apply(t));
  return out;
}

VarSet Renaming::apply(const VarSet& vs) const {
  VarSet out;
  for (VarId v : vs) out.insert(apply(v));
  return out;
}

Renaming Renaming::inverse() const {
  Renaming r;
  r.fwd_ = inv_;
  r.inv_ = fwd_;
  return r;
}

Substitution Renaming::apply_subst(const Substitution& theta) const {
  std::map<VarId, Term> out;
  for (auto& [x, t] : theta.bindings()) out.emplace(apply(x), apply(t));
  return Substitution(std::move(out));
}

namespace {

bool occurs_in(VarId v, const Term& t) {
  if (t.is_var()) return t.as_var() == v;
  for (const Term& a : t.args())
    if (occurs_in(v, a)) return true;
  return false;
}

}  // namespace

std::optional<Substitution> mgu_eqs(const EquationSet& eqs) {
  Substitution s;
  std::deque<Equation> work(eqs.begin(), eqs.end());
  while (!work.empty()) {
    auto [lhs, rhs] = work.front();
    work.pop_front();
    Term a = s.apply(lhs);
    Term b = s.apply(rhs);
    if (a == b) continue;
    if (!a.is_var() && b.is_var()) std::swap(a, b);
    if (a.is_var()) {
      VarId v = a.as_var();
      if (occurs_in(v, b)) return std::nullopt;
      // Eliminate v everywhere; keeps s idempotent.
      Substitution bind = Substitution::single(v, b);
      std::map<VarId, Term> next;
      for (auto& [x, t] : s.bindings()) next.emplace(x, bind.apply(t));
      next.emplace(v, b);
      s = Substitution(std::move(next));
      continue;
    }
    if (a.symbol() != b.symbol() || a.arity() != b.arity()) return std::nullopt;
    for (size_t i = a.arity(); i > 0; --i)
      work.emplace_front(a.args()[i - 1], b.args()[i - 1]);
  }
  return s;
}

std::optional<Substitution> mgu_substs(const std::vector<Substitution>& substs) {
  EquationSet eqs;
  for (const Substitution& s : substs)
    for (auto& [x, t] : s.bindings()) eqs.emplace_back(Term::var(x), t);
  return mgu_eqs(eqs);
}

std::optional<Substitution> mgu_atoms(const Atom& a, const Atom& b) {
  if (a.predicate != b.predicate || a.args.size() != b.args.size()) return std::nullopt;
  EquationSet eqs;
  for (size_t i = 0; i < a.args.size(); ++i) eqs.emplace_back(a.args[i], b.args[i]);
  return mgu_eqs(eqs);
}

std::string to_string(const Substitution& s) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (auto& [x, t] : s.bindings()) {
    if (!first) os << ", ";
    os << var_name(x) << '/' << to_string(t);
    first = false;
  }
  os << '}';
  return os.str();
}

}  // namespace setsharing
