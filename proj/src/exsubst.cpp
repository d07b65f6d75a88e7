#include "setsharing/exsubst.hpp"

#include <sstream>
#include <stdexcept>

namespace setsharing {

namespace {

// Allocates normalized fresh ids 0,1,2,... skipping ids of fresh variables
// already in U.
struct NormalizedSupply {
  const VarSet& u;
  uint32_t next = 0;

  VarId draw() {
    while (u.count(VarId{next, VarNs::fresh})) ++next;
    return VarId{next++, VarNs::fresh};
  }
};

Term normalize_term(const Term& t, std::map<VarId, VarId>& ren, NormalizedSupply& supply) {
  if (t.is_var()) {
    auto [it, inserted] = ren.emplace(t.as_var(), VarId{});
    if (inserted) it->second = supply.draw();
    return Term::var(it->second);
  }
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const Term& a : t.args()) args.push_back(normalize_term(a, ren, supply));
  return Term::fn(t.symbol(), std::move(args));
}

}  // namespace

ExSubst ExSubst::canonicalize(const Substitution& theta, const VarSet& u) {
  NormalizedSupply supply{u};
  std::map<VarId, VarId> ren;
  std::map<VarId, Term> rep;
  for (VarId v : u) rep.emplace(v, normalize_term(theta.value(v), ren, supply));
  ExSubst e;
  e.rep_ = Substitution(std::move(rep));
  e.u_ = u;
  return e;
}

bool operator<(const ExSubst& a, const ExSubst& b) {
  if (a.u_ != b.u_) return a.u_ < b.u_;
  auto& ma = a.rep_.bindings();
  auto& mb = b.rep_.bindings();
  return std::lexicographical_compare(ma.begin(), ma.end(), mb.begin(), mb.end(),
                                      [](const auto& x, const auto& y) {
                                        if (x.first != y.first) return x.first < y.first;
                                        return x.second < y.second;
                                      });
}

namespace {

bool match_term(const Term& pattern, const Term& target, std::map<VarId, Term>& delta) {
  if (pattern.is_var()) {
    auto [it, inserted] = delta.emplace(pattern.as_var(), target);
    return inserted || it->second == target;
  }
  if (target.is_var()) return false;
  if (pattern.symbol() != target.symbol() || pattern.arity() != target.arity()) return false;
  for (size_t i = 0; i < pattern.arity(); ++i)
    if (!match_term(pattern.args()[i], target.args()[i], delta)) return false;
  return true;
}

}  // namespace

bool ex_leq(const ExSubst& e1, const ExSubst& e2, const VarSet& w) {
  std::map<VarId, Term> delta;
  for (VarId v : w)
    if (!match_term(e2.value(v), e1.value(v), delta)) return false;
  return true;
}

ExSubst ex_project(const ExSubst& e, const VarSet& v) {
  VarSet uv;
  for (VarId x : e.interest())
    if (v.count(x)) uv.insert(x);
  return ExSubst::canonicalize(e.rep(), uv);
}

ExSubst ex_rename(const Renaming& rho, const ExSubst& e) {
  return ExSubst::canonicalize(rho.apply_subst(e.rep()), rho.apply(e.interest()));
}

namespace {

// Redraws every range variable of a canonical representative from the global
// fresh supply; the result denotes the same class and its range is disjoint
// from anything allocated before.
Substitution refresh_range(const Substitution& rep) {
  VarSet range = rep.range_vars();
  Renaming rho = Renaming::fresh_for(range);
  std::map<VarId, Term> out;
  for (auto& [x, t] : rep.bindings()) out.emplace(x, rho.apply(t));
  return Substitution(std::move(out));
}

}  // namespace

std::optional<ExSubst> ex_mgu(const ExSubst& e1, const ExSubst& e2) {
  Substitution r1 = refresh_range(e1.rep());
  Substitution r2 = refresh_range(e2.rep());
  auto unified = mgu_substs({r1, r2});
  if (!unified) return std::nullopt;
  VarSet u = e1.interest();
  u.insert(e2.interest().begin(), e2.interest().end());
  return ExSubst::canonicalize(*unified, u);
}

VarStatus var_status(const ExSubst& e, VarId x) {
  if (!e.interest().count(x)) throw std::invalid_argument("var_status: variable not of interest");
  VarStatus st;
  Term img = e.value(x);
  st.free = img.is_var();
  VarSet mine = vars_of(img);
  st.unused = st.free;
  for (VarId u : e.interest()) {
    if (u == x) continue;
    VarSet theirs = vars_of(e.value(u));
    bool shares = false;
    for (VarId v : mine)
      if (theirs.count(v)) {
        shares = true;
        break;
      }
    if (!shares)
      st.independent_of.insert(u);
    else
      st.unused = false;
  }
  return st;
}

std::string to_string(const ExSubst& e) {
  std::ostringstream os;
  os << '[';
  bool first = true;
  for (auto& [x, t] : e.rep().bindings()) {
    if (!first) os << ", ";
    os << var_name(x) << '/' << to_string(t);
    first = false;
  }
  os << "]_" << to_string(e.interest());
  return os.str();
}

}  // namespace setsharing
