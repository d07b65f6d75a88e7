#include "setsharing/witness.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace setsharing {

bool related(const SharingGroup& b1, const SharingGroup& b2, const Substitution& theta,
             const SharingGroup& x) {
  for (VarId x1 : b1)
    for (VarId x2 : b2) {
      Term t1 = theta.value(x1);
      Term t2 = theta.value(x2);
      VarSet v1 = vars_of(t1);
      VarSet v2 = vars_of(t2);
      VarSet uv1;
      if (x1 == x2) uv1 = uvars_of(t1);
      for (VarId y : v1) {
        if (!v2.count(y) || !x.count(y)) continue;
        if (x1 == x2 && uv1.count(y)) continue;
        return true;
      }
    }
  return false;
}

std::optional<WitnessPlan> connected_decomposition(const GroupSet& s1, const VarSet& u1,
                                                   const Substitution& theta,
                                                   const SharingGroup& x) {
  SharingGroup x1;
  for (VarId v : x)
    if (u1.count(v)) x1.insert(v);

  WitnessPlan plan;
  plan.target = x;
  if (x1.empty()) return plan;  // the W = {} branch: empty cover

  // Candidates: nonempty groups of S1 contained in X n U1. Any valid cover
  // is connected under related*, so it lives inside a single connected
  // component; pick a component whose union is all of X n U1.
  std::vector<SharingGroup> cands;
  for (const SharingGroup& b : s1)
    if (!b.empty() && std::includes(x1.begin(), x1.end(), b.begin(), b.end())) cands.push_back(b);
  if (cands.empty()) return std::nullopt;

  std::vector<size_t> parent(cands.size());
  for (size_t i = 0; i < cands.size(); ++i) parent[i] = i;
  std::function<size_t(size_t)> find = [&](size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (size_t i = 0; i < cands.size(); ++i)
    for (size_t j = i + 1; j < cands.size(); ++j)
      if (related(cands[i], cands[j], theta, x) || related(cands[j], cands[i], theta, x))
        parent[find(i)] = find(j);

  std::map<size_t, SharingGroup> component_union;
  for (size_t i = 0; i < cands.size(); ++i) {
    SharingGroup& u = component_union[find(i)];
    u.insert(cands[i].begin(), cands[i].end());
  }
  for (auto& [root, covered] : component_union) {
    if (covered != x1) continue;
    for (size_t i = 0; i < cands.size(); ++i)
      if (find(i) == root) plan.cover.push_back(cands[i]);
    for (const SharingGroup& b : plan.cover) plan.w.emplace(b, fresh_var());
    for (VarId v : x1) {
      size_t in = 0;
      for (const SharingGroup& b : plan.cover)
        if (b.count(v)) ++in;
      plan.width = std::max(plan.width, in);
    }
    // Carriers: for each range variable y of theta(U1) inside X, the
    // smallest u with y in theta(u).
    for (VarId u : u1) {
      for (VarId y : vars_of(theta.value(u))) {
        if (!x.count(y)) continue;
        auto it = plan.carrier.find(y);
        if (it == plan.carrier.end() || u < it->second) plan.carrier[y] = u;
      }
    }
    return plan;
  }
  return std::nullopt;
}

namespace {

Term pair_term(const Term& a, const Term& b) { return Term::fn(kReservedBin, {a, b}); }

// n-ary tuple as a right-nested chain of the reserved binary symbol,
// terminated by the reserved constant.
Term tuple_term(const std::vector<Term>& parts) {
  Term acc = Term::constant(kReservedConst);
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) acc = pair_term(*it, acc);
  return acc;
}

}  // namespace

Substitution build_witness(const WitnessPlan& plan, const Substitution& theta, const VarSet& u1) {
  // Per-variable group lists rel(K1, x), in the cover's order.
  std::map<VarId, std::vector<VarId>> group_vars;  // x -> w_B for B in rel(K1, x)
  for (VarId v : u1) {
    std::vector<VarId> ws;
    for (const SharingGroup& b : plan.cover)
      if (b.count(v)) ws.push_back(plan.w.at(b));
    if (!ws.empty()) group_vars.emplace(v, std::move(ws));
  }

  auto aligned = [&](VarId x) {
    const auto& ws = group_vars.at(x);
    std::vector<Term> parts;
    for (VarId w : ws) parts.push_back(pair_term(Term::var(w), Term::var(w)));
    while (parts.size() < plan.width)
      parts.push_back(pair_term(Term::var(ws[0]), Term::var(ws[0])));
    return tuple_term(parts);
  };
  auto rotated = [&](VarId x) {
    const auto& ws = group_vars.at(x);
    std::vector<Term> parts;
    for (size_t i = 0; i < ws.size(); ++i)
      parts.push_back(pair_term(Term::var(ws[i]), Term::var(ws[(i + 1) % ws.size()])));
    while (parts.size() < plan.width)
      parts.push_back(pair_term(Term::var(ws[0]), Term::var(ws[0])));
    return tuple_term(parts);
  };

  std::map<VarId, Term> bindings;
  for (VarId x : u1) {
    std::map<VarId, int> occurrence;
    std::function<Term(const Term&)> rewrite = [&](const Term& t) -> Term {
      if (t.is_var()) {
        VarId y = t.as_var();
        int i = ++occurrence[y];
        if (!plan.target.count(y)) return Term::constant(kReservedConst);
        auto c = plan.carrier.find(y);
        if (c == plan.carrier.end() || !group_vars.count(c->second))
          throw std::invalid_argument("build_witness: plan does not cover variable " + var_name(y));
        if (c->second == x && i == 1) return aligned(x);
        return rotated(x);
      }
      std::vector<Term> args;
      args.reserve(t.arity());
      for (const Term& a : t.args()) args.push_back(rewrite(a));
      return Term::fn(t.symbol(), std::move(args));
    };
    Term image = rewrite(theta.value(x));
    bindings.emplace(x, image);
  }
  return Substitution(std::move(bindings));
}

bool check_witness(const Substitution& delta, const Substitution& theta, const GroupSet& s1,
                   const VarSet& u1, const SharingGroup& x) {
  ExSubst d = ExSubst::canonicalize(delta, u1);
  if (!sh_leq(alpha(d), SharingElem::make(s1, u1))) return false;
  VarSet u = u1;
  VarSet tv = theta.vars();
  u.insert(tv.begin(), tv.end());
  ExSubst t = ExSubst::canonicalize(theta, u);
  auto m = ex_mgu(d, t);
  if (!m) return false;
  return alpha(*m).groups().count(x) != 0;
}

}  // namespace setsharing
