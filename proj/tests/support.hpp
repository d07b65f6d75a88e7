#pragma once

// Shared helpers for the unit and acceptance suites: tiny builders, seeded
// random generators, and the independent oracles the expected values are
// computed with.

#include <random>
#include <string>
#include <vector>

#include "setsharing/cli.hpp"
#include "setsharing/engine.hpp"
#include "setsharing/sld.hpp"
#include "setsharing/witness.hpp"

namespace setsharing::testing {

inline VarId V(const std::string& name) { return intern_user_var(name); }
inline Term vt(const std::string& name) { return Term::var(V(name)); }
inline Term cst(const std::string& name) { return Term::constant(name); }
inline Term fn(const std::string& sym, std::vector<Term> args) {
  return Term::fn(sym, std::move(args));
}

inline VarSet U(std::initializer_list<std::string> names) {
  VarSet out;
  for (const auto& n : names) out.insert(V(n));
  return out;
}

inline SharingGroup G(std::initializer_list<std::string> names) {
  SharingGroup out;
  for (const auto& n : names) out.insert(V(n));
  return out;
}

inline Substitution subst(std::initializer_list<std::pair<std::string, Term>> bindings) {
  std::map<VarId, Term> m;
  for (auto& [name, t] : bindings) m.emplace(V(name), t);
  return Substitution(std::move(m));
}

inline SharingElem sh(std::initializer_list<SharingGroup> groups, const VarSet& u) {
  GroupSet gs;
  for (const SharingGroup& g : groups) gs.insert(g);
  return SharingElem::make(std::move(gs), u);
}

inline PsubElem ps(std::initializer_list<Substitution> members, const VarSet& u) {
  std::set<ExSubst> out;
  for (const Substitution& s : members) out.insert(ExSubst::canonicalize(s, u));
  return PsubElem::make(std::move(out), u);
}

inline bool has_group(const SharingElem& e, const SharingGroup& g) {
  return e.is_sh() && e.groups().count(g) != 0;
}

inline bool has_superset_group(const SharingElem& e, const SharingGroup& g) {
  if (!e.is_sh()) return false;
  for (const SharingGroup& b : e.groups())
    if (std::includes(b.begin(), b.end(), g.begin(), g.end())) return true;
  return false;
}

// Exact group-set comparison with the empty group normalized away.
inline bool same_groups(const SharingElem& e, std::initializer_list<SharingGroup> expected) {
  if (!e.is_sh()) return false;
  GroupSet want;
  for (const SharingGroup& g : expected) want.insert(g);
  want.insert(SharingGroup{});
  GroupSet got = e.groups();
  got.insert(SharingGroup{});
  return got == want;
}

// ---------------------------------------------------------------------------
// Seeded generators.

class Gen {
 public:
  explicit Gen(uint64_t seed) : rng_(seed) {}

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  bool flip() { return pick(2) == 0; }

  // A term over the variable pool: leaves are pool variables or a constant,
  // inner nodes use f/1, g/2, t/3.
  Term term(const std::vector<VarId>& pool, int depth) {
    if (depth <= 0 || pick(3) == 0) {
      if (!pool.empty() && pick(4) != 0) return Term::var(pool[pick((int)pool.size())]);
      return cst(pick(2) ? "a" : "b");
    }
    switch (pick(3)) {
      case 0:
        return fn("f", {term(pool, depth - 1)});
      case 1:
        return fn("g", {term(pool, depth - 1), term(pool, depth - 1)});
      default:
        return fn("t", {term(pool, depth - 1), term(pool, depth - 1), term(pool, depth - 1)});
    }
  }

  // Idempotent substitution: a random subset of `dom_pool` bound to terms
  // over `range_pool` minus the chosen domain.
  Substitution idempotent_subst(const std::vector<VarId>& dom_pool,
                                const std::vector<VarId>& range_pool, int max_bindings,
                                int depth) {
    std::vector<VarId> dom;
    for (VarId v : dom_pool)
      if ((int)dom.size() < max_bindings && flip()) dom.push_back(v);
    std::vector<VarId> range;
    for (VarId v : range_pool)
      if (std::find(dom.begin(), dom.end(), v) == dom.end()) range.push_back(v);
    std::map<VarId, Term> bindings;
    for (VarId v : dom) bindings.emplace(v, term(range, depth));
    return Substitution(std::move(bindings));
  }

  VarSet var_subset(const std::vector<VarId>& pool, int min_size) {
    VarSet out;
    while ((int)out.size() < min_size)
      for (VarId v : pool)
        if (flip()) out.insert(v);
    return out;
  }

  ExSubst ex_class(const VarSet& u, const std::vector<VarId>& existential, int depth) {
    std::vector<VarId> dom(u.begin(), u.end());
    std::map<VarId, Term> bindings;
    for (VarId v : dom)
      if (flip()) bindings.emplace(v, term(existential, depth));
    return ExSubst::canonicalize(Substitution(std::move(bindings)), u);
  }

  PsubElem psub(const VarSet& u, const std::vector<VarId>& existential, int max_members,
                int depth) {
    std::set<ExSubst> members;
    int n = 1 + pick(max_members);
    for (int i = 0; i < n; ++i) members.insert(ex_class(u, existential, depth));
    return PsubElem::make(std::move(members), u);
  }

  SharingElem sharing(const VarSet& u, int max_groups) {
    std::vector<VarId> pool(u.begin(), u.end());
    GroupSet gs;
    int n = 1 + pick(max_groups);
    for (int i = 0; i < n; ++i) {
      SharingGroup g;
      for (VarId v : pool)
        if (flip()) g.insert(v);
      if (!g.empty()) gs.insert(g);
    }
    return SharingElem::make(std::move(gs), u);
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// ---------------------------------------------------------------------------
// Independent oracles.

// Search-based decision of theta1 ~_U theta2: tries every mapping of the
// range variables of theta1(U) onto those of theta2(U) and checks the
// renaming equation pointwise. Exponential; for tiny inputs only.
bool equiv_oracle(const Substitution& t1, const Substitution& t2, const VarSet& u);

// All substitutions binding each variable of `dom` to a term from the
// bounded grammar: the reserved constant, a pool variable, or the reserved
// binary symbol applied to two such leaves.
std::vector<Substitution> enumerate_substs(const std::vector<VarId>& dom,
                                           const std::vector<VarId>& pool);

// Loads a corpus program by name.
Program load_corpus(const std::string& name);
std::string corpus_path(const std::string& name);

}  // namespace setsharing::testing
