#pragma once

#include <map>
#include <string>
#include <vector>

#include "setsharing/sharing.hpp"

namespace setsharing {

enum class OpVariant { opt, std_ };

inline const char* to_cstring(OpVariant v) { return v == OpVariant::opt ? "opt" : "std"; }

// The abstract Sharing instantiation of the domain interface. Forward and
// backward unification can be switched independently between the optimized
// and the standard operators.
struct SharingDomain {
  using Elem = SharingElem;
  OpVariant fwd = OpVariant::opt;
  OpVariant bwd = OpVariant::opt;

  Elem bot() const { return SharingElem::bot(); }
  bool is_bot(const Elem& e) const { return e.is_bot(); }
  bool is_top(const Elem& e) const { return e.is_top(); }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }
  bool leq(const Elem& a, const Elem& b) const { return sh_leq(a, b); }
  Elem lub(const Elem& a, const Elem& b) const { return sh_lub(a, b); }
  bool is_set(const Elem& e) const { return e.is_sh(); }
  const VarSet& interest(const Elem& e) const { return e.interest(); }

  Elem forward(const Elem& chi, const Atom& a1, const Atom& a2) const {
    return fwd == OpVariant::opt ? sh_forward_opt(chi, a1, a2) : sh_forward_std(chi, a1, a2);
  }
  Elem backward(const Elem& exit, const Elem& call, const Atom& a1, const Atom& a2) const {
    return bwd == OpVariant::opt ? sh_backward_opt(exit, call, a1, a2)
                                 : sh_backward_std(exit, call, a1, a2);
  }
  std::string render(const Elem& e) const { return to_string(e); }
};

// The concrete collecting instantiation; `matching_backward` selects between
// the matching-based and the plain unification-based backward operator.
struct ConcreteDomain {
  using Elem = PsubElem;
  bool matching_backward = true;

  Elem bot() const { return PsubElem::bot(); }
  bool is_bot(const Elem& e) const { return e.is_bot(); }
  bool is_top(const Elem& e) const { return e.is_top(); }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }
  bool leq(const Elem& a, const Elem& b) const { return ps_leq(a, b); }
  Elem lub(const Elem& a, const Elem& b) const { return ps_lub(a, b); }
  bool is_set(const Elem& e) const { return e.is_set(); }
  const VarSet& interest(const Elem& e) const { return e.interest(); }

  Elem forward(const Elem& chi, const Atom& a1, const Atom& a2) const {
    return ps_forward(chi, a1, a2);
  }
  Elem backward(const Elem& exit, const Elem& call, const Atom& a1, const Atom& a2) const {
    return matching_backward ? ps_backward(exit, call, a1, a2)
                             : ps_backward_unif(exit, call, a1, a2);
  }
  std::string render(const Elem& e) const { return to_string(e); }
};

template <typename Elem>
struct TableRow {
  std::string atom;
  Elem entry;
  Elem exit;
};

template <typename Elem>
struct AnalysisResult {
  Elem answer;
  std::vector<TableRow<Elem>> table;
  int iterations = 0;
};

namespace detail {

// The query boundary is where well-formedness is enforced: the initial
// element must cover the goal's variables. Inside derivations, atoms may
// mention first-occurrence variables; the operators treat those as free.
template <class D>
void check_query(const D& dom, const Goal& goal, const typename D::Elem& chi0) {
  if (!dom.is_set(chi0)) return;
  for (VarId v : vars_of(goal))
    if (!dom.interest(chi0).count(v))
      throw AnalysisError("goal variable " + var_name(v) +
                          " is not covered by the initial element");
}

// Identity of a syntactic atom occurrence: clause index (-1 for the query)
// and position within the body.
struct AtomKey {
  int clause;
  int pos;
  friend bool operator<(const AtomKey& a, const AtomKey& b) {
    if (a.clause != b.clause) return a.clause < b.clause;
    return a.pos < b.pos;
  }
  friend bool operator==(const AtomKey& a, const AtomKey& b) {
    return a.clause == b.clause && a.pos == b.pos;
  }
};

template <class D>
class Evaluator {
 public:
  using Elem = typename D::Elem;

  Evaluator(const D& dom, const Program& prog, const Goal& goal)
      : dom_(dom), prog_(prog), goal_(goal) {}

  const Atom& atom_at(AtomKey k) const {
    return k.clause < 0 ? goal_[k.pos] : prog_.clauses[k.clause].body[k.pos];
  }

  // Relevance: a non-bottom output covers exactly the input variables plus
  // the atom's. A violation or a Top is an engine defect.
  void check_entry(const Atom& a, const Elem& in, const Elem& out) const {
    if (dom_.is_top(out))
      throw AnalysisError("top produced while evaluating call to " + to_string(a));
    if (dom_.is_bot(out) || !dom_.is_set(in)) return;
    VarSet expected = dom_.interest(in);
    VarSet av = vars_of(a);
    expected.insert(av.begin(), av.end());
    if (dom_.interest(out) != expected)
      throw AnalysisError("relevance violated at call to " + to_string(a));
  }

 protected:
  const D& dom_;
  const Program& prog_;
  const Goal& goal_;
};

}  // namespace detail

// Demand-driven tabulation of the least fixpoint: table entries start at
// bottom and every entry is naively recomputed (lub over all clauses) round
// after round until the table and the answer are globally stable.
// Terminates because the reachable (atom occurrence, input) keys are finite.
template <class D>
AnalysisResult<typename D::Elem> analyze_fixpoint(const D& dom, const Program& prog,
                                                  const Goal& goal,
                                                  const typename D::Elem& chi0) {
  using Elem = typename D::Elem;
  using detail::AtomKey;
  detail::check_query(dom, goal, chi0);

  struct Tab : detail::Evaluator<D> {
    using detail::Evaluator<D>::Evaluator;
    std::map<std::pair<AtomKey, Elem>, Elem> table;

    Elem lookup(AtomKey k, const Elem& in) {
      auto [it, inserted] = table.emplace(std::make_pair(k, in), this->dom_.bot());
      return it->second;
    }

    Elem body_eval(int clause, const Goal& body, int from, Elem chi) {
      for (int i = from; i < static_cast<int>(body.size()); ++i)
        chi = lookup(AtomKey{clause, i}, chi);
      return chi;
    }

    Elem recompute(AtomKey k, const Elem& in) {
      const Atom& a = this->atom_at(k);
      Elem out = this->dom_.bot();
      if (this->dom_.is_bot(in)) return out;
      for (int ci = 0; ci < static_cast<int>(this->prog_.clauses.size()); ++ci) {
        const Clause& cl = this->prog_.clauses[ci];
        Elem entry = this->dom_.forward(in, a, cl.head);
        Elem exit = body_eval(ci, cl.body, 0, entry);
        Elem res = this->dom_.backward(exit, in, cl.head, a);
        out = this->dom_.lub(out, res);
      }
      this->check_entry(a, in, out);
      return out;
    }
  };

  Tab tab(dom, prog, goal);
  AnalysisResult<Elem> result;
  result.answer = dom.bot();
  bool changed = true;
  while (changed) {
    changed = false;
    ++result.iterations;
    Elem answer = tab.body_eval(-1, goal, 0, chi0);
    if (!dom.equal(answer, result.answer)) {
      result.answer = answer;
      changed = true;
    }
    std::vector<std::pair<AtomKey, Elem>> keys;
    keys.reserve(tab.table.size());
    for (auto& [key, val] : tab.table) keys.push_back(key);
    size_t known = tab.table.size();
    for (auto& key : keys) {
      Elem next = tab.recompute(key.first, key.second);
      Elem& slot = tab.table.at(key);
      if (!dom.equal(next, slot)) {
        slot = next;
        changed = true;
      }
    }
    if (tab.table.size() != known) changed = true;
  }
  if (dom.is_top(result.answer)) throw AnalysisError("analysis reached top");
  for (auto& [key, val] : tab.table)
    result.table.push_back({to_string(tab.atom_at(key.first)), key.second, val});
  return result;
}

// Kleene iteration cut at a fixed depth: level i evaluates clause bodies
// with level i-1, level 0 is bottom everywhere. A sound under-approximation
// of the collecting semantics, used by the oracle pipelines.
template <class D>
AnalysisResult<typename D::Elem> analyze_depth(const D& dom, const Program& prog,
                                               const Goal& goal, const typename D::Elem& chi0,
                                               int depth) {
  using Elem = typename D::Elem;
  using detail::AtomKey;
  if (depth < 0) throw AnalysisError("analysis depth must be nonnegative");
  detail::check_query(dom, goal, chi0);

  struct Lev : detail::Evaluator<D> {
    using detail::Evaluator<D>::Evaluator;
    std::map<std::tuple<int, AtomKey, Elem>, Elem> memo;

    Elem eval_atom(int level, AtomKey k, const Elem& in) {
      if (level <= 0 || this->dom_.is_bot(in)) return this->dom_.bot();
      auto key = std::make_tuple(level, k, in);
      auto it = memo.find(key);
      if (it != memo.end()) return it->second;
      const Atom& a = this->atom_at(k);
      Elem out = this->dom_.bot();
      for (int ci = 0; ci < static_cast<int>(this->prog_.clauses.size()); ++ci) {
        const Clause& cl = this->prog_.clauses[ci];
        Elem entry = this->dom_.forward(in, a, cl.head);
        Elem chi = entry;
        for (int i = 0; i < static_cast<int>(cl.body.size()); ++i)
          chi = eval_atom(level - 1, AtomKey{ci, i}, chi);
        out = this->dom_.lub(out, this->dom_.backward(chi, in, cl.head, a));
      }
      this->check_entry(a, in, out);
      memo.emplace(key, out);
      return out;
    }
  };

  Lev lev(dom, prog, goal);
  Elem chi = chi0;
  for (int i = 0; i < static_cast<int>(goal.size()); ++i)
    chi = lev.eval_atom(depth, AtomKey{-1, i}, chi);
  AnalysisResult<Elem> result;
  result.answer = chi;
  result.iterations = depth;
  if (dom.is_top(result.answer)) throw AnalysisError("analysis reached top");
  for (auto& [key, val] : lev.memo)
    if (std::get<0>(key) == depth)
      result.table.push_back({to_string(lev.atom_at(std::get<1>(key))), std::get<2>(key), val});
  return result;
}

}  // namespace setsharing
