#include "setsharing/sld.hpp"

#include <deque>

namespace setsharing {

namespace {

Clause rename_apart(const Clause& cl) {
  Renaming rho = Renaming::fresh_for(vars_of(cl));
  Clause out;
  out.head = rho.apply(cl.head);
  out.body.reserve(cl.body.size());
  for (const Atom& a : cl.body) out.body.push_back(rho.apply(a));
  return out;
}

}  // namespace

std::vector<SldAnswer> sld_solve(const Program& p, const Goal& g, const Substitution& init,
                                 int max_depth) {
  struct State {
    Goal goal;
    Substitution total;
    int steps;
  };

  std::vector<SldAnswer> answers;
  std::set<ExSubst> seen;
  VarSet gv = vars_of(g);

  std::deque<State> queue;
  queue.push_back(State{init.apply(g), init, 0});
  while (!queue.empty()) {
    State st = std::move(queue.front());
    queue.pop_front();
    if (st.goal.empty()) {
      ExSubst cls = ExSubst::canonicalize(st.total, gv);
      if (seen.insert(cls).second) answers.push_back(SldAnswer{std::move(cls), st.steps});
      continue;
    }
    if (st.steps >= max_depth) continue;
    const Atom& selected = st.goal.front();
    for (const Clause& cl : p.clauses) {
      Clause fresh = rename_apart(cl);
      auto sigma = mgu_atoms(selected, fresh.head);
      if (!sigma) continue;
      Goal next;
      next.reserve(fresh.body.size() + st.goal.size() - 1);
      for (const Atom& a : fresh.body) next.push_back(sigma->apply(a));
      for (size_t i = 1; i < st.goal.size(); ++i) next.push_back(sigma->apply(st.goal[i]));
      queue.push_back(State{std::move(next), compose(*sigma, st.total), st.steps + 1});
    }
  }
  return answers;
}

}  // namespace setsharing
