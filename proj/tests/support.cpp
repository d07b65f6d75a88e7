#include "support.hpp"

#include <fstream>
#include <sstream>

namespace setsharing::testing {

namespace {

bool try_renaming(const std::vector<VarId>& from, const std::vector<VarId>& to,
                  const std::vector<int>& perm, const Substitution& t1, const Substitution& t2,
                  const VarSet& u) {
  std::vector<std::pair<VarId, VarId>> pairs;
  for (size_t i = 0; i < from.size(); ++i) pairs.emplace_back(from[i], to[perm[i]]);
  Renaming rho;
  try {
    rho = Renaming::from_pairs(pairs);
  } catch (const std::invalid_argument&) {
    return false;
  }
  for (VarId v : u)
    if (!(t1.value(v) == rho.apply(t2.value(v)))) return false;
  return true;
}

}  // namespace

bool equiv_oracle(const Substitution& t1, const Substitution& t2, const VarSet& u) {
  // Candidate range variables on each side.
  VarSet r1, r2;
  for (VarId v : u) {
    VarSet a = vars_of(t1.value(v));
    VarSet b = vars_of(t2.value(v));
    r1.insert(a.begin(), a.end());
    r2.insert(b.begin(), b.end());
  }
  std::vector<VarId> from(r2.begin(), r2.end());
  // The renaming may map into range-1 variables or swap through unrelated
  // fresh ones; for the equation t1(v) = rho(t2(v)) to hold, rho must map
  // range-2 vars exactly onto range-1 vars occurring at matching positions,
  // so searching over injections into r1 is enough.
  std::vector<VarId> to(r1.begin(), r1.end());
  if (from.size() > to.size()) return false;
  // Permutations of `to` taken |from| at a time.
  std::vector<int> idx(to.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = (int)i;
  std::sort(idx.begin(), idx.end());
  do {
    std::vector<int> perm(idx.begin(), idx.begin() + from.size());
    if (try_renaming(from, to, perm, t1, t2, u)) return true;
  } while (std::next_permutation(idx.begin(), idx.end()));
  return false;
}

std::vector<Substitution> enumerate_substs(const std::vector<VarId>& dom,
                                           const std::vector<VarId>& pool) {
  std::vector<Term> leaves;
  leaves.push_back(Term::constant(kReservedConst));
  for (VarId v : pool) leaves.push_back(Term::var(v));
  std::vector<Term> grammar = leaves;
  for (const Term& a : leaves)
    for (const Term& b : leaves) grammar.push_back(Term::fn(kReservedBin, {a, b}));

  std::vector<Substitution> out;
  std::vector<size_t> choice(dom.size(), 0);
  while (true) {
    std::map<VarId, Term> bindings;
    for (size_t i = 0; i < dom.size(); ++i) bindings.emplace(dom[i], grammar[choice[i]]);
    out.push_back(Substitution(std::move(bindings)));
    size_t i = 0;
    for (; i < dom.size(); ++i) {
      if (++choice[i] < grammar.size()) break;
      choice[i] = 0;
    }
    if (i == dom.size()) break;
  }
  return out;
}

std::string corpus_path(const std::string& name) {
  return std::string(SETSHARING_CORPUS_DIR) + "/" + name;
}

Program load_corpus(const std::string& name) {
  std::ifstream in(corpus_path(name));
  if (!in) throw std::runtime_error("missing corpus program: " + name);
  std::ostringstream os;
  os << in.rdbuf();
  return parse_program(os.str());
}

}  // namespace setsharing::testing
