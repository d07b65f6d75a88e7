#include "setsharing/sharing.hpp"

#include <algorithm>
#include <sstream>

namespace setsharing {

SharingElem SharingElem::bot() { return SharingElem(); }

SharingElem SharingElem::top() {
  SharingElem e;
  e.kind_ = Kind::top;
  return e;
}

SharingElem SharingElem::make(GroupSet groups, VarSet u) {
  for (const SharingGroup& g : groups)
    for (VarId v : g)
      if (!u.count(v)) throw AnalysisError("sharing group outside the variables of interest");
  if (!groups.empty()) groups.insert(SharingGroup{});
  SharingElem e;
  e.kind_ = Kind::sh;
  e.groups_ = std::move(groups);
  e.u_ = std::move(u);
  return e;
}

const GroupSet& SharingElem::groups() const {
  if (kind_ != Kind::sh) throw AnalysisError("groups() on non-set sharing element");
  return groups_;
}

const VarSet& SharingElem::interest() const {
  if (kind_ != Kind::sh) throw AnalysisError("interest() on non-set sharing element");
  return u_;
}

bool operator==(const SharingElem& a, const SharingElem& b) {
  if (a.kind_ != b.kind_) return false;
  if (a.kind_ != SharingElem::Kind::sh) return true;
  return a.u_ == b.u_ && a.groups_ == b.groups_;
}

bool operator<(const SharingElem& a, const SharingElem& b) {
  if (a.kind_ != b.kind_) return a.kind_ < b.kind_;
  if (a.kind_ != SharingElem::Kind::sh) return false;
  if (a.u_ != b.u_) return a.u_ < b.u_;
  return a.groups_ < b.groups_;
}

bool sh_leq(const SharingElem& a, const SharingElem& b) {
  if (a.is_bot() || b.is_top()) return true;
  if (b.is_bot() || a.is_top()) return false;
  if (a.interest() != b.interest()) return false;
  for (const SharingGroup& g : a.groups())
    if (!b.groups().count(g)) return false;
  return true;
}

SharingElem sh_lub(const SharingElem& a, const SharingElem& b) {
  if (a.is_top() || b.is_top()) return SharingElem::top();
  if (a.is_bot()) return b;
  if (b.is_bot()) return a;
  if (a.interest() != b.interest()) return SharingElem::top();
  GroupSet out = a.groups();
  out.insert(b.groups().begin(), b.groups().end());
  return SharingElem::make(std::move(out), a.interest());
}

SharingElem alpha(const ExSubst& e) {
  // occ(rep, y) n U is nonempty only for the representative's range
  // variables; any variable outside contributes the empty group.
  const VarSet& u = e.interest();
  std::map<VarId, SharingGroup> by_range_var;
  for (auto& [x, t] : e.rep().bindings())
    for (VarId w : vars_of(t)) by_range_var[w].insert(x);
  GroupSet groups;
  groups.insert(SharingGroup{});
  for (auto& [w, g] : by_range_var) groups.insert(g);
  return SharingElem::make(std::move(groups), u);
}

SharingElem alpha(const PsubElem& a) {
  if (a.is_bot()) return SharingElem::bot();
  if (a.is_top()) return SharingElem::top();
  SharingElem out = SharingElem::make({}, a.interest());
  for (const ExSubst& e : a.substs()) out = sh_lub(out, alpha(e));
  return out;
}

bool gamma_contains(const SharingElem& sh, const ExSubst& e) {
  if (sh.is_bot()) return false;
  if (sh.is_top()) return true;
  if (sh.interest() != e.interest())
    throw AnalysisError("gamma_contains: variables of interest differ");
  return sh_leq(alpha(e), sh);
}

std::set<ExSubst> gamma_witnesses(const SharingElem& sh) {
  std::set<ExSubst> out;
  if (!sh.is_sh()) return out;
  const VarSet& u = sh.interest();
  Term ground = Term::constant(kReservedConst);
  for (const SharingGroup& g : sh.groups()) {
    Term shared = Term::var(fresh_var());
    std::map<VarId, Term> bind;
    for (VarId v : u) bind.emplace(v, g.count(v) ? shared : ground);
    out.insert(ExSubst::canonicalize(Substitution(std::move(bind)), u));
  }
  return out;
}

std::optional<ExSubst> gamma_joint_witness(const SharingElem& sh) {
  if (!sh.is_sh() || sh.groups().empty()) return std::nullopt;
  std::map<SharingGroup, Term> carrier;
  for (const SharingGroup& g : sh.groups())
    if (!g.empty()) carrier.emplace(g, Term::var(fresh_var()));
  std::map<VarId, Term> bind;
  for (VarId v : sh.interest()) {
    Term image = Term::constant(kReservedConst);
    for (auto it = carrier.rbegin(); it != carrier.rend(); ++it)
      if (it->first.count(v)) image = Term::fn(kReservedBin, {it->second, image});
    bind.emplace(v, image);
  }
  return ExSubst::canonicalize(Substitution(std::move(bind)), sh.interest());
}

SharingElem sh_project(const SharingElem& a, const VarSet& v) {
  if (a.is_bot()) return SharingElem::bot();
  if (a.is_top()) return SharingElem::top();
  VarSet u;
  for (VarId x : a.interest())
    if (v.count(x)) u.insert(x);
  GroupSet out;
  for (const SharingGroup& g : a.groups()) {
    SharingGroup pg;
    for (VarId x : g)
      if (v.count(x)) pg.insert(x);
    out.insert(std::move(pg));
  }
  return SharingElem::make(std::move(out), std::move(u));
}

SharingElem sh_rename(const Renaming& rho, const SharingElem& a) {
  if (a.is_bot()) return SharingElem::bot();
  if (a.is_top()) return SharingElem::top();
  GroupSet out;
  for (const SharingGroup& g : a.groups()) out.insert(rho.apply(g));
  return SharingElem::make(std::move(out), rho.apply(a.interest()));
}

SharingElem sh_iota(const SharingElem& a, const VarSet& v) {
  if (a.is_bot()) return SharingElem::bot();
  if (a.is_top()) return SharingElem::top();
  VarSet u = a.interest();
  GroupSet out = a.groups();
  if (!out.empty())
    for (VarId x : v)
      if (!u.count(x)) out.insert(SharingGroup{x});
  u.insert(v.begin(), v.end());
  return SharingElem::make(std::move(out), std::move(u));
}

GroupSet rel(const GroupSet& a, const VarSet& v) {
  GroupSet out;
  for (const SharingGroup& g : a)
    for (VarId x : g)
      if (v.count(x)) {
        out.insert(g);
        break;
      }
  return out;
}

GroupSet bin(const GroupSet& a, const GroupSet& b) {
  GroupSet out;
  for (const SharingGroup& ga : a)
    for (const SharingGroup& gb : b) {
      SharingGroup g = ga;
      g.insert(gb.begin(), gb.end());
      out.insert(std::move(g));
    }
  return out;
}

GroupSet star(const GroupSet& a) {
  GroupSet closed = a;
  bool changed = true;
  while (changed) {
    changed = false;
    GroupSet additions;
    for (const SharingGroup& x : closed)
      for (const SharingGroup& y : a) {
        SharingGroup g = x;
        g.insert(y.begin(), y.end());
        if (!closed.count(g)) additions.insert(std::move(g));
      }
    if (!additions.empty()) {
      closed.insert(additions.begin(), additions.end());
      changed = true;
    }
  }
  return closed;
}

std::vector<Binding> bindings_of(const Substitution& theta) {
  std::vector<Binding> out;
  for (auto& [x, t] : theta.bindings()) out.emplace_back(x, t);
  return out;
}

namespace {

GroupSet set_minus(const GroupSet& a, const GroupSet& b) {
  GroupSet out;
  for (const SharingGroup& g : a)
    if (!b.count(g)) out.insert(g);
  return out;
}

GroupSet set_union(GroupSet a, const GroupSet& b) {
  a.insert(b.begin(), b.end());
  return a;
}

}  // namespace

GroupSet u_sh_std(GroupSet s, const std::vector<Binding>& bindings) {
  for (const auto& [x, t] : bindings) {
    GroupSet rx = rel(s, VarSet{x});
    GroupSet rt = rel(s, vars_of(t));
    s = set_union(set_minus(s, set_union(rx, rt)), bin(star(rx), star(rt)));
  }
  return s;
}

GroupSet u_sh_f(GroupSet s, VarSet free_vars, const std::vector<Binding>& bindings,
                bool refined) {
  for (const auto& [x, t] : bindings) {
    VarSet tv = vars_of(t);
    GroupSet rx = rel(s, VarSet{x});
    GroupSet rt = rel(s, tv);
    GroupSet removed = set_minus(s, set_union(rx, rt));
    if (free_vars.count(x)) {
      s = set_union(std::move(removed), bin(rx, rt));
      free_vars.erase(x);
    } else {
      VarSet uv = uvars_of(t);
      VarSet y, z;
      for (VarId v : tv) {
        if (uv.count(v) && free_vars.count(v))
          y.insert(v);
        else
          z.insert(v);
      }
      GroupSet ry;
      if (refined) {
        // Y-relevant groups that avoid Z; the dropped ones reappear through
        // the Z-side products.
        for (const SharingGroup& g : rel(s, y)) {
          bool touches_z = false;
          for (VarId v : g)
            if (z.count(v)) {
              touches_z = true;
              break;
            }
          if (!touches_z) ry.insert(g);
        }
      } else {
        ry = rel(s, y);
      }
      GroupSet ry_star = star(ry);
      GroupSet xz = bin(star(rx), star(rel(s, z)));
      GroupSet result = std::move(removed);
      result = set_union(std::move(result), bin(rx, ry_star));
      result = set_union(std::move(result), xz);
      result = set_union(std::move(result), bin(xz, ry_star));
      s = std::move(result);
      free_vars.erase(x);
      for (VarId v : tv) free_vars.erase(v);
    }
  }
  return s;
}

SharingElem sh_unif_std_ordered(const SharingElem& a, const std::vector<Binding>& bindings) {
  if (a.is_bot()) return SharingElem::bot();
  if (a.is_top()) return SharingElem::top();
  for (const auto& [x, t] : bindings) {
    if (!a.interest().count(x))
      throw AnalysisError("sh_unif_std: binding variable outside the variables of interest");
    for (VarId v : vars_of(t))
      if (!a.interest().count(v))
        throw AnalysisError("sh_unif_std: term variable outside the variables of interest");
  }
  if (a.groups().empty()) return a;
  return SharingElem::make(u_sh_std(a.groups(), bindings), a.interest());
}

SharingElem sh_unif_std(const SharingElem& a, const Substitution& delta) {
  return sh_unif_std_ordered(a, bindings_of(delta));
}

SharingElem sh_unif_opt_ordered(const SharingElem& a, const std::vector<Binding>& bindings,
                                bool refined) {
  if (a.is_bot()) return SharingElem::bot();
  if (a.is_top()) return SharingElem::top();
  VarSet theta_vars;
  for (const auto& [x, t] : bindings) {
    theta_vars.insert(x);
    VarSet tv = vars_of(t);
    theta_vars.insert(tv.begin(), tv.end());
  }
  VarSet u = a.interest();
  VarSet new_vars;
  for (VarId v : theta_vars)
    if (!u.count(v)) new_vars.insert(v);
  u.insert(new_vars.begin(), new_vars.end());
  // Empty concretization stays empty.
  if (a.groups().empty()) return SharingElem::make({}, std::move(u));
  GroupSet s = a.groups();
  for (VarId v : new_vars) s.insert(SharingGroup{v});
  return SharingElem::make(u_sh_f(std::move(s), new_vars, bindings, refined), std::move(u));
}

SharingElem sh_unif_opt(const SharingElem& a, const Substitution& theta, bool refined) {
  if (!theta.is_idempotent()) throw AnalysisError("sh_unif_opt: non-idempotent substitution");
  return sh_unif_opt_ordered(a, bindings_of(theta), refined);
}

SharingElem sh_match(const SharingElem& a, const SharingElem& b) {
  if (a.is_bot() || b.is_bot()) return SharingElem::bot();
  if (a.is_top() || b.is_top()) return SharingElem::top();
  const VarSet& u1 = a.interest();
  const VarSet& u2 = b.interest();
  VarSet u = u1;
  u.insert(u2.begin(), u2.end());
  if (a.groups().empty() || b.groups().empty()) return SharingElem::make({}, std::move(u));

  auto split = [](const GroupSet& s, const VarSet& other) {
    std::pair<GroupSet, GroupSet> out;  // (disjoint from other, touching other)
    for (const SharingGroup& g : s) {
      bool touches = false;
      for (VarId v : g)
        if (other.count(v)) {
          touches = true;
          break;
        }
      (touches ? out.second : out.first).insert(g);
    }
    return out;
  };
  auto [s1_only, s1_shared] = split(a.groups(), u2);
  auto [s2_only, s2_shared] = split(b.groups(), u1);

  GroupSet out = set_union(s1_only, s2_only);
  GroupSet s2_star = star(s2_shared);
  for (const SharingGroup& x1 : s1_shared)
    for (const SharingGroup& x2 : s2_star) {
      SharingGroup x1_in_u2, x2_in_u1;
      for (VarId v : x1)
        if (u2.count(v)) x1_in_u2.insert(v);
      for (VarId v : x2)
        if (u1.count(v)) x2_in_u1.insert(v);
      if (x1_in_u2 != x2_in_u1) continue;
      SharingGroup g = x1;
      g.insert(x2.begin(), x2.end());
      out.insert(std::move(g));
    }
  return SharingElem::make(std::move(out), std::move(u));
}

namespace {

struct ShHeadUnification {
  Renaming rho;
  Substitution head_mgu;
};

std::optional<ShHeadUnification> sh_head_unify(const VarSet& side_vars, const Atom& a1,
                                               const Atom& a2) {
  VarSet to_rename = side_vars;
  VarSet av = vars_of(a1);
  to_rename.insert(av.begin(), av.end());
  Renaming rho = Renaming::fresh_for(to_rename);
  auto h = mgu_atoms(rho.apply(a1), a2);
  if (!h) return std::nullopt;
  return ShHeadUnification{std::move(rho), std::move(*h)};
}

}  // namespace

// Atom variables outside the element's interest set are first occurrences:
// unconstrained, hence handled as fresh free singletons by the unification
// kernels (the iota law keeps this equal to enlarging the element first).

SharingElem sh_forward_opt(const SharingElem& chi, const Atom& a1, const Atom& a2) {
  if (chi.is_bot()) return SharingElem::bot();
  if (chi.is_top()) return SharingElem::top();
  auto h = sh_head_unify(chi.interest(), a1, a2);
  if (!h) return SharingElem::bot();
  return sh_project(sh_unif_opt(sh_rename(h->rho, chi), h->head_mgu), vars_of(a2));
}

SharingElem sh_forward_std(const SharingElem& chi, const Atom& a1, const Atom& a2) {
  if (chi.is_bot()) return SharingElem::bot();
  if (chi.is_top()) return SharingElem::top();
  auto h = sh_head_unify(chi.interest(), a1, a2);
  if (!h) return SharingElem::bot();
  SharingElem renamed = sh_rename(h->rho, chi);
  VarSet enlarge = vars_of(h->rho.apply(a1));
  VarSet av2 = vars_of(a2);
  enlarge.insert(av2.begin(), av2.end());
  SharingElem widened = sh_iota(renamed, enlarge);
  return sh_project(sh_unif_std(widened, h->head_mgu), vars_of(a2));
}

SharingElem sh_backward_opt(const SharingElem& exit, const SharingElem& call, const Atom& a1,
                            const Atom& a2) {
  if (exit.is_bot() || call.is_bot()) return SharingElem::bot();
  if (exit.is_top() || call.is_top()) return SharingElem::top();
  auto h = sh_head_unify(exit.interest(), a1, a2);
  if (!h) return SharingElem::bot();
  VarSet target = call.interest();
  VarSet av2 = vars_of(a2);
  target.insert(av2.begin(), av2.end());
  SharingElem entry = sh_unif_opt(call, h->head_mgu);
  return sh_project(sh_match(sh_rename(h->rho, exit), entry), target);
}

SharingElem sh_backward_std(const SharingElem& exit, const SharingElem& call, const Atom& a1,
                            const Atom& a2) {
  if (exit.is_bot() || call.is_bot()) return SharingElem::bot();
  if (exit.is_top() || call.is_top()) return SharingElem::top();
  auto h = sh_head_unify(exit.interest(), a1, a2);
  if (!h) return SharingElem::bot();
  VarSet target = call.interest();
  VarSet av2 = vars_of(a2);
  target.insert(av2.begin(), av2.end());
  SharingElem renamed = sh_rename(h->rho, exit);
  VarSet u = renamed.interest();
  u.insert(call.interest().begin(), call.interest().end());
  if (renamed.groups().empty() || call.groups().empty())
    return sh_project(SharingElem::make({}, std::move(u)), target);
  GroupSet s = renamed.groups();
  s.insert(call.groups().begin(), call.groups().end());
  SharingElem combined = SharingElem::make(std::move(s), std::move(u));
  // First occurrences on either side enter as plain singletons.
  VarSet enlarge = vars_of(h->rho.apply(a1));
  enlarge.insert(av2.begin(), av2.end());
  combined = sh_iota(combined, enlarge);
  return sh_project(sh_unif_std(combined, h->head_mgu), target);
}

std::string group_to_string(const SharingGroup& g) {
  std::string out;
  bool first = true;
  for (VarId v : g) {
    if (!first) out += " ";
    out += var_name(v);
    first = false;
  }
  return out;
}

std::string to_string(const SharingElem& a) {
  if (a.is_bot()) return "bot";
  if (a.is_top()) return "top";
  std::vector<SharingGroup> gs(a.groups().begin(), a.groups().end());
  std::sort(gs.begin(), gs.end(), [](const SharingGroup& x, const SharingGroup& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const SharingGroup& g : gs) {
    if (g.empty()) continue;
    if (!first) os << ", ";
    os << group_to_string(g);
    first = false;
  }
  os << '}';
  return os.str();
}

}  // namespace setsharing
