#include "setsharing/cli.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "setsharing/sld.hpp"
#include "setsharing/witness.hpp"

namespace setsharing {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read program file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<std::string> sorted_group(const SharingGroup& g) {
  std::vector<std::string> out;
  for (VarId v : g) out.push_back(var_name(v));
  return out;
}

// Deterministic order: groups by size, then lexicographically; the empty
// group is omitted from reports.
std::vector<SharingGroup> sorted_groups(const SharingElem& e) {
  std::vector<SharingGroup> gs;
  if (!e.is_sh()) return gs;
  for (const SharingGroup& g : e.groups())
    if (!g.empty()) gs.push_back(g);
  std::sort(gs.begin(), gs.end(), [](const SharingGroup& x, const SharingGroup& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });
  return gs;
}

json groups_json(const SharingElem& e) {
  json arr = json::array();
  for (const SharingGroup& g : sorted_groups(e)) arr.push_back(sorted_group(g));
  return arr;
}

json vars_json(const VarSet& vs) {
  json arr = json::array();
  for (VarId v : vs) arr.push_back(var_name(v));
  return arr;
}

struct LoadedQuery {
  Program program;
  Goal goal;
  VarSet goal_vars;
};

LoadedQuery load(const RunConfig& cfg) {
  LoadedQuery q;
  q.program = parse_program(slurp(cfg.program_path));
  q.goal = parse_goal(cfg.goal_text);
  q.goal_vars = vars_of(q.goal);
  return q;
}

SharingElem initial_sharing(const RunConfig& cfg, const VarSet& goal_vars) {
  if (!cfg.init_sharing.empty()) return parse_sharing_spec(cfg.init_sharing, goal_vars);
  GroupSet gs;
  for (VarId v : goal_vars) gs.insert(SharingGroup{v});
  return SharingElem::make(std::move(gs), goal_vars);
}

std::string variant_string(OpVariant fwd, OpVariant bwd) {
  return std::string("fwd=") + to_cstring(fwd) + ",bwd=" + to_cstring(bwd);
}

Report render(const RunConfig& cfg, const json& doc, const std::string& text, bool ok) {
  Report r;
  r.ok = ok;
  r.text = cfg.format == ReportFormat::json ? doc.dump(2) : text;
  return r;
}

}  // namespace

SharingElem parse_sharing_spec(const std::string& spec, const VarSet& goal_vars) {
  size_t i = 0;
  auto skip = [&] {
    while (i < spec.size() && std::isspace(static_cast<unsigned char>(spec[i]))) ++i;
  };
  skip();
  if (i >= spec.size() || spec[i] != '{')
    throw std::runtime_error("initial sharing must be of the form {X Y, Y Z}");
  ++i;
  GroupSet groups;
  bool saw_comma = false;
  SharingGroup current;
  auto flush = [&](bool required) {
    if (current.empty()) {
      if (required) throw std::runtime_error("empty group in initial sharing spec");
      return;
    }
    groups.insert(current);
    current.clear();
  };
  while (true) {
    skip();
    if (i >= spec.size()) throw std::runtime_error("unterminated initial sharing spec");
    char c = spec[i];
    if (c == '}') {
      flush(saw_comma);
      ++i;
      break;
    }
    if (c == ',') {
      flush(true);
      saw_comma = true;
      ++i;
      continue;
    }
    if (!(std::isupper(static_cast<unsigned char>(c)) || c == '_'))
      throw std::runtime_error("expected a variable in initial sharing spec");
    std::string name;
    while (i < spec.size() &&
           (std::isalnum(static_cast<unsigned char>(spec[i])) || spec[i] == '_'))
      name += spec[i++];
    VarId v = intern_user_var(name);
    if (!goal_vars.count(v))
      throw std::runtime_error("initial sharing mentions '" + name + "' which is not a goal variable");
    current.insert(v);
  }
  skip();
  if (i != spec.size()) throw std::runtime_error("trailing input after initial sharing spec");
  return SharingElem::make(std::move(groups), goal_vars);
}

Substitution parse_init_subst(const std::string& spec) {
  // Split on top-level commas, then each chunk is V=term.
  std::vector<std::string> chunks;
  int depth = 0;
  std::string cur;
  for (char c : spec) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == ',' && depth == 0) {
      chunks.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) chunks.push_back(cur);
  std::map<VarId, Term> bindings;
  for (std::string& chunk : chunks) {
    size_t eq = chunk.find('=');
    if (eq == std::string::npos) throw std::runtime_error("initial substitution entries are V=term");
    std::string lhs = chunk.substr(0, eq);
    std::string rhs = chunk.substr(eq + 1);
    auto trim = [](std::string& s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    };
    trim(lhs);
    trim(rhs);
    if (lhs.empty() || !(std::isupper(static_cast<unsigned char>(lhs[0])) || lhs[0] == '_'))
      throw std::runtime_error("initial substitution binds variables only");
    bindings.emplace(intern_user_var(lhs), parse_term_text(rhs));
  }
  // Solve the entries as an equation set so `Y=f(X,Z), X=a` reads the
  // natural way (Y bound to f(a,Z)).
  EquationSet eqs;
  for (auto& [v, t] : bindings) eqs.emplace_back(Term::var(v), t);
  auto solved = mgu_eqs(eqs);
  if (!solved) throw std::runtime_error("initial substitution entries do not unify");
  return *solved;
}

Report run_analyze(const RunConfig& cfg) {
  auto t0 = Clock::now();
  LoadedQuery q = load(cfg);
  SharingElem chi0 = initial_sharing(cfg, q.goal_vars);
  SharingDomain dom{cfg.fwd, cfg.bwd};
  auto result = analyze_fixpoint(dom, q.program, q.goal, chi0);
  double elapsed = ms_since(t0);

  json doc;
  doc["goal"] = cfg.goal_text;
  doc["vars"] = vars_json(q.goal_vars);
  doc["success_groups"] = groups_json(result.answer);
  json table = json::array();
  std::ostringstream table_text;
  for (auto& row : result.table) {
    table.push_back(
        {{"atom", row.atom}, {"entry", groups_json(row.entry)}, {"exit", groups_json(row.exit)}});
    table_text << "  " << row.atom << ": entry " << to_string(row.entry) << " -> exit "
               << to_string(row.exit) << "\n";
  }
  doc["table"] = table;
  doc["timings_ms"] = elapsed;
  doc["variant"] = variant_string(cfg.fwd, cfg.bwd);

  std::ostringstream text;
  text << "goal: " << cfg.goal_text << "\n"
       << "init: " << to_string(chi0) << "\n"
       << "variant: " << variant_string(cfg.fwd, cfg.bwd) << "\n"
       << "success: " << to_string(result.answer) << "\n"
       << "iterations: " << result.iterations << "\n"
       << "call patterns:\n"
       << table_text.str();
  return render(cfg, doc, text.str(), true);
}

Report run_concrete(const RunConfig& cfg) {
  auto t0 = Clock::now();
  LoadedQuery q = load(cfg);
  Substitution init =
      cfg.init_subst.empty() ? Substitution() : parse_init_subst(cfg.init_subst);
  PsubElem chi0 = PsubElem::of(init, q.goal_vars);
  ConcreteDomain dom;
  auto result = analyze_depth(dom, q.program, q.goal, chi0, cfg.concrete_depth);
  double elapsed = ms_since(t0);

  json doc;
  doc["goal"] = cfg.goal_text;
  doc["vars"] = vars_json(q.goal_vars);
  json answers = json::array();
  std::ostringstream answers_text;
  if (result.answer.is_set())
    for (const ExSubst& e : result.answer.substs()) {
      answers.push_back(to_string(e));
      answers_text << "  " << to_string(e) << "\n";
    }
  doc["success_answers"] = answers;
  doc["depth"] = cfg.concrete_depth;
  doc["timings_ms"] = elapsed;
  doc["variant"] = "concrete";

  std::ostringstream text;
  text << "goal: " << cfg.goal_text << "\n"
       << "init: " << to_string(init) << "\n"
       << "depth: " << cfg.concrete_depth << "\n"
       << "answers:\n"
       << answers_text.str();
  return render(cfg, doc, text.str(), true);
}

Report run_compare(const RunConfig& cfg) {
  auto t0 = Clock::now();
  LoadedQuery q = load(cfg);
  SharingElem chi0 = initial_sharing(cfg, q.goal_vars);

  struct Entry {
    OpVariant fwd, bwd;
    SharingElem answer;
  };
  std::vector<Entry> entries;
  for (OpVariant f : {OpVariant::opt, OpVariant::std_})
    for (OpVariant b : {OpVariant::opt, OpVariant::std_}) {
      SharingDomain dom{f, b};
      entries.push_back({f, b, analyze_fixpoint(dom, q.program, q.goal, chi0).answer});
    }
  const SharingElem& best = entries.front().answer;
  double elapsed = ms_since(t0);

  bool order_ok = true;
  json variants = json::array();
  std::ostringstream text;
  text << "goal: " << cfg.goal_text << "\n" << "init: " << to_string(chi0) << "\n";
  for (auto& e : entries) {
    bool included = sh_leq(best, e.answer);
    order_ok = order_ok && included;
    GroupSet extra;
    if (e.answer.is_sh() && best.is_sh())
      for (const SharingGroup& g : e.answer.groups())
        if (!best.groups().count(g)) extra.insert(g);
    json extra_json = json::array();
    for (const SharingGroup& g : extra) extra_json.push_back(sorted_group(g));
    variants.push_back({{"variant", variant_string(e.fwd, e.bwd)},
                        {"success_groups", groups_json(e.answer)},
                        {"extra_over_opt", extra_json},
                        {"opt_included", included}});
    text << variant_string(e.fwd, e.bwd) << ": " << to_string(e.answer);
    if (!extra.empty()) {
      text << "   extra over opt:";
      for (const SharingGroup& g : extra) text << " {" << group_to_string(g) << "}";
    }
    text << "\n";
  }

  json doc;
  doc["goal"] = cfg.goal_text;
  doc["vars"] = vars_json(q.goal_vars);
  doc["variants"] = variants;
  doc["opt_most_precise"] = order_ok;
  doc["timings_ms"] = elapsed;
  text << (order_ok ? "opt <= every variant: yes" : "ORDERING VIOLATION: opt not included")
       << "\n";
  return render(cfg, doc, text.str(), order_ok);
}

Report run_check(const RunConfig& cfg) {
  auto t0 = Clock::now();
  LoadedQuery q = load(cfg);
  SharingElem chi0 = initial_sharing(cfg, q.goal_vars);
  int concrete_depth = std::max(cfg.concrete_depth, cfg.sld_depth);

  SharingDomain sh_dom{cfg.fwd, cfg.bwd};
  SharingElem abstract_answer = analyze_fixpoint(sh_dom, q.program, q.goal, chi0).answer;

  json violations = json::array();
  std::ostringstream text;
  text << "goal: " << cfg.goal_text << "\n"
       << "init: " << to_string(chi0) << "\n"
       << "abstract: " << to_string(abstract_answer) << "\n";

  auto violation = [&](const std::string& stage, const std::string& start,
                       const std::string& item) {
    violations.push_back({{"stage", stage},
                          {"program", cfg.program_path},
                          {"goal", cfg.goal_text},
                          {"start", start},
                          {"item", item}});
    text << "VIOLATION [" << stage << "] start " << start << ": " << item << "\n";
  };

  ConcreteDomain ps_dom;
  std::set<ExSubst> starts = gamma_witnesses(chi0);
  if (auto joint = gamma_joint_witness(chi0)) starts.insert(*joint);
  for (const ExSubst& phi : starts) {
    PsubElem start = PsubElem::make({phi}, q.goal_vars);
    PsubElem concrete = analyze_depth(ps_dom, q.program, q.goal, start, concrete_depth).answer;
    if (!sh_leq(alpha(concrete), abstract_answer))
      violation("alpha(concrete) <= abstract", to_string(phi), to_string(alpha(concrete)));
    auto answers = sld_solve(q.program, q.goal, phi.rep(), cfg.sld_depth);
    text << "start " << to_string(phi) << ": " << answers.size() << " sld answer(s), concrete "
         << (concrete.is_set() ? std::to_string(concrete.substs().size()) : std::string("bot"))
         << " class(es)\n";
    for (const SldAnswer& a : answers) {
      PsubElem single = PsubElem::make({a.answer}, q.goal_vars);
      if (!ps_leq(single, concrete))
        violation("sld <= concrete", to_string(phi), to_string(a.answer));
      if (!sh_leq(alpha(single), abstract_answer))
        violation("alpha(sld) <= abstract", to_string(phi), to_string(a.answer));
    }
  }
  double elapsed = ms_since(t0);
  bool ok = violations.empty();

  json doc;
  doc["goal"] = cfg.goal_text;
  doc["vars"] = vars_json(q.goal_vars);
  doc["abstract_groups"] = groups_json(abstract_answer);
  doc["sld_depth"] = cfg.sld_depth;
  doc["concrete_depth"] = concrete_depth;
  doc["violations"] = violations;
  doc["ok"] = ok;
  doc["timings_ms"] = elapsed;
  text << (ok ? "check passed" : "check FAILED") << "\n";
  return render(cfg, doc, text.str(), ok);
}

Report run_witness(const RunConfig& cfg, const std::string& theta_text) {
  auto t0 = Clock::now();
  Goal goal = parse_goal(cfg.goal_text);
  VarSet goal_vars = vars_of(goal);
  SharingElem s1 = initial_sharing(cfg, goal_vars);
  Substitution theta = parse_init_subst(theta_text);

  SharingElem result = sh_unif_opt(s1, theta);
  json groups = json::array();
  std::ostringstream text;
  text << "input: " << to_string(s1) << "\n"
       << "theta: " << to_string(theta) << "\n"
       << "unified: " << to_string(result) << "\n";
  bool ok = true;
  for (const SharingGroup& x : result.groups()) {
    if (x.empty()) continue;
    json row;
    row["group"] = sorted_group(x);
    auto plan = connected_decomposition(s1.groups(), goal_vars, theta, x);
    bool realized = false;
    std::string delta_text;
    if (plan) {
      Substitution delta = build_witness(*plan, theta, goal_vars);
      realized = check_witness(delta, theta, s1.groups(), goal_vars, x);
      delta_text = to_string(delta);
    }
    row["realized"] = realized;
    row["witness"] = delta_text;
    groups.push_back(row);
    ok = ok && realized;
    text << "  {" << group_to_string(x) << "}: "
         << (realized ? "realized by " + delta_text : "NOT REALIZED") << "\n";
  }
  double elapsed = ms_since(t0);

  json doc;
  doc["goal"] = cfg.goal_text;
  doc["theta"] = theta_text;
  doc["unified_groups"] = groups_json(result);
  doc["witnesses"] = groups;
  doc["ok"] = ok;
  doc["timings_ms"] = elapsed;
  text << (ok ? "all groups realized" : "NOT OPTIMAL: some group lacks a witness") << "\n";
  return render(cfg, doc, text.str(), ok);
}

}  // namespace setsharing
