#pragma once

#include <string>

#include "setsharing/engine.hpp"

namespace setsharing {

enum class ReportFormat { text, json };

struct RunConfig {
  std::string program_path;
  std::string goal_text;
  std::string init_sharing;  // "{X Y, Y Z}"; "{}" = empty element; "" = all singletons
  std::string init_subst;    // "Y=f(X,Z)" comma list, concrete mode only
  OpVariant fwd = OpVariant::opt;
  OpVariant bwd = OpVariant::opt;
  int concrete_depth = 5;
  int sld_depth = 8;
  ReportFormat format = ReportFormat::text;
};

struct Report {
  bool ok = true;
  std::string text;  // rendered per cfg.format (text or a json document)
};

// Parses `{X Y, Y Z}` over the goal's variables; the empty group is
// implicit, bare `{}` denotes the empty-concretization element.
SharingElem parse_sharing_spec(const std::string& spec, const VarSet& goal_vars);

// Parses a comma list `X=a, Y=f(X,Z)` into a substitution.
Substitution parse_init_subst(const std::string& spec);

// Abstract analysis with the configured operator variants.
Report run_analyze(const RunConfig& cfg);

// Depth-bounded concrete analysis from the configured initial substitution.
Report run_concrete(const RunConfig& cfg);

// Runs all four (fwd, bwd) variant combinations and reports group-set
// differences and the precision ordering against (opt, opt).
Report run_compare(const RunConfig& cfg);

// Runs the SLD, concrete and abstract pipelines and checks the soundness
// inclusions between them; any violation makes the report failing and
// carries a reproducer.
Report run_check(const RunConfig& cfg);

// Debugging aid for the optimality machinery: computes the optimized
// abstract unification of the initial element with a substitution and
// realizes every output group through a constructed witness.
Report run_witness(const RunConfig& cfg, const std::string& theta_text);

}  // namespace setsharing
