#include <iostream>

#include <CLI11.hpp>

#include "setsharing/cli.hpp"

namespace {

using setsharing::OpVariant;
using setsharing::Report;
using setsharing::ReportFormat;
using setsharing::RunConfig;

void add_common(CLI::App* cmd, RunConfig& cfg, std::string& format, std::string& fwd,
                std::string& bwd) {
  cmd->add_option("--goal", cfg.goal_text, "goal, e.g. \"p(X,Y,Z)\"")->required();
  cmd->add_option("--init", cfg.init_sharing,
                  "initial sharing, e.g. \"{X Y, Y Z}\"; default: all variables independent");
  cmd->add_option("--fwd", fwd, "forward unification variant")
      ->check(CLI::IsMember({"opt", "std"}));
  cmd->add_option("--bwd", bwd, "backward unification variant")
      ->check(CLI::IsMember({"opt", "std"}));
  cmd->add_option("--depth", cfg.concrete_depth, "concrete iteration depth")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--sld-depth", cfg.sld_depth, "SLD resolution depth bound")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"goal-dependent set-sharing analyzer for pure logic programs"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string format = "text", fwd = "opt", bwd = "opt", theta;

  CLI::App* analyze = app.add_subcommand("analyze", "abstract sharing analysis");
  analyze->add_option("program", cfg.program_path, "program file")->required();
  add_common(analyze, cfg, format, fwd, bwd);

  CLI::App* compare = app.add_subcommand("compare", "run all operator variant combinations");
  compare->add_option("program", cfg.program_path, "program file")->required();
  add_common(compare, cfg, format, fwd, bwd);

  CLI::App* concrete = app.add_subcommand("concrete", "depth-bounded concrete analysis");
  concrete->add_option("program", cfg.program_path, "program file")->required();
  add_common(concrete, cfg, format, fwd, bwd);
  concrete->add_option("--init-subst", cfg.init_subst, "initial substitution, e.g. \"Y=f(X,Z)\"");

  CLI::App* check = app.add_subcommand("check", "SLD / concrete / abstract soundness check");
  check->add_option("program", cfg.program_path, "program file")->required();
  add_common(check, cfg, format, fwd, bwd);

  CLI::App* witness = app.add_subcommand("witness", "realize abstract unification groups");
  add_common(witness, cfg, format, fwd, bwd);
  witness->add_option("--theta", theta, "substitution to unify with, e.g. \"X=f(U)\"")
      ->required();

  CLI11_PARSE(app, argc, argv);

  cfg.format = format == "json" ? ReportFormat::json : ReportFormat::text;
  cfg.fwd = fwd == "std" ? OpVariant::std_ : OpVariant::opt;
  cfg.bwd = bwd == "std" ? OpVariant::std_ : OpVariant::opt;

  try {
    Report report;
    if (analyze->parsed())
      report = run_analyze(cfg);
    else if (compare->parsed())
      report = run_compare(cfg);
    else if (concrete->parsed())
      report = run_concrete(cfg);
    else if (check->parsed())
      report = run_check(cfg);
    else
      report = run_witness(cfg, theta);
    std::cout << report.text;
    if (!report.text.empty() && report.text.back() != '\n') std::cout << '\n';
    return report.ok ? 0 : 1;
  } catch (const setsharing::ParseError& e) {
    std::cerr << "parse error at " << e.line << ":" << e.column << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
