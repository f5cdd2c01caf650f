#include <CLI11.hpp>

#include <iostream>

#include "gmpsos/cli.hpp"

int main(int argc, char** argv) {
  gmpsos::RunConfig cfg;
  std::vector<std::string> args;
  int level = -1;

  CLI::App app{"Moment and SOS relaxations of generalized moment problems"};
  app.add_option("command", cfg.command,
                 "validate | solve | reduce | witness | diagnose | examples | tensor rank1|decompose | "
                 "quantum wasserstein|dps")
      ->required();
  app.add_option("args", args, "input files (tensor and quantum take the variant first)");
  app.add_option("--level,-t", level, "relaxation order t (default t_min)");
  app.add_option("--mode", cfg.mode, "auto | full | reduced")->check(CLI::IsMember({"auto", "full", "reduced"}));
  app.add_option("--tol", cfg.solver.tol, "solver tolerance")->check(CLI::PositiveNumber);
  app.add_option("--max-iters", cfg.solver.max_iters, "solver iteration limit")->check(CLI::PositiveNumber);
  app.add_option("--schedule", cfg.schedule, "gap tolerances for diagnose, decreasing")->delimiter(',');
  app.add_option("--out", cfg.out, "write a JSON report");
  app.add_flag("--expect-attained", cfg.expect_attained, "exit 4 when the multipliers diverge");
  app.add_option("--psi-seed", cfg.psi_seed, "seed for the random SOS part of Psi");
  app.add_flag("--below-tmin", cfg.below_tmin, "keep a level below t_min");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : gmpsos::exit_usage;
  }
  if (level >= 0) cfg.level = level;
  if ((cfg.command == "tensor" || cfg.command == "quantum") && !args.empty()) {
    cfg.subcommand = args.front();
    args.erase(args.begin());
  }
  cfg.inputs = std::move(args);
  return gmpsos::run(cfg, std::cout, std::cerr);
}
