// phibvp: solve second-order boundary value problems (phi(u'))' = f(t, u, u')
// with u(T) = 0, u'(0) = 0, and check existence certificates for them.
//
//   phibvp solve problem.prob --grid-n 161 --verify
//   phibvp certify problem.prob --seed 7
//   phibvp alpha '(scale 3 (atom B 2))'

#include <string>
#include <vector>

#include <CLI11.hpp>

#include "phibvp/commands.hpp"

namespace {

void add_common_flags(CLI::App* cmd, phibvp::CommonFlags& flags) {
  cmd->add_option("--grid-n", flags.grid_n, "Override the grid node count");
  cmd->add_option("--tol", flags.tol, "Override the iteration tolerance");
  cmd->add_option("--theta", flags.theta, "Override the damping factor in (0, 1]");
  cmd->add_option("--lambda-steps", flags.lambda_steps, "Override the continuation step count");
  cmd->add_option("--max-iters", flags.max_iters, "Override the iteration cap per stage");
  cmd->add_option("--seed", flags.seed, "Override the sampling seed");
  cmd->add_option("--jobs", flags.jobs, "Process input files with this many threads")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out-dir", flags.out_dir, "Write outputs into this directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boundary value problem solver and existence-certificate engine"};
  app.require_subcommand(1);

  phibvp::CommonFlags solve_flags;
  std::vector<std::string> solve_paths;
  CLI::App* solve = app.add_subcommand("solve", "Solve problem files and write CSV + diagnostics");
  solve->add_option("files", solve_paths, "Problem files")->required();
  add_common_flags(solve, solve_flags);
  solve->add_flag("--verify", solve_flags.verify,
                  "Re-ingest the written CSV and check it reproduces the diagnostics defects");

  phibvp::CommonFlags certify_flags;
  std::vector<std::string> certify_paths;
  CLI::App* certify =
      app.add_subcommand("certify", "Build existence certificates and write certificate JSON");
  certify->add_option("files", certify_paths, "Problem files")->required();
  add_common_flags(certify, certify_flags);

  std::string alpha_expr;
  CLI::App* alpha =
      app.add_subcommand("alpha", "Evaluate a measure-of-noncompactness expression");
  alpha->add_option("expr", alpha_expr, "S-expression, e.g. (scale 3 (atom B 2))")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;  // --help exits 0; every parse failure is an input error
  }

  if (solve->parsed()) return phibvp::cmd_solve(solve_paths, solve_flags);
  if (certify->parsed()) return phibvp::cmd_certify(certify_paths, certify_flags);
  if (alpha->parsed()) return phibvp::cmd_alpha(alpha_expr);
  return 1;
}
