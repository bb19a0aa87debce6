#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace phibvp {

// Command-line overrides applied on top of each problem file's own settings.
struct CommonFlags {
  std::optional<int> grid_n;
  std::optional<double> tol;
  std::optional<double> theta;
  std::optional<int> lambda_steps;
  std::optional<int> max_iters;
  std::optional<std::uint64_t> seed;
  int jobs = 1;
  bool verify = false;
  std::optional<std::string> out_dir;
};

// Exit codes shared by the subcommands: 0 success, 1 input error,
// 2 non-convergence, 3 no certificate. Batch runs return the worst
// per-file code; per-file output is buffered and printed in input order.

// Solves each file, writes <stem>.solution.csv and <stem>.diagnostics.json
// next to the input (or into flags.out_dir). With flags.verify the written
// CSV is read back and the recomputed defects are compared to the
// diagnostics values within 1e-12.
int cmd_solve(const std::vector<std::string>& paths, const CommonFlags& flags);

// Builds the existence certificate for each file and writes
// <stem>.certificate.json; its bytes depend only on the file and the seed.
int cmd_certify(const std::vector<std::string>& paths, const CommonFlags& flags);

// Evaluates one measure-of-noncompactness expression and prints the value
// (tagged exact / upper bound / unknown) plus its derivation trace.
int cmd_alpha(const std::string& expr);

}  // namespace phibvp
