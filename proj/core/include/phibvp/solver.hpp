#pragma once

#include <optional>
#include <vector>

#include "phibvp/operators.hpp"

namespace phibvp {

struct SolveOptions {
  /// Damping for the Picard step: next = (1 - theta) * tr + theta * M(tr).
  /// Must lie in (0, 1]. A divergence detector (three consecutive growing
  /// step norms) lowers theta to 0.5 once.
  double theta = 1.0;
  /// Relative C^1 tolerance on the update norm.
  double tol = 1e-10;
  int max_iters = 300;
  /// Uniform homotopy schedule lambda_j = j / lambda_steps, j = 1..steps.
  int lambda_steps = 1;
  /// Acceptance threshold for the differential-equation defect.
  double residual_tol = 1e-3;
};

struct SolveResult {
  Trajectory trajectory;
  /// True only when the iteration stopped on its tolerance and the returned
  /// trajectory satisfies final_gap <= tol and final_residual <= residual_tol.
  bool converged = false;
  std::vector<int> iterations_per_lambda;
  /// Fixed-point defect at the final stage's lambda (equals
  /// fixed_point_gap(p, trajectory) once lambda = 1).
  double final_gap = 0.0;
  /// Differential-equation defect at the final stage's lambda.
  double final_residual = 0.0;
  /// C^1 norms of the accepted updates, all stages concatenated.
  std::vector<double> history;
  /// Set when a continuation stage failed; holds that stage's lambda.
  std::optional<double> failed_lambda;
  bool damping_fallback = false;
};

/// Damped Picard iteration on tr <- (1 - theta) tr + theta M(lambda, tr),
/// stopping when the update norm falls below tol * (1 + norm_c1(tr)) or
/// max_iters is reached. Iterates are abandoned early if their C^1 norm
/// exceeds a divergence cutoff.
SolveResult picard_solve(const Problem& p, double lambda, const Trajectory& start,
                         const SolveOptions& opts);

/// Homotopy continuation over the uniform lambda schedule with warm starts;
/// stage 0 starts from the zero trajectory, the exact lambda = 0 solution.
/// Returns the lambda = 1 result, or the first failing stage's result with
/// failed_lambda set.
SolveResult continuation_solve(const Problem& p, const Grid& grid, const SolveOptions& opts);

struct VerifyReport {
  /// Fixed-point and equation defects of the (re-sampled) input trajectory
  /// on a grid with halved spacing.
  double gap = 0.0;
  double residual = 0.0;
  /// Same defects after one fixed-point application on the fine grid;
  /// for a consistent solution the polished residual drops by about 4x.
  double polished_gap = 0.0;
  double polished_residual = 0.0;
  /// polished_residual <= opts.residual_tol; the raw resampled residual is
  /// contaminated by a first-order interpolation artifact at the boundary
  /// stencils, so the defect is judged after the polish.
  bool pass = false;
};

/// Independent check of a solve result on a grid with doubled resolution
/// (2n - 1 nodes): re-sample by linear interpolation, evaluate both defects,
/// then apply one polish iteration and evaluate them again.
VerifyReport verify_solution(const Problem& p, const SolveResult& r, const SolveOptions& opts);

}  // namespace phibvp
