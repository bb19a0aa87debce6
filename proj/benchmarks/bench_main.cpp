#include <benchmark/benchmark.h>

#include "phibvp/alpha.hpp"
#include "phibvp/certify.hpp"
#include "phibvp/expression.hpp"
#include "phibvp/operators.hpp"
#include "phibvp/solver.hpp"

using namespace phibvp;

namespace {

Problem cosine_problem(double T = 1.0) {
  return Problem(T, 1, make_phi("identity"), cosine_forcing_identity(T), VectorNormKind::sup);
}

void BM_ApplyM(benchmark::State& state) {
  const Problem p = cosine_problem();
  const Grid g = make_grid(1.0, static_cast<std::size_t>(state.range(0)));
  Trajectory tr = make_zero_trajectory(g, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_M(p, 1.0, tr));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ApplyM)->RangeMultiplier(2)->Range(41, 1313)->Complexity(benchmark::oN);

void BM_ApplyMCubic(benchmark::State& state) {
  // the numeric scalar inversion dominates here
  const Problem p(1.0, 1, make_phi("cubic"), cosine_forcing_cubic(1.0), VectorNormKind::sup);
  const Grid g = make_grid(1.0, static_cast<std::size_t>(state.range(0)));
  Trajectory tr = make_zero_trajectory(g, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_M(p, 1.0, tr));
  }
}
BENCHMARK(BM_ApplyMCubic)->Arg(81)->Arg(321);

void BM_PicardSolve(benchmark::State& state) {
  const Problem p(1.0, 1, make_phi("identity"), rhs_from_expressions("0.2*tanh(x)", 1),
                  VectorNormKind::sup);
  const Grid g = make_grid(1.0, static_cast<std::size_t>(state.range(0)));
  const Trajectory start = make_zero_trajectory(g, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(picard_solve(p, 1.0, start, SolveOptions{}));
  }
}
BENCHMARK(BM_PicardSolve)->Arg(41)->Arg(81)->Arg(161);

void BM_BuildCertificate(benchmark::State& state) {
  RhsFunction f = rhs_from_expressions("0.3*sin(x)", 1);
  f.hilbert_h = time_function_from_expression("1");
  const Problem p(1.0, 1, make_phi("identity"), std::move(f), VectorNormKind::euclidean);
  SamplingPlan plan;
  plan.samples = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_certificate(p, plan));
  }
}
BENCHMARK(BM_BuildCertificate)->Arg(500)->Arg(2000);

void BM_AlphaEval(benchmark::State& state) {
  // moderately deep tree touching every rewrite rule
  const AlphaExpr e = parse_alpha_expr(
      "(sum (scale -2 (union (atom \"B\" 1.5) (closure (atom \"C\" 2))))"
      " (scalar-product 1.5 (product-max (convex-hull (atom \"D\" 0.5))"
      " (subset-of (atom \"E\" 3)))))");
  for (auto _ : state) {
    benchmark::DoNotOptimize(alpha_eval(e));
  }
}
BENCHMARK(BM_AlphaEval);

}  // namespace

BENCHMARK_MAIN();
