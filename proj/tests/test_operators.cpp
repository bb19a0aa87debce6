#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "phibvp/errors.hpp"
#include "phibvp/expression.hpp"
#include "phibvp/operators.hpp"
#include "phibvp/problem.hpp"

using namespace phibvp;

namespace {

Problem simple_problem(RhsFunction f, double T = 1.0, std::size_t dim = 1,
                       VectorNormKind norm = VectorNormKind::sup) {
  return Problem(T, dim, make_phi("identity"), std::move(f), norm);
}

Trajectory random_trajectory(const Grid& g, std::size_t dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> val(-2.0, 2.0);
  Trajectory tr = make_zero_trajectory(g, dim);
  for (double& v : tr.u.flat()) v = val(rng);
  for (double& v : tr.du.flat()) v = val(rng);
  return tr;
}

}  // namespace

TEST_CASE("nemytskii samples f along the trajectory") {
  const Problem p = simple_problem(rhs_from_expressions("t + x*y", 1));
  const Grid g = make_grid(1.0, 3);
  Trajectory tr = make_zero_trajectory(g, 1);
  tr.u.node(1)[0] = 2.0;
  tr.du.node(1)[0] = 3.0;
  const NodeArray F = nemytskii(p, tr);
  CHECK(F.node(0)[0] == doctest::Approx(0.0));
  CHECK(F.node(1)[0] == doctest::Approx(0.5 + 6.0));
  CHECK(F.node(2)[0] == doctest::Approx(1.0));
}

TEST_CASE("nemytskii rejects non-finite values with the node location") {
  const Problem p = simple_problem(rhs_from_expressions("1/(t - 0.5)", 1));
  const Grid g = make_grid(1.0, 3);  // middle node sits exactly on the pole
  const Trajectory tr = make_zero_trajectory(g, 1);
  CHECK_THROWS_AS(nemytskii(p, tr), EvaluationError);
}

TEST_CASE("fixed point map output satisfies both boundary conditions exactly") {
  std::mt19937_64 rng(2024);
  const std::vector<std::string> phis = {"identity", "scale", "cubic", "atan_shift"};
  const std::vector<std::string> fs = {"t - x", "sin(x) + cos(y)", "x*y - t*t", "exp(-x*x)"};

  for (int trial = 0; trial < 100; ++trial) {
    const double T = 0.5 + 0.1 * (trial % 16);
    const std::size_t dim = 1 + trial % 3;
    const std::string& phi_name = phis[trial % phis.size()];
    const double params[] = {0.5 + 0.25 * (trial % 4)};
    const PhiMap phi =
        phi_name == "identity" || phi_name == "cubic" ? make_phi(phi_name) : make_phi(phi_name, params);
    const Problem p(T, dim, phi, rhs_from_expressions(fs[trial % fs.size()], dim),
                    VectorNormKind::sup);

    const Grid g = make_grid(T, 11 + (trial % 3) * 10);
    const Trajectory in = random_trajectory(g, dim, rng);
    const Trajectory out = apply_M(p, 1.0, in);

    for (std::size_t c = 0; c < dim; ++c) {
      CHECK(std::abs(out.u.node(g.size() - 1)[c]) <= 1e-14);
      CHECK(std::abs(out.du.node(0)[c]) <= 1e-14);
    }
  }
}

TEST_CASE("fixed point gap of the zero trajectory under unit forcing") {
  // M(0) has derivative t and value (t^2 - 1)/2 on [0, 1], so the gap is
  // max{sup |t|, sup |(t^2-1)/2|} = 1.
  const Problem p = simple_problem(constant_rhs(1.0));
  const Grid g = make_grid(1.0, 41);
  const Trajectory zero = make_zero_trajectory(g, 1);
  CHECK(fixed_point_gap(p, zero) == doctest::Approx(1.0).epsilon(1e-12));

  const Trajectory image = apply_M(p, 1.0, zero);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double t = g.node(i);
    CHECK(image.du.node(i)[0] == doctest::Approx(t).epsilon(1e-13));
    CHECK(image.u.node(i)[0] == doctest::Approx(0.5 * (t * t - 1.0)).epsilon(1e-13));
  }
}

TEST_CASE("homotopy stage scales linearly for time-only forcing") {
  const Problem p = simple_problem(cosine_forcing_identity(1.0));
  const Grid g = make_grid(1.0, 21);
  const Trajectory zero = make_zero_trajectory(g, 1);
  const Trajectory full = apply_M(p, 1.0, zero);
  const Trajectory half = apply_M(p, 0.5, zero);
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(half.u.node(i)[0] == doctest::Approx(0.5 * full.u.node(i)[0]).epsilon(1e-12));
    CHECK(half.du.node(i)[0] == doctest::Approx(0.5 * full.du.node(i)[0]).epsilon(1e-12));
  }
  // lambda = 0 sends everything to the zero trajectory
  const Trajectory none = apply_M(p, 0.0, zero);
  CHECK(norm_c1(none, VectorNormKind::sup) == 0.0);
}

TEST_CASE("equation defect of the discrete fixed point is small") {
  const Problem p = simple_problem(cosine_forcing_identity(1.0));
  const Grid g = make_grid(1.0, 81);
  const Trajectory sol = apply_M(p, 1.0, make_zero_trajectory(g, 1));
  CHECK(ode_residual(p, sol) < 1e-3);
  CHECK(detail::stage_residual(p, 1.0, sol) == doctest::Approx(ode_residual(p, sol)));
}
