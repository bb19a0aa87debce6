#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "phibvp/norms.hpp"
#include "phibvp/trajectory.hpp"

using namespace phibvp;

TEST_CASE("vector norms") {
  const std::vector<double> v = {3.0, -4.0};
  CHECK(vector_norm(VectorNormKind::euclidean, v) == doctest::Approx(5.0));
  CHECK(vector_norm(VectorNormKind::sup, v) == doctest::Approx(4.0));
  CHECK(vector_norm(VectorNormKind::one, v) == doctest::Approx(7.0));

  CHECK(parse_norm_kind("euclidean") == VectorNormKind::euclidean);
  CHECK(parse_norm_kind("sup") == VectorNormKind::sup);
  CHECK(parse_norm_kind("one") == VectorNormKind::one);
  CHECK_THROWS_AS(parse_norm_kind("l7"), std::invalid_argument);

  CHECK(std::string(to_string(VectorNormKind::euclidean)) == "euclidean");
}

TEST_CASE("trajectory norm and distance") {
  const Grid g = make_grid(1.0, 5);
  Trajectory a = make_zero_trajectory(g, 2);
  CHECK(norm_c1(a, VectorNormKind::sup) == 0.0);

  a.u.node(2)[0] = 3.0;
  a.du.node(4)[1] = -5.0;
  CHECK(norm_c1(a, VectorNormKind::sup) == doctest::Approx(5.0));

  Trajectory b = make_zero_trajectory(g, 2);
  CHECK(c1_distance(a, b, VectorNormKind::sup) == doctest::Approx(5.0));
  CHECK(c1_distance(a, a, VectorNormKind::sup) == 0.0);
}

TEST_CASE("blend interpolates nodewise") {
  const Grid g = make_grid(1.0, 4);
  Trajectory a = make_zero_trajectory(g, 1);
  Trajectory b = make_zero_trajectory(g, 1);
  for (std::size_t i = 0; i < g.size(); ++i) {
    b.u.node(i)[0] = 2.0;
    b.du.node(i)[0] = -4.0;
  }
  const Trajectory mid = blend(a, b, 0.25);
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(mid.u.node(i)[0] == doctest::Approx(0.5));
    CHECK(mid.du.node(i)[0] == doctest::Approx(-1.0));
  }
  // theta = 1 returns the target
  CHECK(c1_distance(blend(a, b, 1.0), b, VectorNormKind::sup) == 0.0);
}

TEST_CASE("linear resampling keeps shared nodes and interpolates between") {
  const Grid coarse = make_grid(1.0, 5);
  Trajectory tr = make_zero_trajectory(coarse, 1);
  for (std::size_t i = 0; i < coarse.size(); ++i) {
    tr.u.node(i)[0] = coarse.node(i) * coarse.node(i);
    tr.du.node(i)[0] = 2.0 * coarse.node(i);
  }

  const Grid fine = make_grid(1.0, 9);
  const Trajectory r = resample_linear(tr, fine);
  REQUIRE(r.grid.size() == 9);
  for (std::size_t i = 0; i < coarse.size(); ++i) {
    CHECK(r.u.node(2 * i)[0] == doctest::Approx(tr.u.node(i)[0]).epsilon(1e-14));
  }
  // midpoint of [0.25, 0.5]: average of the endpoint samples
  CHECK(r.u.node(3)[0] == doctest::Approx(0.5 * (0.0625 + 0.25)).epsilon(1e-12));

  // resampling onto the same grid is the identity
  const Trajectory same = resample_linear(tr, coarse);
  CHECK(c1_distance(same, tr, VectorNormKind::sup) < 1e-14);
}
