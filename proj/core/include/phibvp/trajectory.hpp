#pragma once

#include <cstddef>

#include "phibvp/grid.hpp"
#include "phibvp/node_array.hpp"
#include "phibvp/norms.hpp"

namespace phibvp {

/// Discrete C^1 path on a grid: solution samples u and first-derivative
/// samples du, iterated jointly by the fixed-point machinery.
struct Trajectory {
  Grid grid;
  NodeArray u;
  NodeArray du;

  std::size_t dim() const { return u.dim(); }
};

Trajectory make_zero_trajectory(const Grid& grid, std::size_t dim);

/// C^1 norm: max over nodes of max{|u_i|, |du_i|} in the given vector norm.
double norm_c1(const Trajectory& tr, VectorNormKind kind);

/// norm_c1 of (a - b) without materializing the difference.
double c1_distance(const Trajectory& a, const Trajectory& b, VectorNormKind kind);

/// (1 - theta) * a + theta * b, nodewise on both components.
Trajectory blend(const Trajectory& a, const Trajectory& b, double theta);

/// Piecewise-linear resampling of u and du onto another grid of the same span.
Trajectory resample_linear(const Trajectory& tr, const Grid& fine);

}  // namespace phibvp
