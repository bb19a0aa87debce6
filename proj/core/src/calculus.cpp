#include "phibvp/calculus.hpp"

#include <stdexcept>

namespace phibvp {

namespace {

void require_shape(const Grid& grid, const NodeArray& a, const char* who) {
  if (a.size() != grid.size()) {
    throw std::invalid_argument(std::string(who) + ": node count does not match the grid");
  }
  if (a.dim() == 0) {
    throw std::invalid_argument(std::string(who) + ": empty node array");
  }
}

}  // namespace

NodeArray cumulative_integral(const Grid& grid, const NodeArray& F) {
  require_shape(grid, F, "cumulative_integral");
  const std::size_t n = grid.size();
  const std::size_t d = F.dim();
  const double half_h = 0.5 * grid.spacing();

  NodeArray V(n, d);
  for (std::size_t i = 1; i < n; ++i) {
    auto prev = V.node(i - 1);
    auto out = V.node(i);
    auto f0 = F.node(i - 1);
    auto f1 = F.node(i);
    for (std::size_t c = 0; c < d; ++c) {
      out[c] = prev[c] + half_h * (f0[c] + f1[c]);
    }
  }
  return V;
}

NodeArray reverse_negated_integral(const Grid& grid, const NodeArray& W) {
  require_shape(grid, W, "reverse_negated_integral");
  const std::size_t n = grid.size();
  const std::size_t d = W.dim();
  const double half_h = 0.5 * grid.spacing();

  NodeArray U(n, d);
  for (std::size_t i = n - 1; i-- > 0;) {
    auto next = U.node(i + 1);
    auto out = U.node(i);
    auto w0 = W.node(i);
    auto w1 = W.node(i + 1);
    for (std::size_t c = 0; c < d; ++c) {
      out[c] = next[c] - half_h * (w0[c] + w1[c]);
    }
  }
  return U;
}

NodeArray discrete_derivative(const Grid& grid, const NodeArray& V) {
  require_shape(grid, V, "discrete_derivative");
  const std::size_t n = grid.size();
  if (n < 3) {
    throw std::invalid_argument("discrete_derivative: need at least 3 nodes");
  }
  const std::size_t d = V.dim();
  const double inv2h = 1.0 / (2.0 * grid.spacing());

  NodeArray D(n, d);
  {
    auto out = D.node(0);
    auto v0 = V.node(0), v1 = V.node(1), v2 = V.node(2);
    for (std::size_t c = 0; c < d; ++c) {
      out[c] = (-3.0 * v0[c] + 4.0 * v1[c] - v2[c]) * inv2h;
    }
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    auto out = D.node(i);
    auto lo = V.node(i - 1), hi = V.node(i + 1);
    for (std::size_t c = 0; c < d; ++c) {
      out[c] = (hi[c] - lo[c]) * inv2h;
    }
  }
  {
    auto out = D.node(n - 1);
    auto v0 = V.node(n - 1), v1 = V.node(n - 2), v2 = V.node(n - 3);
    for (std::size_t c = 0; c < d; ++c) {
      out[c] = (3.0 * v0[c] - 4.0 * v1[c] + v2[c]) * inv2h;
    }
  }
  return D;
}

}  // namespace phibvp
