#include "phibvp/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace phibvp {

Grid make_grid(double length, std::size_t n) {
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw std::invalid_argument("make_grid: length must be positive and finite");
  }
  if (n < 2) {
    throw std::invalid_argument("make_grid: need at least 2 nodes");
  }
  Grid g;
  g.length_ = length;
  g.spacing_ = length / static_cast<double>(n - 1);
  g.nodes_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    g.nodes_[i] = length * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  g.nodes_.front() = 0.0;
  g.nodes_.back() = length;
  return g;
}

Grid make_grid_from_nodes(std::vector<double> nodes) {
  if (nodes.size() < 2) {
    throw std::invalid_argument("make_grid_from_nodes: need at least 2 nodes");
  }
  const double length = nodes.back();
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw std::invalid_argument("make_grid_from_nodes: final node must be positive");
  }
  if (nodes.front() != 0.0) {
    throw std::invalid_argument("make_grid_from_nodes: first node must be 0");
  }
  const double h = length / static_cast<double>(nodes.size() - 1);
  const double tol = 1e-9 * (length + 1.0);
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    const double step = nodes[i] - nodes[i - 1];
    if (!(step > 0.0)) {
      throw std::invalid_argument("make_grid_from_nodes: nodes must increase at index " +
                                  std::to_string(i));
    }
    if (std::abs(step - h) > tol) {
      throw std::invalid_argument("make_grid_from_nodes: spacing is not uniform at index " +
                                  std::to_string(i));
    }
  }
  Grid g;
  g.length_ = length;
  g.spacing_ = h;
  g.nodes_ = std::move(nodes);
  return g;
}

}  // namespace phibvp
