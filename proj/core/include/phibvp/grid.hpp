#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace phibvp {

/// Uniform partition of [0, length] with n nodes and spacing h = length/(n-1).
class Grid {
 public:
  Grid() = default;

  double length() const { return length_; }
  double spacing() const { return spacing_; }
  std::size_t size() const { return nodes_.size(); }
  double node(std::size_t i) const { return nodes_[i]; }
  std::span<const double> nodes() const { return nodes_; }

 private:
  friend Grid make_grid(double length, std::size_t n);
  friend Grid make_grid_from_nodes(std::vector<double> nodes);

  double length_ = 0.0;
  double spacing_ = 0.0;
  std::vector<double> nodes_;
};

/// Builds the uniform grid over [0, length]; requires length > 0 and n >= 2.
Grid make_grid(double length, std::size_t n);

/// Rebuilds a grid from explicit node values (used when re-ingesting solution
/// files). Nodes must start at 0, increase, and be uniform to within a small
/// relative tolerance; the stored values are kept verbatim so downstream
/// arithmetic reproduces the original run exactly.
Grid make_grid_from_nodes(std::vector<double> nodes);

}  // namespace phibvp
