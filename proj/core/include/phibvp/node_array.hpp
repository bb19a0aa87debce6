#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace phibvp {

/// n points of R^d stored contiguously, one grid node per point.
class NodeArray {
 public:
  NodeArray() = default;
  NodeArray(std::size_t nodes, std::size_t dim)
      : dim_(dim), values_(nodes * dim, 0.0) {}

  std::size_t size() const { return dim_ == 0 ? 0 : values_.size() / dim_; }
  std::size_t dim() const { return dim_; }

  std::span<double> node(std::size_t i) {
    return {values_.data() + i * dim_, dim_};
  }
  std::span<const double> node(std::size_t i) const {
    return {values_.data() + i * dim_, dim_};
  }

  std::span<double> flat() { return values_; }
  std::span<const double> flat() const { return values_; }

 private:
  std::size_t dim_ = 0;
  std::vector<double> values_;
};

}  // namespace phibvp
