#pragma once

#include <cstddef>

#include "phibvp/norms.hpp"
#include "phibvp/phi_map.hpp"
#include "phibvp/rhs.hpp"

namespace phibvp {

/// Boundary value problem (phi(u'))' = f(t, u, u') on [0, T] with
/// u(T) = 0 and u'(0) = 0.
class Problem {
 public:
  Problem(double T, std::size_t dim, PhiMap phi, RhsFunction f, VectorNormKind norm);

  double T() const { return T_; }
  std::size_t dim() const { return dim_; }
  const PhiMap& phi() const { return phi_; }
  const RhsFunction& f() const { return f_; }
  VectorNormKind norm() const { return norm_; }

  /// Inner-product analysis requested: euclidean norm and an h weight.
  bool hilbert_mode() const {
    return norm_ == VectorNormKind::euclidean && static_cast<bool>(f_.hilbert_h);
  }

 private:
  double T_;
  std::size_t dim_;
  PhiMap phi_;
  RhsFunction f_;
  VectorNormKind norm_;
};

}  // namespace phibvp
