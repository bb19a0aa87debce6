#include "phibvp/problem.hpp"

#include <cmath>
#include <stdexcept>

namespace phibvp {

Problem::Problem(double T, std::size_t dim, PhiMap phi, RhsFunction f, VectorNormKind norm)
    : T_(T), dim_(dim), phi_(std::move(phi)), f_(std::move(f)), norm_(norm) {
  if (!(T > 0.0) || !std::isfinite(T)) {
    throw std::invalid_argument("Problem: horizon T must be positive and finite");
  }
  if (dim == 0) {
    throw std::invalid_argument("Problem: dimension must be positive");
  }
  if (!f_.eval) {
    throw std::invalid_argument("Problem: right-hand side has no eval function");
  }
  phi_.validate(dim_);
}

}  // namespace phibvp
