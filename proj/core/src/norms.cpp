#include "phibvp/norms.hpp"

#include <cmath>
#include <stdexcept>

namespace phibvp {

double vector_norm(VectorNormKind kind, std::span<const double> x) {
  switch (kind) {
    case VectorNormKind::euclidean: {
      double s = 0.0;
      for (double v : x) s += v * v;
      return std::sqrt(s);
    }
    case VectorNormKind::sup: {
      double m = 0.0;
      for (double v : x) m = std::max(m, std::abs(v));
      return m;
    }
    case VectorNormKind::one: {
      double s = 0.0;
      for (double v : x) s += std::abs(v);
      return s;
    }
  }
  throw std::invalid_argument("vector_norm: unknown norm kind");
}

const char* to_string(VectorNormKind kind) {
  switch (kind) {
    case VectorNormKind::euclidean: return "euclidean";
    case VectorNormKind::sup: return "sup";
    case VectorNormKind::one: return "one";
  }
  return "?";
}

VectorNormKind parse_norm_kind(const std::string& text) {
  if (text == "euclidean") return VectorNormKind::euclidean;
  if (text == "sup") return VectorNormKind::sup;
  if (text == "one") return VectorNormKind::one;
  throw std::invalid_argument("parse_norm_kind: unknown norm '" + text +
                              "' (expected euclidean, sup, or one)");
}

}  // namespace phibvp
