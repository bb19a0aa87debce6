#pragma once

#include <span>
#include <string>

namespace phibvp {

/// Norm on points of R^d. Chosen once per problem; every module reads the
/// same choice.
enum class VectorNormKind { euclidean, sup, one };

double vector_norm(VectorNormKind kind, std::span<const double> x);

const char* to_string(VectorNormKind kind);

/// Accepts "euclidean", "sup", "one"; throws std::invalid_argument otherwise.
VectorNormKind parse_norm_kind(const std::string& text);

}  // namespace phibvp
