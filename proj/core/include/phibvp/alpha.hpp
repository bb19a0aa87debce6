#pragma once

#include <optional>
#include <string>
#include <vector>

namespace phibvp {

// Symbolic calculus for the Kuratowski measure of noncompactness. Values are
// declared annotations on named sets, never computed from point data: in
// finite dimension every bounded set has measure zero, so the calculus keeps
// the rules meaningful by staying symbolic.

enum class AlphaKind { exact, upper_bound, unknown };

struct AlphaValue {
  AlphaKind kind = AlphaKind::unknown;
  double value = 0.0;  // NaN when unknown
};

struct TraceStep {
  std::string rule;
  std::vector<double> premises;
  double conclusion = 0.0;
  std::string citation;
};

using DerivationTrace = std::vector<TraceStep>;

class AlphaExpr {
 public:
  enum class Kind {
    atom,
    closure,
    set_union,
    sum,
    scale,
    scalar_set_product,
    product_max,
    convex_hull,
    subset_of
  };

  // Named set with a declared measure (must be >= 0).
  static AlphaExpr atom(std::string name, double alpha);
  // Named set declared relatively compact (measure 0 by definition).
  static AlphaExpr compact_atom(std::string name);
  // Named set with no declared measure.
  static AlphaExpr unknown_atom(std::string name);

  static AlphaExpr closure(AlphaExpr e);
  static AlphaExpr set_union(AlphaExpr a, AlphaExpr b);
  static AlphaExpr sum(AlphaExpr a, AlphaExpr b);
  static AlphaExpr scale(double lambda, AlphaExpr e);
  // S*B for a bounded scalar set S with sup |S| = sup_abs (must be >= 0).
  static AlphaExpr scalar_set_product(double sup_abs, AlphaExpr e);
  static AlphaExpr product_max(AlphaExpr a, AlphaExpr b);
  static AlphaExpr convex_hull(AlphaExpr e);
  static AlphaExpr subset_of(AlphaExpr e);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  double scalar() const { return scalar_; }  // lambda or sup_abs
  const std::optional<double>& declared_alpha() const { return declared_alpha_; }
  bool declared_compact() const { return compact_; }
  const std::vector<AlphaExpr>& children() const { return children_; }

 private:
  AlphaExpr() = default;

  Kind kind_ = Kind::atom;
  std::string name_;
  double scalar_ = 0.0;
  std::optional<double> declared_alpha_;
  bool compact_ = false;
  std::vector<AlphaExpr> children_;
};

struct AlphaEvalResult {
  AlphaValue value;
  DerivationTrace trace;
};

// Propagates measures bottom-up. The result is exact only when every rule on
// the path is an equality (closure, union, scaling, convex hull, scalar
// product, product-max); sums and subset embeddings demote it to an upper
// bound, and an undeclared atom makes it unknown.
AlphaEvalResult alpha_eval(const AlphaExpr& e);

// Measure bounds for a bounded C1 family from the measures of its value set
// h_alpha and derivative set hprime_alpha. With an equicontinuous derivative
// family the C1 measure equals max{h_alpha, hprime_alpha}; otherwise only the
// lower bounds h_alpha and hprime_alpha/2 are available.
struct AlphaC1Bounds {
  bool exact = false;
  double value = 0.0;  // the exact measure, or the best available lower bound
  double lower_from_values = 0.0;
  double lower_from_derivatives = 0.0;
};

AlphaC1Bounds alpha_c1_bounds(double h_alpha, double hprime_alpha, bool equicontinuous_prime);

// Replays the condensing estimate for the fixed-point operator: starting from
// a C1 family of measure lambda_alpha, the image family has measure at most
// 2*k*k1*lambda_alpha. The trace records one multiplicative step per
// inequality in the chain.
struct CondensingChainResult {
  double bound = 0.0;
  DerivationTrace trace;
};

CondensingChainResult condensing_chain(double k, double k1, double lambda_alpha);

// S-expression reader/writer, e.g. (scale 3 (atom "B" 2)). Kinds: atom,
// closure, union, sum, scale, scalar-product, product-max, convex-hull,
// subset-of. Atom payload is a number, `compact`, or `unknown`.
AlphaExpr parse_alpha_expr(const std::string& text);
std::string format_alpha_expr(const AlphaExpr& e);

std::string to_string(AlphaKind kind);

}  // namespace phibvp
