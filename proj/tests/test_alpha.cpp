#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "alpha_tree_support.hpp"
#include "phibvp/alpha.hpp"
#include "phibvp/errors.hpp"

using namespace phibvp;

TEST_CASE("declared atoms") {
  const auto a = alpha_eval(AlphaExpr::atom("B", 2.0));
  CHECK(a.value.kind == AlphaKind::exact);
  CHECK(a.value.value == 2.0);
  REQUIRE(a.trace.size() == 1);
  CHECK(a.trace[0].rule == "atom");

  const auto c = alpha_eval(AlphaExpr::compact_atom("K"));
  CHECK(c.value.kind == AlphaKind::exact);
  CHECK(c.value.value == 0.0);

  const auto u = alpha_eval(AlphaExpr::unknown_atom("U"));
  CHECK(u.value.kind == AlphaKind::unknown);
  CHECK(std::isnan(u.value.value));

  CHECK_THROWS_AS(AlphaExpr::atom("C", -1.0), std::invalid_argument);
}

TEST_CASE("scaling is exactly homogeneous") {
  const auto r = alpha_eval(AlphaExpr::scale(3.0, AlphaExpr::atom("B", 2.0)));
  CHECK(r.value.kind == AlphaKind::exact);
  CHECK(r.value.value == 6.0);
  REQUIRE(r.trace.size() == 2);
  CHECK(r.trace[1].rule == "scale");
  CHECK(r.trace[1].citation.find("property (e)") != std::string::npos);

  const auto neg = alpha_eval(AlphaExpr::scale(-3.0, AlphaExpr::atom("B", 2.0)));
  CHECK(neg.value.value == 6.0);  // |lambda| enters, not lambda
}

TEST_CASE("sums only yield upper bounds") {
  const auto r = alpha_eval(AlphaExpr::sum(AlphaExpr::atom("A", 1.0), AlphaExpr::atom("B", 2.0)));
  CHECK(r.value.kind == AlphaKind::upper_bound);
  CHECK(r.value.value == 3.0);
  CHECK(r.trace.back().citation.find("property (f)") != std::string::npos);

  // adding a compact set keeps the value but still demotes exactness
  const auto s = alpha_eval(AlphaExpr::sum(AlphaExpr::atom("A", 1.0), AlphaExpr::compact_atom("K")));
  CHECK(s.value.kind == AlphaKind::upper_bound);
  CHECK(s.value.value == 1.0);
}

TEST_CASE("union takes the max, closure and hull change nothing") {
  const auto u = alpha_eval(
      AlphaExpr::set_union(AlphaExpr::atom("A", 1.0), AlphaExpr::atom("B", 2.0)));
  CHECK(u.value.kind == AlphaKind::exact);
  CHECK(u.value.value == 2.0);

  const auto c = alpha_eval(AlphaExpr::closure(AlphaExpr::atom("B", 2.0)));
  CHECK(c.value.kind == AlphaKind::exact);
  CHECK(c.value.value == 2.0);

  const auto h = alpha_eval(AlphaExpr::convex_hull(AlphaExpr::atom("B", 2.0)));
  CHECK(h.value.value == 2.0);
}

TEST_CASE("scalar set product and family product") {
  const auto s = alpha_eval(AlphaExpr::scalar_set_product(1.5, AlphaExpr::atom("B", 2.0)));
  CHECK(s.value.kind == AlphaKind::exact);
  CHECK(s.value.value == 3.0);
  CHECK_THROWS_AS(AlphaExpr::scalar_set_product(-0.5, AlphaExpr::atom("B", 1.0)),
                  std::invalid_argument);

  const auto p = alpha_eval(
      AlphaExpr::product_max(AlphaExpr::atom("A", 1.0), AlphaExpr::atom("B", 2.0)));
  CHECK(p.value.kind == AlphaKind::exact);
  CHECK(p.value.value == 2.0);
}

TEST_CASE("subset embedding demotes to an upper bound") {
  const auto r = alpha_eval(AlphaExpr::subset_of(AlphaExpr::atom("B", 2.0)));
  CHECK(r.value.kind == AlphaKind::upper_bound);
  CHECK(r.value.value == 2.0);
}

TEST_CASE("unknown atoms poison every rule") {
  const AlphaExpr u = AlphaExpr::unknown_atom("U");
  CHECK(alpha_eval(AlphaExpr::scale(2.0, u)).value.kind == AlphaKind::unknown);
  CHECK(alpha_eval(AlphaExpr::sum(u, AlphaExpr::atom("B", 1.0))).value.kind ==
        AlphaKind::unknown);
  CHECK(alpha_eval(AlphaExpr::set_union(u, AlphaExpr::atom("B", 1.0))).value.kind ==
        AlphaKind::unknown);
  CHECK(alpha_eval(AlphaExpr::closure(u)).value.kind == AlphaKind::unknown);
}

TEST_CASE("upper bounds contaminate exact inputs") {
  const AlphaExpr bound = AlphaExpr::subset_of(AlphaExpr::atom("A", 1.0));
  const auto u = alpha_eval(AlphaExpr::set_union(bound, AlphaExpr::atom("B", 2.0)));
  CHECK(u.value.kind == AlphaKind::upper_bound);
  CHECK(u.value.value == 2.0);
  const auto s = alpha_eval(AlphaExpr::scale(2.0, bound));
  CHECK(s.value.kind == AlphaKind::upper_bound);
}

TEST_CASE("calculus laws hold on randomized trees") {
  const std::string failure = testsupport::check_alpha_laws(20240814, 1000);
  CHECK_MESSAGE(failure.empty(), failure);
}

TEST_CASE("expression reader round trips and rejects garbage") {
  for (const char* text : {
           "(scale 3 (atom B 2))",
           "(sum (atom \"A\" 1) (atom B 2))",
           "(union (closure (atom A 1.5)) (convex-hull (atom B 0.25)))",
           "(scalar-product 2 (subset-of (atom C compact)))",
           "(product-max (atom A unknown) (atom B 7))",
       }) {
    const AlphaExpr e = parse_alpha_expr(text);
    const std::string canon = format_alpha_expr(e);
    const AlphaExpr back = parse_alpha_expr(canon);
    CHECK(format_alpha_expr(back) == canon);

    const auto v1 = alpha_eval(e).value;
    const auto v2 = alpha_eval(back).value;
    CHECK(v1.kind == v2.kind);
    if (v1.kind != AlphaKind::unknown) CHECK(v1.value == v2.value);
  }

  CHECK_THROWS_AS(parse_alpha_expr("(atom C -1)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_alpha_expr("(scale 3"), ParseError);
  CHECK_THROWS_AS(parse_alpha_expr("(frobnicate (atom A 1))"), ParseError);
  CHECK_THROWS_AS(parse_alpha_expr(""), ParseError);
  CHECK_THROWS_AS(parse_alpha_expr("(atom A 1) trailing"), ParseError);
  CHECK_THROWS_AS(parse_alpha_expr("(sum (atom A 1))"), ParseError);
}

TEST_CASE("derivative-family bounds for equicontinuous and general families") {
  const AlphaC1Bounds eq = alpha_c1_bounds(1.0, 3.0, true);
  CHECK(eq.exact);
  CHECK(eq.value == 3.0);

  const AlphaC1Bounds general = alpha_c1_bounds(1.0, 3.0, false);
  CHECK_FALSE(general.exact);
  CHECK(general.lower_from_values == 1.0);
  CHECK(general.lower_from_derivatives == 1.5);
  CHECK(general.value == doctest::Approx(1.5));
}

TEST_CASE("condensing replay multiplies the six-step chain") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> pos(0.01, 2.0);
  for (int i = 0; i < 100; ++i) {
    const double k = pos(rng), k1 = pos(rng), a = pos(rng);
    const CondensingChainResult r = condensing_chain(k, k1, a);
    CHECK(r.bound == doctest::Approx(2.0 * k * k1 * a).epsilon(1e-12));
    CHECK(r.trace.size() == 6);
    // replaying the trace multiplies out to the same bound
    double acc = a;
    for (const auto& step : r.trace) {
      REQUIRE(!step.premises.empty());
      acc = step.conclusion;
    }
    CHECK(acc == doctest::Approx(r.bound));
  }
}
