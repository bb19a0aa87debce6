#include "phibvp/alpha.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "phibvp/errors.hpp"
#include "phibvp/json_writer.hpp"

namespace phibvp {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

AlphaExpr AlphaExpr::atom(std::string name, double alpha) {
  if (!(alpha >= 0.0)) {
    throw std::invalid_argument("AlphaExpr: declared alpha must be nonnegative");
  }
  AlphaExpr e;
  e.kind_ = Kind::atom;
  e.name_ = std::move(name);
  e.declared_alpha_ = alpha;
  return e;
}

AlphaExpr AlphaExpr::compact_atom(std::string name) {
  AlphaExpr e;
  e.kind_ = Kind::atom;
  e.name_ = std::move(name);
  e.compact_ = true;
  return e;
}

AlphaExpr AlphaExpr::unknown_atom(std::string name) {
  AlphaExpr e;
  e.kind_ = Kind::atom;
  e.name_ = std::move(name);
  return e;
}

AlphaExpr AlphaExpr::closure(AlphaExpr child) {
  AlphaExpr e;
  e.kind_ = Kind::closure;
  e.children_.push_back(std::move(child));
  return e;
}

AlphaExpr AlphaExpr::set_union(AlphaExpr a, AlphaExpr b) {
  AlphaExpr e;
  e.kind_ = Kind::set_union;
  e.children_.push_back(std::move(a));
  e.children_.push_back(std::move(b));
  return e;
}

AlphaExpr AlphaExpr::sum(AlphaExpr a, AlphaExpr b) {
  AlphaExpr e;
  e.kind_ = Kind::sum;
  e.children_.push_back(std::move(a));
  e.children_.push_back(std::move(b));
  return e;
}

AlphaExpr AlphaExpr::scale(double lambda, AlphaExpr child) {
  AlphaExpr e;
  e.kind_ = Kind::scale;
  e.scalar_ = lambda;
  e.children_.push_back(std::move(child));
  return e;
}

AlphaExpr AlphaExpr::scalar_set_product(double sup_abs, AlphaExpr child) {
  if (!(sup_abs >= 0.0)) {
    throw std::invalid_argument("AlphaExpr: sup_abs of a scalar set must be nonnegative");
  }
  AlphaExpr e;
  e.kind_ = Kind::scalar_set_product;
  e.scalar_ = sup_abs;
  e.children_.push_back(std::move(child));
  return e;
}

AlphaExpr AlphaExpr::product_max(AlphaExpr a, AlphaExpr b) {
  AlphaExpr e;
  e.kind_ = Kind::product_max;
  e.children_.push_back(std::move(a));
  e.children_.push_back(std::move(b));
  return e;
}

AlphaExpr AlphaExpr::convex_hull(AlphaExpr child) {
  AlphaExpr e;
  e.kind_ = Kind::convex_hull;
  e.children_.push_back(std::move(child));
  return e;
}

AlphaExpr AlphaExpr::subset_of(AlphaExpr child) {
  AlphaExpr e;
  e.kind_ = Kind::subset_of;
  e.children_.push_back(std::move(child));
  return e;
}

namespace {

AlphaValue eval_node(const AlphaExpr& e, DerivationTrace& trace);

double premise(const AlphaValue& v) {
  return v.kind == AlphaKind::unknown ? kNaN : v.value;
}

AlphaKind combine(AlphaKind a, AlphaKind b) {
  if (a == AlphaKind::unknown || b == AlphaKind::unknown) return AlphaKind::unknown;
  if (a == AlphaKind::upper_bound || b == AlphaKind::upper_bound) return AlphaKind::upper_bound;
  return AlphaKind::exact;
}

AlphaValue push_step(DerivationTrace& trace, const std::string& rule,
                     std::vector<double> premises, AlphaValue result,
                     const std::string& citation) {
  TraceStep step;
  step.rule = rule;
  step.premises = std::move(premises);
  step.conclusion = result.kind == AlphaKind::unknown ? kNaN : result.value;
  step.citation = citation;
  trace.push_back(std::move(step));
  return result;
}

AlphaValue eval_node(const AlphaExpr& e, DerivationTrace& trace) {
  using Kind = AlphaExpr::Kind;
  switch (e.kind()) {
    case Kind::atom: {
      if (e.declared_compact()) {
        return push_step(trace, "atom", {}, {AlphaKind::exact, 0.0},
                         "property (a): alpha(B) = 0 exactly when closure(B) is compact");
      }
      if (e.declared_alpha().has_value()) {
        if (!(*e.declared_alpha() >= 0.0)) {
          throw std::invalid_argument("alpha_eval: declared alpha must be nonnegative");
        }
        return push_step(trace, "atom", {}, {AlphaKind::exact, *e.declared_alpha()},
                         "declared measure of the named set");
      }
      return push_step(trace, "atom", {}, {AlphaKind::unknown, kNaN},
                       "no measure declared for the named set");
    }
    case Kind::closure: {
      const AlphaValue c = eval_node(e.children()[0], trace);
      return push_step(trace, "closure", {premise(c)}, {c.kind, c.value},
                       "property (c): alpha(closure(B)) = alpha(B)");
    }
    case Kind::set_union: {
      const AlphaValue a = eval_node(e.children()[0], trace);
      const AlphaValue b = eval_node(e.children()[1], trace);
      AlphaValue out{combine(a.kind, b.kind), std::max(a.value, b.value)};
      if (out.kind == AlphaKind::unknown) out.value = kNaN;
      return push_step(trace, "union", {premise(a), premise(b)}, out,
                       "property (d): alpha(B u S) = max{alpha(B), alpha(S)}");
    }
    case Kind::sum: {
      const AlphaValue a = eval_node(e.children()[0], trace);
      const AlphaValue b = eval_node(e.children()[1], trace);
      AlphaValue out{combine(a.kind, b.kind), a.value + b.value};
      if (out.kind == AlphaKind::exact) out.kind = AlphaKind::upper_bound;
      if (out.kind == AlphaKind::unknown) out.value = kNaN;
      return push_step(trace, "sum", {premise(a), premise(b)}, out,
                       "property (f): alpha(B + S) <= alpha(B) + alpha(S)");
    }
    case Kind::scale: {
      const AlphaValue c = eval_node(e.children()[0], trace);
      AlphaValue out{c.kind, std::abs(e.scalar()) * c.value};
      if (out.kind == AlphaKind::unknown) out.value = kNaN;
      return push_step(trace, "scale", {e.scalar(), premise(c)}, out,
                       "property (e): alpha(lambda*B) = |lambda|*alpha(B)");
    }
    case Kind::scalar_set_product: {
      const AlphaValue c = eval_node(e.children()[0], trace);
      AlphaValue out{c.kind, e.scalar() * c.value};
      if (out.kind == AlphaKind::unknown) out.value = kNaN;
      return push_step(trace, "scalar_product", {e.scalar(), premise(c)}, out,
                       "scalar product rule: alpha(S*B) = sup_{t in S}|t| * alpha(B)");
    }
    case Kind::product_max: {
      const AlphaValue a = eval_node(e.children()[0], trace);
      const AlphaValue b = eval_node(e.children()[1], trace);
      AlphaValue out{combine(a.kind, b.kind), std::max(a.value, b.value)};
      if (out.kind == AlphaKind::unknown) out.value = kNaN;
      return push_step(trace, "product_max", {premise(a), premise(b)}, out,
                       "product rule: alpha(A x B) = max{alpha(A), alpha(B)}");
    }
    case Kind::convex_hull: {
      const AlphaValue c = eval_node(e.children()[0], trace);
      return push_step(trace, "convex_hull", {premise(c)}, {c.kind, c.value},
                       "property (g): alpha(conv(B)) = alpha(B)");
    }
    case Kind::subset_of: {
      const AlphaValue c = eval_node(e.children()[0], trace);
      AlphaValue out{c.kind == AlphaKind::unknown ? AlphaKind::unknown : AlphaKind::upper_bound,
                     c.value};
      if (out.kind == AlphaKind::unknown) out.value = kNaN;
      return push_step(trace, "subset", {premise(c)}, out,
                       "property (b): S inside B implies alpha(S) <= alpha(B)");
    }
  }
  throw std::logic_error("alpha_eval: unreachable node kind");
}

}  // namespace

AlphaEvalResult alpha_eval(const AlphaExpr& e) {
  AlphaEvalResult res;
  res.value = eval_node(e, res.trace);
  return res;
}

AlphaC1Bounds alpha_c1_bounds(double h_alpha, double hprime_alpha, bool equicontinuous_prime) {
  if (!(h_alpha >= 0.0) || !(hprime_alpha >= 0.0)) {
    throw std::invalid_argument("alpha_c1_bounds: measures must be nonnegative");
  }
  AlphaC1Bounds out;
  out.lower_from_values = h_alpha;
  out.lower_from_derivatives = 0.5 * hprime_alpha;
  out.exact = equicontinuous_prime;
  out.value = equicontinuous_prime ? std::max(h_alpha, hprime_alpha)
                                   : std::max(out.lower_from_values, out.lower_from_derivatives);
  return out;
}

CondensingChainResult condensing_chain(double k, double k1, double lambda_alpha) {
  if (!(k > 0.0) || !(k1 > 0.0)) {
    throw std::invalid_argument("condensing_chain: k and k1 must be positive");
  }
  if (!(lambda_alpha >= 0.0)) {
    throw std::invalid_argument("condensing_chain: lambda_alpha must be nonnegative");
  }

  CondensingChainResult res;
  double bound = lambda_alpha;
  auto step = [&res, &bound](const std::string& rule, double factor,
                             const std::string& citation) {
    TraceStep s;
    s.rule = rule;
    s.premises = {bound, factor};
    bound *= factor;
    s.conclusion = bound;
    s.citation = citation;
    res.trace.push_back(std::move(s));
  };

  step("integration_envelope", 1.0,
       "the terminal integral maps the family into the scaled closed convex hull of its values; "
       "the scaling (1 - tau) never exceeds 1");
  step("convex_hull_equality", 1.0, "property (g): alpha(conv(B)) = alpha(B)");
  step("inverse_lipschitz", k, "a k-Lipschitz map multiplies the measure by at most k");
  step("scalar_product", 1.0,
       "scalar product rule with the homotopy parameter set [0,1]: sup |t| = 1");
  step("condensing_hypothesis", k1,
       "hypothesis: alpha(f(I x A x B)) <= k1 * max{alpha(A), alpha(B)}");
  step("derivative_to_c1", 2.0,
       "the C1 measure of a bounded family is at most twice the measure of its derivative "
       "value set");

  res.bound = bound;
  return res;
}

namespace {

struct SexpParser {
  const std::string& text;
  std::size_t pos = 0;

  explicit SexpParser(const std::string& t) : text(t) {}

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " (at offset " + std::to_string(pos) + ")");
  }

  char peek() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of expression");
    return text[pos];
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }

  std::string symbol() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != '(' && text[pos] != ')' && text[pos] != '"') {
      ++pos;
    }
    if (pos == start) fail("expected a symbol");
    return text.substr(start, pos - start);
  }

  std::string quoted() {
    skip_ws();
    if (pos >= text.size() || text[pos] != '"') fail("expected a quoted name");
    ++pos;
    std::string out;
    while (pos < text.size() && text[pos] != '"') out += text[pos++];
    if (pos >= text.size()) fail("unterminated quoted name");
    ++pos;
    return out;
  }

  double number() {
    const std::string tok = symbol();
    try {
      std::size_t used = 0;
      const double v = std::stod(tok, &used);
      if (used != tok.size()) fail("malformed number '" + tok + "'");
      return v;
    } catch (const std::invalid_argument&) {
      fail("malformed number '" + tok + "'");
    } catch (const std::out_of_range&) {
      fail("number out of range '" + tok + "'");
    }
  }

  AlphaExpr expr() {
    expect('(');
    const std::string head = symbol();
    AlphaExpr out = [&]() -> AlphaExpr {
      if (head == "atom") {
        skip_ws();
        const std::string name =
            (pos < text.size() && text[pos] == '"') ? quoted() : symbol();
        skip_ws();
        if (pos < text.size() &&
            (std::isalpha(static_cast<unsigned char>(text[pos])) != 0)) {
          const std::string tag = symbol();
          if (tag == "compact") return AlphaExpr::compact_atom(name);
          if (tag == "unknown") return AlphaExpr::unknown_atom(name);
          fail("atom payload must be a number, 'compact', or 'unknown'");
        }
        return AlphaExpr::atom(name, number());
      }
      if (head == "closure") return AlphaExpr::closure(expr());
      if (head == "union") {
        AlphaExpr a = expr();
        return AlphaExpr::set_union(std::move(a), expr());
      }
      if (head == "sum") {
        AlphaExpr a = expr();
        return AlphaExpr::sum(std::move(a), expr());
      }
      if (head == "scale") {
        const double lambda = number();
        return AlphaExpr::scale(lambda, expr());
      }
      if (head == "scalar-product") {
        const double s = number();
        return AlphaExpr::scalar_set_product(s, expr());
      }
      if (head == "product-max") {
        AlphaExpr a = expr();
        return AlphaExpr::product_max(std::move(a), expr());
      }
      if (head == "convex-hull") return AlphaExpr::convex_hull(expr());
      if (head == "subset-of") return AlphaExpr::subset_of(expr());
      fail("unknown expression kind '" + head + "'");
    }();
    expect(')');
    return out;
  }
};

void format_node(const AlphaExpr& e, std::string& out) {
  using Kind = AlphaExpr::Kind;
  switch (e.kind()) {
    case Kind::atom:
      out += "(atom \"" + e.name() + "\" ";
      if (e.declared_compact()) {
        out += "compact";
      } else if (e.declared_alpha().has_value()) {
        out += format_double(*e.declared_alpha());
      } else {
        out += "unknown";
      }
      out += ")";
      return;
    case Kind::closure:
      out += "(closure ";
      format_node(e.children()[0], out);
      out += ")";
      return;
    case Kind::set_union:
      out += "(union ";
      format_node(e.children()[0], out);
      out += " ";
      format_node(e.children()[1], out);
      out += ")";
      return;
    case Kind::sum:
      out += "(sum ";
      format_node(e.children()[0], out);
      out += " ";
      format_node(e.children()[1], out);
      out += ")";
      return;
    case Kind::scale:
      out += "(scale " + format_double(e.scalar()) + " ";
      format_node(e.children()[0], out);
      out += ")";
      return;
    case Kind::scalar_set_product:
      out += "(scalar-product " + format_double(e.scalar()) + " ";
      format_node(e.children()[0], out);
      out += ")";
      return;
    case Kind::product_max:
      out += "(product-max ";
      format_node(e.children()[0], out);
      out += " ";
      format_node(e.children()[1], out);
      out += ")";
      return;
    case Kind::convex_hull:
      out += "(convex-hull ";
      format_node(e.children()[0], out);
      out += ")";
      return;
    case Kind::subset_of:
      out += "(subset-of ";
      format_node(e.children()[0], out);
      out += ")";
      return;
  }
}

}  // namespace

AlphaExpr parse_alpha_expr(const std::string& text) {
  SexpParser p(text);
  AlphaExpr e = p.expr();
  p.skip_ws();
  if (p.pos != text.size()) {
    throw ParseError("trailing characters after expression (at offset " +
                     std::to_string(p.pos) + ")");
  }
  return e;
}

std::string format_alpha_expr(const AlphaExpr& e) {
  std::string out;
  format_node(e, out);
  return out;
}

std::string to_string(AlphaKind kind) {
  switch (kind) {
    case AlphaKind::exact: return "exact";
    case AlphaKind::upper_bound: return "upper_bound";
    case AlphaKind::unknown: return "unknown";
  }
  return "unknown";
}

}  // namespace phibvp
