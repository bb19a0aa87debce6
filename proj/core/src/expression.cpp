#include "phibvp/expression.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "phibvp/errors.hpp"

namespace phibvp {

struct Expression::Node {
  enum class Op {
    constant,
    time_var,
    state,  // index -1 means the current component
    deriv,
    add,
    sub,
    mul,
    divide,
    neg,
    sin,
    cos,
    exp,
    tanh
  };

  Op op = Op::constant;
  double value = 0.0;
  int index = -1;
  std::shared_ptr<const Node> a;
  std::shared_ptr<const Node> b;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Node n) { return std::make_shared<const Node>(std::move(n)); }

struct Parser {
  const std::string& text;
  std::size_t pos = 0;

  explicit Parser(const std::string& t) : text(t) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("expression: " + msg + " (at offset " + std::to_string(pos) + " of \"" +
                     text + "\")");
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool consume(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    while (true) {
      if (consume('+')) {
        Node n;
        n.op = Node::Op::add;
        n.a = lhs;
        n.b = parse_term();
        lhs = make(std::move(n));
      } else if (consume('-')) {
        Node n;
        n.op = Node::Op::sub;
        n.a = lhs;
        n.b = parse_term();
        lhs = make(std::move(n));
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_factor();
    while (true) {
      if (consume('*')) {
        Node n;
        n.op = Node::Op::mul;
        n.a = lhs;
        n.b = parse_factor();
        lhs = make(std::move(n));
      } else if (consume('/')) {
        Node n;
        n.op = Node::Op::divide;
        n.a = lhs;
        n.b = parse_factor();
        lhs = make(std::move(n));
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_factor() {
    if (consume('-')) {
      Node n;
      n.op = Node::Op::neg;
      n.a = parse_factor();
      return make(std::move(n));
    }
    return parse_primary();
  }

  NodePtr parse_primary() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    const char c = text[pos];

    if (c == '(') {
      ++pos;
      NodePtr inner = parse_expr();
      if (!consume(')')) fail("missing ')'");
      return inner;
    }

    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(text.substr(pos), &used);
      } catch (const std::exception&) {
        fail("malformed number");
      }
      pos += used;
      Node n;
      n.op = Node::Op::constant;
      n.value = v;
      return make(std::move(n));
    }

    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos;
      while (pos < text.size() &&
             std::isalnum(static_cast<unsigned char>(text[pos]))) {
        ++pos;
      }
      const std::string word = text.substr(start, pos - start);

      if (word == "pi") {
        Node n;
        n.op = Node::Op::constant;
        n.value = std::numbers::pi;
        return make(std::move(n));
      }
      if (word == "t") {
        Node n;
        n.op = Node::Op::time_var;
        return make(std::move(n));
      }
      if (word == "x" || word == "y") {
        Node n;
        n.op = word == "x" ? Node::Op::state : Node::Op::deriv;
        n.index = -1;
        if (consume('[')) {
          n.index = parse_index();
          if (!consume(']')) fail("missing ']'");
        }
        return make(std::move(n));
      }

      Node::Op fn;
      if (word == "sin") {
        fn = Node::Op::sin;
      } else if (word == "cos") {
        fn = Node::Op::cos;
      } else if (word == "exp") {
        fn = Node::Op::exp;
      } else if (word == "tanh") {
        fn = Node::Op::tanh;
      } else {
        fail("unknown identifier '" + word + "'");
      }
      if (!consume('(')) fail("expected '(' after '" + word + "'");
      NodePtr arg = parse_expr();
      if (!consume(')')) fail("missing ')' after function argument");
      Node n;
      n.op = fn;
      n.a = arg;
      return make(std::move(n));
    }

    fail(std::string("unexpected character '") + c + "'");
  }

  int parse_index() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) fail("expected a component index");
    return std::stoi(text.substr(start, pos - start));
  }
};

double eval_node(const Node& n, double t, std::span<const double> x,
                 std::span<const double> y, int component) {
  using Op = Node::Op;
  switch (n.op) {
    case Op::constant: return n.value;
    case Op::time_var: return t;
    case Op::state: return x[n.index < 0 ? static_cast<std::size_t>(component)
                                         : static_cast<std::size_t>(n.index)];
    case Op::deriv: return y[n.index < 0 ? static_cast<std::size_t>(component)
                                         : static_cast<std::size_t>(n.index)];
    case Op::add: return eval_node(*n.a, t, x, y, component) + eval_node(*n.b, t, x, y, component);
    case Op::sub: return eval_node(*n.a, t, x, y, component) - eval_node(*n.b, t, x, y, component);
    case Op::mul: return eval_node(*n.a, t, x, y, component) * eval_node(*n.b, t, x, y, component);
    case Op::divide:
      return eval_node(*n.a, t, x, y, component) / eval_node(*n.b, t, x, y, component);
    case Op::neg: return -eval_node(*n.a, t, x, y, component);
    case Op::sin: return std::sin(eval_node(*n.a, t, x, y, component));
    case Op::cos: return std::cos(eval_node(*n.a, t, x, y, component));
    case Op::exp: return std::exp(eval_node(*n.a, t, x, y, component));
    case Op::tanh: return std::tanh(eval_node(*n.a, t, x, y, component));
  }
  throw std::logic_error("expression: unreachable op");
}

void scan_usage(const Node& n, bool& bare_state, bool& bare_deriv, bool& any_state,
                bool& any_deriv, int& max_state, int& max_deriv) {
  using Op = Node::Op;
  if (n.op == Op::state) {
    any_state = true;
    if (n.index < 0) {
      bare_state = true;
    } else if (n.index > max_state) {
      max_state = n.index;
    }
  } else if (n.op == Op::deriv) {
    any_deriv = true;
    if (n.index < 0) {
      bare_deriv = true;
    } else if (n.index > max_deriv) {
      max_deriv = n.index;
    }
  }
  if (n.a) scan_usage(*n.a, bare_state, bare_deriv, any_state, any_deriv, max_state, max_deriv);
  if (n.b) scan_usage(*n.b, bare_state, bare_deriv, any_state, any_deriv, max_state, max_deriv);
}

std::vector<std::string> split_components(const std::string& spec) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : spec) {
    if (c == ';') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace

Expression Expression::parse(const std::string& text) {
  Parser p(text);
  Expression e;
  e.root_ = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing characters");
  e.text_ = text;
  scan_usage(*e.root_, e.uses_bare_state_, e.uses_bare_derivative_, e.uses_state_,
             e.uses_derivative_, e.max_state_index_, e.max_derivative_index_);
  return e;
}

double Expression::eval(double t, std::span<const double> x, std::span<const double> y,
                        int component) const {
  return eval_node(*root_, t, x, y, component);
}

RhsFunction rhs_from_expressions(const std::string& spec, int dim) {
  if (dim < 1) throw std::invalid_argument("rhs_from_expressions: dim must be positive");

  std::vector<Expression> exprs;
  for (const auto& part : split_components(spec)) {
    const std::string body = trim(part);
    if (body.empty()) {
      throw std::invalid_argument("f: empty component expression in \"" + spec + "\"");
    }
    exprs.push_back(Expression::parse(body));
  }

  const bool broadcast = exprs.size() == 1;
  if (!broadcast && exprs.size() != static_cast<std::size_t>(dim)) {
    throw std::invalid_argument("f: got " + std::to_string(exprs.size()) +
                                " component expressions for dim " + std::to_string(dim) +
                                "; give one per component or a single broadcast expression");
  }

  bool depends_on_y = false;
  for (const auto& e : exprs) {
    if (!broadcast && dim > 1 && (e.uses_bare_state() || e.uses_bare_derivative())) {
      throw std::invalid_argument(
          "f: component expressions of a vector problem must use indexed x[i]/y[i], not bare "
          "x/y");
    }
    if (e.max_state_index() >= dim || e.max_derivative_index() >= dim) {
      throw std::invalid_argument("f: component index out of range for dim " +
                                  std::to_string(dim));
    }
    depends_on_y = depends_on_y || e.uses_derivative();
  }

  RhsFunction f;
  f.name = spec;
  f.depends_on_y = depends_on_y;
  f.eval = [exprs, broadcast](double t, std::span<const double> x, std::span<const double> y,
                              std::span<double> out) {
    for (std::size_t c = 0; c < out.size(); ++c) {
      const Expression& e = exprs[broadcast ? 0 : c];
      out[c] = e.eval(t, x, y, static_cast<int>(c));
    }
  };
  return f;
}

std::function<double(double)> time_function_from_expression(const std::string& text) {
  Expression e = Expression::parse(trim(text));
  if (e.uses_state() || e.uses_derivative()) {
    throw std::invalid_argument("h: must be a function of t only, got \"" + text + "\"");
  }
  return [e](double t) { return e.eval(t, {}, {}, 0); };
}

}  // namespace phibvp
