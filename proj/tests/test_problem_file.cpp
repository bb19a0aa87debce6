#include <doctest.h>

#include <string>

#include "phibvp/errors.hpp"
#include "phibvp/problem_file.hpp"

using namespace phibvp;

TEST_CASE("full document with nested blocks") {
  const std::string text =
      "# sample problem\n"
      "T: 2\n"
      "d: 2\n"
      "norm: euclidean\n"
      "phi: scale 0.5\n"
      "f: -x[1]; x[0] - t   # coupled pair\n"
      "h: 1 + t\n"
      "grid_n: 61\n"
      "solver:\n"
      "  theta: 0.5\n"
      "  tol: 1e-9\n"
      "  max_iters: 120\n"
      "  lambda_steps: 3\n"
      "  residual_tol: 5e-3\n"
      "sampling:\n"
      "  radius: 2.5\n"
      "  samples: 500\n"
      "  seed: 42\n"
      "  t_nodes: 5\n";
  const ProblemFile pf = parse_problem_file(text);
  CHECK(pf.T == 2.0);
  CHECK(pf.d == 2);
  CHECK(pf.norm == VectorNormKind::euclidean);
  CHECK(pf.phi_spec == "scale 0.5");
  CHECK(pf.f_spec == "-x[1]; x[0] - t");
  CHECK(pf.h_spec.value() == "1 + t");
  CHECK(pf.grid_n == 61);
  CHECK(pf.solve.theta == 0.5);
  CHECK(pf.solve.tol == 1e-9);
  CHECK(pf.solve.max_iters == 120);
  CHECK(pf.solve.lambda_steps == 3);
  CHECK(pf.solve.residual_tol == 5e-3);
  CHECK(pf.sampling.radius == 2.5);
  CHECK(pf.sampling.samples == 500);
  CHECK(pf.sampling.seed == 42);
  CHECK(pf.sampling.t_nodes == 5);

  const Problem p = build_problem(pf);
  CHECK(p.T() == 2.0);
  CHECK(p.dim() == 2);
  CHECK(p.hilbert_mode());
}

TEST_CASE("defaults fill everything but the horizon and the field") {
  const ProblemFile pf = parse_problem_file("T: 1\nf: zero\n");
  CHECK(pf.d == 1);
  CHECK(pf.norm == VectorNormKind::sup);
  CHECK(pf.phi_spec == "identity");
  CHECK_FALSE(pf.h_spec.has_value());
  CHECK(pf.grid_n == 81);
  CHECK(pf.solve.theta == 1.0);
  const Problem p = build_problem(pf);
  CHECK_FALSE(p.hilbert_mode());
}

TEST_CASE("parse errors name the line and the offending key") {
  auto line_of = [](const std::string& text) {
    try {
      parse_problem_file(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("T: -1\nf: zero\n") == 1);
  CHECK(line_of("T: 1\nd: zero\nf: zero\n") == 2);
  CHECK(line_of("T: 1\nf: zero\nmystery: 3\n") == 3);
  CHECK(line_of("T: 1\nf: zero\nsolver:\n  bogus: 1\n") == 4);
  CHECK(line_of("T: 1\nf: zero\ngrid_n: 1\n") == 3);

  CHECK_THROWS_WITH_AS(parse_problem_file("T: -1\nf: zero\n"),
                       "line 1: key 'T': must be positive", ParseError);
  CHECK_THROWS_AS(parse_problem_file("f: zero\n"), ParseError);   // T missing
  CHECK_THROWS_AS(parse_problem_file("T: 1\n"), ParseError);      // f missing
  CHECK_THROWS_AS(parse_problem_file("T: 1\nf: zero\nd: 0\n"), ParseError);
}

TEST_CASE("registry and expression fields both build") {
  {
    const ProblemFile pf = parse_problem_file("T: 1\nf: constant 2\n");
    const Problem p = build_problem(pf);
    std::vector<double> x = {0.0}, y = {0.0}, out(1);
    p.f().eval(0.0, x, y, out);
    CHECK(out[0] == 2.0);
  }
  {
    const ProblemFile pf = parse_problem_file("T: 1\nf: 0.3*sin(x) + t\n");
    const Problem p = build_problem(pf);
    std::vector<double> x = {0.0}, y = {0.0}, out(1);
    p.f().eval(0.25, x, y, out);
    CHECK(out[0] == 0.25);
  }
  {
    // registry names reject trailing garbage parameters
    const ProblemFile pf = parse_problem_file("T: 1\nf: zero 3\n");
    CHECK_THROWS_AS(build_problem(pf), std::invalid_argument);
  }
  {
    const ProblemFile pf = parse_problem_file("T: 1\nphi: scale 0\nf: zero\n");
    CHECK_THROWS_AS(build_problem(pf), std::invalid_argument);
  }
  {
    // h must be a function of time alone
    const ProblemFile pf = parse_problem_file("T: 1\nnorm: euclidean\nf: x\nh: x + 1\n");
    CHECK_THROWS_AS(build_problem(pf), std::invalid_argument);
  }
}

TEST_CASE("weight only activates the inner product mode under the euclidean norm") {
  const Problem with = build_problem(parse_problem_file("T: 1\nnorm: euclidean\nf: x\nh: 1\n"));
  CHECK(with.hilbert_mode());
  const Problem without = build_problem(parse_problem_file("T: 1\nnorm: sup\nf: x\nh: 1\n"));
  CHECK_FALSE(without.hilbert_mode());
}
