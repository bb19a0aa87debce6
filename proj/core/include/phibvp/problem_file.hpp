#pragma once

#include <optional>
#include <string>
#include <vector>

#include "phibvp/norms.hpp"
#include "phibvp/problem.hpp"
#include "phibvp/sampling.hpp"
#include "phibvp/solver.hpp"

namespace phibvp {

// Declarative problem description, one `key: value` per line with '#'
// comments. `solver:` and `sampling:` open indented blocks. Example:
//
//   T: 1
//   d: 1
//   norm: sup
//   phi: identity
//   f: cosine_forcing
//   grid_n: 81
//   solver:
//     tol: 1e-10
//     lambda_steps: 4
//   sampling:
//     seed: 7
//
// `f` is either a registry name (with trailing numeric parameters) or an
// expression over t, x, y; `h` is an expression over t and switches the
// certificate engine into inner-product mode when the norm is euclidean.
struct ProblemFile {
  double T = 0.0;
  int d = 1;
  VectorNormKind norm = VectorNormKind::sup;
  std::string phi_spec = "identity";
  std::string f_spec;
  std::optional<std::string> h_spec;
  int grid_n = 81;
  SolveOptions solve;
  SamplingPlan sampling;
};

// Throws ParseError with a 1-based line number on malformed or unknown keys.
ProblemFile parse_problem_file(const std::string& text);

// Reads and parses; unreadable path -> std::runtime_error.
ProblemFile load_problem_file(const std::string& path);

// Instantiates the map registry entries / expressions described by the file.
Problem build_problem(const ProblemFile& pf);

}  // namespace phibvp
