#include "phibvp/problem_file.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "phibvp/errors.hpp"
#include "phibvp/expression.hpp"
#include "phibvp/phi_map.hpp"
#include "phibvp/rhs.hpp"

namespace phibvp {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_real(const std::string& key, const std::string& value, int line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ParseError("key '" + key + "': expected a number, got \"" + value + "\"", line);
  }
}

long parse_integer(const std::string& key, const std::string& value, int line) {
  try {
    std::size_t used = 0;
    const long v = std::stol(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ParseError("key '" + key + "': expected an integer, got \"" + value + "\"", line);
  }
}

std::uint64_t parse_seed(const std::string& key, const std::string& value, int line) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ParseError("key '" + key + "': expected a nonnegative integer, got \"" + value + "\"",
                     line);
  }
}

}  // namespace

ProblemFile parse_problem_file(const std::string& text) {
  ProblemFile pf;
  bool saw_T = false;
  bool saw_f = false;

  enum class Block { top, solver, sampling };
  Block block = Block::top;

  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const bool indented =
        !raw.empty() && std::isspace(static_cast<unsigned char>(raw.front()));
    const std::string stripped = trim(raw);
    if (stripped.empty()) continue;

    const auto colon = stripped.find(':');
    if (colon == std::string::npos) {
      throw ParseError("expected 'key: value', got \"" + stripped + "\"", line);
    }
    const std::string key = trim(stripped.substr(0, colon));
    const std::string value = trim(stripped.substr(colon + 1));
    if (key.empty()) throw ParseError("empty key", line);

    if (!indented) {
      block = Block::top;
      if (key == "solver" || key == "sampling") {
        if (!value.empty()) {
          throw ParseError("key '" + key + "' opens a block and takes no value", line);
        }
        block = key == "solver" ? Block::solver : Block::sampling;
        continue;
      }
    } else if (block == Block::top) {
      throw ParseError("indented line outside a solver:/sampling: block", line);
    }

    if (value.empty()) {
      throw ParseError("key '" + key + "' needs a value", line);
    }

    switch (block) {
      case Block::top:
        if (key == "T") {
          pf.T = parse_real(key, value, line);
          if (!(pf.T > 0.0)) throw ParseError("key 'T': must be positive", line);
          saw_T = true;
        } else if (key == "d") {
          const long d = parse_integer(key, value, line);
          if (d < 1) throw ParseError("key 'd': must be at least 1", line);
          pf.d = static_cast<int>(d);
        } else if (key == "norm") {
          try {
            pf.norm = parse_norm_kind(value);
          } catch (const std::invalid_argument& ex) {
            throw ParseError(std::string("key 'norm': ") + ex.what(), line);
          }
        } else if (key == "phi") {
          pf.phi_spec = value;
        } else if (key == "f") {
          pf.f_spec = value;
          saw_f = true;
        } else if (key == "h") {
          pf.h_spec = value;
        } else if (key == "grid_n") {
          const long n = parse_integer(key, value, line);
          if (n < 2) throw ParseError("key 'grid_n': must be at least 2", line);
          pf.grid_n = static_cast<int>(n);
        } else {
          throw ParseError("unknown key '" + key + "'", line);
        }
        break;

      case Block::solver:
        if (key == "theta") {
          pf.solve.theta = parse_real(key, value, line);
        } else if (key == "tol") {
          pf.solve.tol = parse_real(key, value, line);
        } else if (key == "max_iters") {
          pf.solve.max_iters = static_cast<int>(parse_integer(key, value, line));
        } else if (key == "lambda_steps") {
          pf.solve.lambda_steps = static_cast<int>(parse_integer(key, value, line));
        } else if (key == "residual_tol") {
          pf.solve.residual_tol = parse_real(key, value, line);
        } else {
          throw ParseError("unknown solver key '" + key + "'", line);
        }
        break;

      case Block::sampling:
        if (key == "radius") {
          pf.sampling.radius = parse_real(key, value, line);
        } else if (key == "samples") {
          pf.sampling.samples = static_cast<int>(parse_integer(key, value, line));
        } else if (key == "seed") {
          pf.sampling.seed = parse_seed(key, value, line);
        } else if (key == "t_nodes") {
          pf.sampling.t_nodes = static_cast<int>(parse_integer(key, value, line));
        } else {
          throw ParseError("unknown sampling key '" + key + "'", line);
        }
        break;
    }
  }

  if (!saw_T) throw ParseError("missing required key 'T'");
  if (!saw_f) throw ParseError("missing required key 'f'");
  return pf;
}

ProblemFile load_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open problem file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem_file(buf.str());
}

namespace {

// "name p1 p2 ..." -> name plus numeric parameters.
std::pair<std::string, std::vector<double>> split_spec(const std::string& spec) {
  std::istringstream in(spec);
  std::string name;
  in >> name;
  std::vector<double> params;
  double v = 0.0;
  while (in >> v) params.push_back(v);
  if (!in.eof()) {
    throw std::invalid_argument("trailing non-numeric parameters in \"" + spec + "\"");
  }
  return {name, params};
}

}  // namespace

Problem build_problem(const ProblemFile& pf) {
  const auto [phi_name, phi_params] = split_spec(pf.phi_spec);
  PhiMap phi = make_phi(phi_name, phi_params);

  RhsFunction f;
  const std::string first = pf.f_spec.substr(0, pf.f_spec.find_first_of(" \t"));
  const auto names = rhs_registry_names();
  if (std::find(names.begin(), names.end(), first) != names.end()) {
    const auto [f_name, f_params] = split_spec(pf.f_spec);
    f = make_rhs(f_name, f_params, pf.T);
  } else {
    f = rhs_from_expressions(pf.f_spec, pf.d);
  }

  if (pf.h_spec.has_value()) {
    f.hilbert_h = time_function_from_expression(*pf.h_spec);
  }

  return Problem(pf.T, pf.d, std::move(phi), std::move(f), pf.norm);
}

}  // namespace phibvp
