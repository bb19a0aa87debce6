#include "phibvp/solution_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "phibvp/errors.hpp"
#include "phibvp/json_writer.hpp"

namespace phibvp {

std::string solution_csv(const Trajectory& tr) {
  const std::size_t n = tr.grid.size();
  const std::size_t d = tr.dim();
  std::string out = "t";
  for (std::size_t c = 0; c < d; ++c) out += ",u" + std::to_string(c);
  for (std::size_t c = 0; c < d; ++c) out += ",w" + std::to_string(c);
  out += "\n";
  for (std::size_t i = 0; i < n; ++i) {
    out += format_double(tr.grid.node(i));
    for (double v : tr.u.node(i)) out += "," + format_double(v);
    for (double v : tr.du.node(i)) out += "," + format_double(v);
    out += "\n";
  }
  return out;
}

void write_solution_csv(const std::string& path, const Trajectory& tr) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << solution_csv(tr);
  if (!out) throw std::runtime_error("write failed: " + path);
}

Trajectory parse_solution_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("solution CSV is empty", 1);

  auto split = [](const std::string& s) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : s) {
      if (c == ',') {
        fields.push_back(cur);
        cur.clear();
      } else if (c != '\r') {
        cur += c;
      }
    }
    fields.push_back(cur);
    return fields;
  };

  const auto header = split(line);
  if (header.size() < 3 || header[0] != "t" || header.size() % 2 == 0) {
    throw ParseError("solution CSV header must be t,u0,...,w0,...", 1);
  }
  const std::size_t d = (header.size() - 1) / 2;

  std::vector<double> ts;
  std::vector<double> us, ws;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto fields = split(line);
    if (fields.size() != header.size()) {
      throw ParseError("expected " + std::to_string(header.size()) + " fields, got " +
                           std::to_string(fields.size()),
                       lineno);
    }
    std::vector<double> row(fields.size());
    for (std::size_t i = 0; i < fields.size(); ++i) {
      try {
        std::size_t used = 0;
        row[i] = std::stod(fields[i], &used);
        if (used != fields[i].size()) throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        throw ParseError("malformed number \"" + fields[i] + "\"", lineno);
      }
    }
    ts.push_back(row[0]);
    us.insert(us.end(), row.begin() + 1, row.begin() + 1 + static_cast<long>(d));
    ws.insert(ws.end(), row.begin() + 1 + static_cast<long>(d), row.end());
  }
  if (ts.size() < 2) throw ParseError("solution CSV needs at least 2 rows", lineno);

  Trajectory tr;
  try {
    tr.grid = make_grid_from_nodes(std::move(ts));
  } catch (const std::invalid_argument& ex) {
    throw ParseError(std::string("bad time column: ") + ex.what(), lineno);
  }
  tr.u = NodeArray(tr.grid.size(), d);
  tr.du = NodeArray(tr.grid.size(), d);
  std::copy(us.begin(), us.end(), tr.u.flat().begin());
  std::copy(ws.begin(), ws.end(), tr.du.flat().begin());
  return tr;
}

Trajectory read_solution_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open solution CSV: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_solution_csv(buf.str());
}

std::string diagnostics_json(const ProblemFile& pf, const SolveResult& r,
                             const VerifyReport& verify, const Certificate& cert) {
  JsonWriter w;
  w.begin_object();

  w.key("problem");
  w.begin_object();
  w.key_value("T", pf.T);
  w.key_value("d", pf.d);
  w.key_value("norm", to_string(pf.norm));
  w.key_value("phi", pf.phi_spec);
  w.key_value("f", pf.f_spec);
  w.key("h");
  if (pf.h_spec.has_value()) {
    w.value(*pf.h_spec);
  } else {
    w.null();
  }
  w.key_value("grid_n", pf.grid_n);
  w.end_object();

  w.key("solver");
  w.begin_object();
  w.key_value("theta", pf.solve.theta);
  w.key_value("tol", pf.solve.tol);
  w.key_value("max_iters", pf.solve.max_iters);
  w.key_value("lambda_steps", pf.solve.lambda_steps);
  w.key_value("residual_tol", pf.solve.residual_tol);
  w.end_object();

  w.key_value("converged", r.converged);
  w.key_array("iterations_per_lambda", r.iterations_per_lambda);
  w.key_value("damping_fallback", r.damping_fallback);
  w.key("failed_lambda");
  if (r.failed_lambda.has_value()) {
    w.value(*r.failed_lambda);
  } else {
    w.null();
  }
  w.key_value("final_gap", r.final_gap);
  w.key_value("final_residual", r.final_residual);
  w.key_array("history", r.history);

  w.key("verify");
  w.begin_object();
  w.key_value("gap", verify.gap);
  w.key_value("residual", verify.residual);
  w.key_value("polished_gap", verify.polished_gap);
  w.key_value("polished_residual", verify.polished_residual);
  w.key_value("pass", verify.pass);
  w.end_object();

  // certificate_json already renders the full document; splice it in rather
  // than rebuilding field by field.
  w.key("certificate");
  w.raw_json(certificate_json(cert));

  w.end_object();
  return w.str();
}

}  // namespace phibvp
