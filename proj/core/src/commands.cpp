#include "phibvp/commands.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "phibvp/alpha.hpp"
#include "phibvp/certify.hpp"
#include "phibvp/errors.hpp"
#include "phibvp/json_writer.hpp"
#include "phibvp/operators.hpp"
#include "phibvp/problem_file.hpp"
#include "phibvp/solution_io.hpp"
#include "phibvp/solver.hpp"

namespace phibvp {

namespace {

namespace fs = std::filesystem;

constexpr double kRoundTripTol = 1e-12;

struct FileOutcome {
  int code = 0;
  std::string out;
  std::string err;
};

void apply_flag_overrides(ProblemFile& pf, const CommonFlags& flags) {
  if (flags.grid_n) pf.grid_n = *flags.grid_n;
  if (flags.tol) pf.solve.tol = *flags.tol;
  if (flags.theta) pf.solve.theta = *flags.theta;
  if (flags.lambda_steps) pf.solve.lambda_steps = *flags.lambda_steps;
  if (flags.max_iters) pf.solve.max_iters = *flags.max_iters;
  if (flags.seed) pf.sampling.seed = *flags.seed;
}

fs::path output_path(const std::string& input, const CommonFlags& flags,
                     const std::string& suffix) {
  const fs::path in(input);
  const fs::path dir = flags.out_dir ? fs::path(*flags.out_dir) : in.parent_path();
  return dir / (in.stem().string() + suffix);
}

void write_text_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::FILE* f = std::fopen(path.string().c_str(), "wb");
  if (!f) throw std::runtime_error("cannot open for writing: " + path.string());
  const std::size_t written = std::fwrite(text.data(), 1, text.size(), f);
  const bool ok = written == text.size() && std::fclose(f) == 0;
  if (!ok) throw std::runtime_error("write failed: " + path.string());
}

std::string describe_failures(const Certificate& cert) {
  std::string out;
  for (const auto& check : cert.verdict) {
    if (check.satisfied) continue;
    out += "  failed: " + check.name;
    if (!check.detail.empty()) out += " (" + check.detail + ")";
    out += "\n";
  }
  return out;
}

FileOutcome solve_one(const std::string& path, const CommonFlags& flags) {
  FileOutcome res;
  std::ostringstream out;

  ProblemFile pf;
  std::optional<Problem> problem;
  Grid grid;
  try {
    pf = load_problem_file(path);
    apply_flag_overrides(pf, flags);
    problem.emplace(build_problem(pf));
    grid = make_grid(pf.T, static_cast<std::size_t>(pf.grid_n));
  } catch (const std::exception& ex) {
    res.code = 1;
    res.err = path + ": error: " + std::string(ex.what()) + "\n";
    return res;
  }
  const Problem& p = *problem;

  SolveResult r;
  VerifyReport report;
  try {
    r = continuation_solve(p, grid, pf.solve);
    report = verify_solution(p, r, pf.solve);
  } catch (const EvaluationError& ex) {
    res.code = 2;
    res.err = path + ": solve failed: " + std::string(ex.what()) + "\n";
    return res;
  } catch (const std::exception& ex) {
    res.code = 1;
    res.err = path + ": error: " + std::string(ex.what()) + "\n";
    return res;
  }

  // The diagnostics document embeds the certificate; a sampling blow-up
  // must not take the solve down with it, so record it as a failed check.
  Certificate cert;
  try {
    cert = build_certificate(p, pf.sampling);
  } catch (const std::exception& ex) {
    cert = Certificate{};
    cert.label = "numerical evidence";
    cert.verdict.push_back({"estimator_evaluation", std::numeric_limits<double>::quiet_NaN(),
                            std::numeric_limits<double>::quiet_NaN(), false, ex.what()});
  }

  const fs::path csv_path = output_path(path, flags, ".solution.csv");
  const fs::path diag_path = output_path(path, flags, ".diagnostics.json");
  try {
    write_text_file(csv_path, solution_csv(r.trajectory));
    write_text_file(diag_path, diagnostics_json(pf, r, report, cert));
  } catch (const std::exception& ex) {
    res.code = 1;
    res.err = path + ": error: " + std::string(ex.what()) + "\n";
    return res;
  }

  const bool solved = r.converged && report.pass;
  out << path << ": " << (solved ? "converged" : "did not converge");
  if (r.failed_lambda) out << " (stalled at lambda = " << format_double(*r.failed_lambda) << ")";
  int total_iters = 0;
  for (int n : r.iterations_per_lambda) total_iters += n;
  out << ", " << total_iters << " iterations, gap " << format_double(r.final_gap)
      << ", residual " << format_double(r.final_residual) << "\n";
  out << path << ": wrote " << csv_path.string() << "\n";
  out << path << ": wrote " << diag_path.string() << "\n";

  if (!solved) {
    res.code = 2;
    res.err += path + ": non-convergence, see " + diag_path.string() + "\n";
  }

  if (flags.verify && res.code == 0) {
    try {
      const Trajectory back = read_solution_csv(csv_path.string());
      const double gap = fixed_point_gap(p, back);
      const double residual = ode_residual(p, back);
      const bool same = std::abs(gap - r.final_gap) <= kRoundTripTol &&
                        std::abs(residual - r.final_residual) <= kRoundTripTol;
      if (same) {
        out << path << ": verify: round trip reproduced the diagnostics defects\n";
      } else {
        res.code = 2;
        res.err += path + ": verify: round trip mismatch (gap " + format_double(gap) +
                   " vs " + format_double(r.final_gap) + ", residual " +
                   format_double(residual) + " vs " + format_double(r.final_residual) + ")\n";
      }
    } catch (const std::exception& ex) {
      res.code = 2;
      res.err += path + ": verify: " + std::string(ex.what()) + "\n";
    }
  }

  res.out = out.str();
  return res;
}

FileOutcome certify_one(const std::string& path, const CommonFlags& flags) {
  FileOutcome res;
  std::ostringstream out;

  ProblemFile pf;
  std::optional<Problem> problem;
  try {
    pf = load_problem_file(path);
    apply_flag_overrides(pf, flags);
    problem.emplace(build_problem(pf));
  } catch (const std::exception& ex) {
    res.code = 1;
    res.err = path + ": error: " + std::string(ex.what()) + "\n";
    return res;
  }

  Certificate cert;
  try {
    cert = build_certificate(*problem, pf.sampling);
  } catch (const std::exception& ex) {
    res.code = 1;
    res.err = path + ": error: " + std::string(ex.what()) + "\n";
    return res;
  }

  const fs::path cert_path = output_path(path, flags, ".certificate.json");
  try {
    write_text_file(cert_path, certificate_json(cert));
  } catch (const std::exception& ex) {
    res.code = 1;
    res.err = path + ": error: " + std::string(ex.what()) + "\n";
    return res;
  }

  out << path << ": theorem " << to_string(cert.theorem) << "\n";
  out << path << ": wrote " << cert_path.string() << "\n";
  if (cert.theorem == TheoremId::none) {
    res.code = 3;
    res.err = path + ": no certificate\n" + describe_failures(cert);
  }

  res.out = out.str();
  return res;
}

template <typename Worker>
int run_batch(const std::vector<std::string>& paths, const CommonFlags& flags, Worker worker) {
  if (paths.empty()) {
    std::fprintf(stderr, "error: no input files\n");
    return 1;
  }
  std::vector<FileOutcome> outcomes(paths.size());

  const int jobs = std::max(1, std::min<int>(flags.jobs, static_cast<int>(paths.size())));
  if (jobs == 1) {
    for (std::size_t i = 0; i < paths.size(); ++i) outcomes[i] = worker(paths[i], flags);
  } else {
    std::atomic<std::size_t> next{0};
    auto drain = [&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= paths.size()) return;
        outcomes[i] = worker(paths[i], flags);
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int j = 0; j < jobs; ++j) pool.emplace_back(drain);
    for (auto& th : pool) th.join();
  }

  int rc = 0;
  for (const auto& o : outcomes) {
    if (!o.out.empty()) std::fwrite(o.out.data(), 1, o.out.size(), stdout);
    if (!o.err.empty()) std::fwrite(o.err.data(), 1, o.err.size(), stderr);
    rc = std::max(rc, o.code);
  }
  std::fflush(stdout);
  return rc;
}

std::string format_trace(const DerivationTrace& trace) {
  std::string out;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const TraceStep& s = trace[i];
    out += "  " + std::to_string(i + 1) + ". " + s.rule + "(";
    for (std::size_t j = 0; j < s.premises.size(); ++j) {
      if (j) out += ", ";
      out += format_double(s.premises[j]);
    }
    out += ") -> " + format_double(s.conclusion) + "  [" + s.citation + "]\n";
  }
  return out;
}

}  // namespace

int cmd_solve(const std::vector<std::string>& paths, const CommonFlags& flags) {
  return run_batch(paths, flags, solve_one);
}

int cmd_certify(const std::vector<std::string>& paths, const CommonFlags& flags) {
  return run_batch(paths, flags, certify_one);
}

int cmd_alpha(const std::string& expr) {
  try {
    const AlphaEvalResult r = alpha_eval(parse_alpha_expr(expr));
    std::string head;
    switch (r.value.kind) {
      case AlphaKind::exact:
        head = "alpha = " + format_double(r.value.value) + " (exact)";
        break;
      case AlphaKind::upper_bound:
        head = "alpha <= " + format_double(r.value.value) + " (upper bound)";
        break;
      case AlphaKind::unknown:
        head = "alpha unknown";
        break;
    }
    std::string body = head + "\n";
    if (!r.trace.empty()) body += "trace:\n" + format_trace(r.trace);
    std::fwrite(body.data(), 1, body.size(), stdout);
    return 0;
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 1;
  }
}

}  // namespace phibvp
