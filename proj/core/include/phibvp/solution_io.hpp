#pragma once

#include <string>

#include "phibvp/certify.hpp"
#include "phibvp/problem_file.hpp"
#include "phibvp/solver.hpp"
#include "phibvp/trajectory.hpp"

namespace phibvp {

// CSV with header "t,u0,...,u{d-1},w0,...,w{d-1}" (w = derivative) and one
// row per grid node. Values use 17 significant digits, so a write/read round
// trip reproduces every double exactly.
std::string solution_csv(const Trajectory& tr);
void write_solution_csv(const std::string& path, const Trajectory& tr);
Trajectory read_solution_csv(const std::string& path);
Trajectory parse_solution_csv(const std::string& text);

// Single JSON document with the problem description, solver outcome,
// re-verification report, and the certificate.
std::string diagnostics_json(const ProblemFile& pf, const SolveResult& r,
                             const VerifyReport& verify, const Certificate& cert);

}  // namespace phibvp
