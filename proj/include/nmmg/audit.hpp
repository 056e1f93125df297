#pragma once

#include "nmmg/core.hpp"

namespace nmmg {

struct AuditIssue {
  int k = -1;               // iteration the issue was found at, -1 for run-level
  std::string invariant;    // stable id, e.g. "sufficient-descent"
  std::string detail;
};

std::string to_string(const AuditIssue& issue);

/// Re-derives every checkable property of a finished run from its trace and
/// fresh objective evaluations: consecutive indices, objective consistency,
/// descent and sufficient descent, acceptance inequalities, window/average
/// reference bookkeeping, the sandwich and monotonicity bounds, the Q bound,
/// the per-step decrease, and the criticality of a Critical stop. Returns the
/// full list of violations (empty for a sound run).
std::vector<AuditIssue> audit_run(const Problem& problem, const SolverConfig& cfg,
                                  const RunResult& result);

}  // namespace nmmg
