#pragma once

#include "nmmg/core.hpp"
#include "nmmg/problems.hpp"

namespace nmmg {

/// Start points sampled uniformly from the problem's box; the whole batch is
/// drawn from one stream so it depends only on (problem dims, count, seed),
/// never on how the runs are scheduled.
std::vector<Vector> sample_starts(const Problem& problem, int count, std::uint64_t seed);

enum class ExecMode { Serial, Parallel };

/// Runs the solver once per start point. Serial is the reference path;
/// Parallel distributes starts over OpenMP threads. Results are indexed by
/// start, so both modes produce identical output.
std::vector<RunResult> run_multistart(const Problem& problem, const std::vector<Vector>& starts,
                                      const SolverConfig& cfg, ExecMode mode);

/// Indices of the points not strictly dominated by any other
/// (u dominates w when u <= w componentwise and u != w), in input order.
/// Reference O(K^2 m) double loop.
std::vector<std::size_t> nondominated_filter(const std::vector<Vector>& points);

struct RunSummary {
  int start = 0;
  StopReason stop_reason = StopReason::MaxIter;
  int iterations = 0;
  long f_evals = 0;
  double final_v_norm = 0.0;
  Vector final_x;
  Vector final_F;
};

RunSummary summarize(int start_index, const RunResult& r);

struct FrontStats {
  int starts = 0;
  int converged = 0;  // stop_reason == Critical
  double convergence_rate = 0.0;
  double median_iterations = 0.0;
  double median_f_evals = 0.0;
  double max_final_v_norm = 0.0;
};

struct FrontResult {
  std::string problem_id;
  std::string algorithm;
  std::vector<RunSummary> runs;          // ordered by start index
  std::vector<std::size_t> nondominated; // indices into runs
  FrontStats stats;
};

FrontResult build_front(const std::string& problem_id, const std::string& algorithm,
                        const std::vector<RunResult>& results);

}  // namespace nmmg
