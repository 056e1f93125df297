#pragma once

#include "nmmg/core.hpp"

namespace nmmg {

/// Parameters actually in force once the baseline reductions are applied:
/// SteepestDescent zeroes the memory, MonotoneBaseline zeroes the window
/// (max family) or the averaging weight (average family).
struct EffectiveParams {
  LsFamily family = LsFamily::MaxType;
  int memory = 0;
  int window = 0;
  double eta = 0.0;  // constant eta_k
};

EffectiveParams effective_params(const SolverConfig& cfg);

/// Runs the configured algorithm from x0 until criticality
/// (||v(x_k)|| <= eps_crit), the iteration cap, or a numerical failure.
///
/// Each outer iteration solves the min-norm subproblem, builds the
/// memory-gradient direction, runs the configured nonmonotone Armijo search,
/// then advances x and the bookkeeping state. The trace records one row per
/// iteration; the last row is terminal (alpha = 0) and documents the state at
/// the final point. Inner failures (NoConvergence, NonDescent, line-search
/// exhaustion) stop the run and are reported through stop_reason with the
/// trace retained.
RunResult run(const Problem& problem, const Vector& x0, const SolverConfig& cfg);

/// Same loop restricted to the reduction baselines: SteepestDescent forces
/// N = 0, MonotoneBaseline forces M = 0 (max family) or eta = 0 (average
/// family). Throws if cfg.algorithm is not a baseline.
RunResult run_baseline(const Problem& problem, const Vector& x0, const SolverConfig& cfg);

}  // namespace nmmg
