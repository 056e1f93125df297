#include "nmmg/multistart.hpp"

#include "nmmg/rng.hpp"
#include "nmmg/solver.hpp"

#include <algorithm>
#include <cmath>

namespace nmmg {

std::vector<Vector> sample_starts(const Problem& problem, int count, std::uint64_t seed) {
  if (count < 0) throw std::invalid_argument("sample_starts: negative count");
  const bool boxed = problem.box_lo.size() == problem.n && problem.box_hi.size() == problem.n;

  SplitMix64 rng(seed);
  std::vector<Vector> starts;
  starts.reserve(static_cast<std::size_t>(count));
  for (int s = 0; s < count; ++s) {
    Vector x(problem.n);
    for (int i = 0; i < problem.n; ++i) {
      const double lo = boxed ? problem.box_lo[i] : -5.0;
      const double hi = boxed ? problem.box_hi[i] : 5.0;
      x[i] = rng.uniform(lo, hi);
    }
    starts.push_back(std::move(x));
  }
  return starts;
}

std::vector<RunResult> run_multistart(const Problem& problem, const std::vector<Vector>& starts,
                                      const SolverConfig& cfg, ExecMode mode) {
  std::vector<RunResult> results(starts.size());

  if (mode == ExecMode::Serial) {
    for (std::size_t s = 0; s < starts.size(); ++s) {
      results[s] = run(problem, starts[s], cfg);
    }
    return results;
  }

  // Runs are independent; each writes only its own slot. Exceptions may not
  // cross the parallel region, so they are parked and rethrown afterwards.
  std::exception_ptr failure = nullptr;
  const auto count = static_cast<std::ptrdiff_t>(starts.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t s = 0; s < count; ++s) {
    try {
      results[static_cast<std::size_t>(s)] =
          run(problem, starts[static_cast<std::size_t>(s)], cfg);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

std::vector<std::size_t> nondominated_filter(const std::vector<Vector>& points) {
  auto dominates = [](const Vector& u, const Vector& w) {
    return (u.array() <= w.array()).all() && (u.array() != w.array()).any();
  };

  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < points.size() && !dominated; ++j) {
      if (j != i && dominates(points[j], points[i])) dominated = true;
    }
    if (!dominated) keep.push_back(i);
  }
  return keep;
}

RunSummary summarize(int start_index, const RunResult& r) {
  RunSummary s;
  s.start = start_index;
  s.stop_reason = r.stop_reason;
  s.iterations = r.iterations();
  s.f_evals = r.f_evals;
  s.final_v_norm = r.trace.empty() ? 0.0 : r.trace.back().v_norm;
  s.final_x = r.final_x;
  s.final_F = r.final_F;
  return s;
}

namespace {

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t h = values.size() / 2;
  return values.size() % 2 == 1 ? values[h] : 0.5 * (values[h - 1] + values[h]);
}

}  // namespace

FrontResult build_front(const std::string& problem_id, const std::string& algorithm,
                        const std::vector<RunResult>& results) {
  FrontResult front;
  front.problem_id = problem_id;
  front.algorithm = algorithm;

  std::vector<Vector> finals;
  std::vector<double> iters, fevals;
  for (std::size_t s = 0; s < results.size(); ++s) {
    front.runs.push_back(summarize(static_cast<int>(s), results[s]));
    finals.push_back(results[s].final_F);
    iters.push_back(static_cast<double>(front.runs.back().iterations));
    fevals.push_back(static_cast<double>(front.runs.back().f_evals));
  }
  front.nondominated = nondominated_filter(finals);

  front.stats.starts = static_cast<int>(results.size());
  front.stats.converged = static_cast<int>(
      std::count_if(front.runs.begin(), front.runs.end(),
                    [](const RunSummary& s) { return s.stop_reason == StopReason::Critical; }));
  front.stats.convergence_rate =
      front.stats.starts > 0
          ? static_cast<double>(front.stats.converged) / front.stats.starts
          : 0.0;
  front.stats.median_iterations = median(iters);
  front.stats.median_f_evals = median(fevals);
  front.stats.max_final_v_norm = 0.0;
  for (const auto& s : front.runs) {
    front.stats.max_final_v_norm = std::max(front.stats.max_final_v_norm, s.final_v_norm);
  }
  return front;
}

}  // namespace nmmg
