// Times the multistart driver's serial reference path against the OpenMP
// path on one suite problem and verifies that both produce identical runs.

#include "nmmg/io.hpp"
#include "nmmg/multistart.hpp"
#include "nmmg/problems.hpp"
#include "nmmg/solver.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <chrono>
#include <cstdio>

namespace {

double time_once(const nmmg::Problem& problem, const std::vector<nmmg::Vector>& starts,
                 const nmmg::SolverConfig& cfg, nmmg::ExecMode mode,
                 std::vector<nmmg::RunResult>& out) {
  const auto t0 = std::chrono::steady_clock::now();
  out = nmmg::run_multistart(problem, starts, cfg, mode);
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

bool identical(const std::vector<nmmg::RunResult>& a, const std::vector<nmmg::RunResult>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (nmmg::trace_csv_string(a[i]) != nmmg::trace_csv_string(b[i])) return false;
    if (a[i].stop_reason != b[i].stop_reason) return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  std::string family = "fonseca";
  int n = 10;
  std::string algo = "max";
  int starts = 512;
  int repeat = 3;
  std::uint64_t seed = 0;

  CLI::App app{"serial vs OpenMP multistart benchmark"};
  app.add_option("--problem", family, "problem family");
  app.add_option("--n", n, "dimension");
  app.add_option("--algo", algo, "algorithm");
  app.add_option("--starts", starts, "start points per timing");
  app.add_option("--repeat", repeat, "timing repetitions");
  app.add_option("--seed", seed, "sampling seed");
  CLI11_PARSE(app, argc, argv);

  const nmmg::SuiteEntry entry = nmmg::make_entry(family, n);
  nmmg::SolverConfig cfg;
  cfg.algorithm = nmmg::algorithm_from_string(algo);
  cfg.rng_seed = seed;

  const auto pts = nmmg::sample_starts(entry.problem, starts, seed);

  std::vector<nmmg::RunResult> serial, parallel;
  double t_serial = 1e300, t_parallel = 1e300;
  for (int r = 0; r < repeat; ++r) {
    t_serial = std::min(t_serial, time_once(entry.problem, pts, cfg, nmmg::ExecMode::Serial, serial));
    t_parallel =
        std::min(t_parallel, time_once(entry.problem, pts, cfg, nmmg::ExecMode::Parallel, parallel));
  }

  if (!identical(serial, parallel)) {
    std::printf("MISMATCH: serial and OpenMP runs differ\n");
    return 1;
  }

  std::printf("problem=%s algo=%s starts=%d threads=%d\n", entry.problem.name.c_str(),
              algo.c_str(), starts, omp_get_max_threads());
  std::printf("  serial    %8.3f ms\n", 1e3 * t_serial);
  std::printf("  openmp    %8.3f ms\n", 1e3 * t_parallel);
  std::printf("  speedup   %8.2fx\n", t_serial / t_parallel);
  std::printf("  runs identical: yes\n");
  return 0;
}
