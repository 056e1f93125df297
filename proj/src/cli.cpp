#include "nmmg/cli.hpp"

#include "nmmg/audit.hpp"
#include "nmmg/criticality.hpp"
#include "nmmg/io.hpp"
#include "nmmg/multistart.hpp"
#include "nmmg/problems.hpp"
#include "nmmg/rng.hpp"
#include "nmmg/solver.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace nmmg {

namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitAuditFail = 1;
constexpr int kExitBadFlags = 2;
constexpr int kExitSolverError = 3;

struct CommonArgs {
  std::string problem = "quad2";
  int n = 2;
  std::string algo = "max";
  std::string ls_family = "max";
  int starts = 100;
  std::uint64_t seed = 0;
  std::string config_path;
  std::string out_dir;
  bool serial = false;
  std::vector<double> x0;

  // per-parameter overrides; CLI11 fills the flags that were actually given
  double rho = 0, delta = 0, eta_max = 0, gamma = 0, eps_crit = 0;
  int M = 0, N = 0, max_iter = 0;
};

void add_common_options(CLI::App* cmd, CommonArgs& a, bool with_starts) {
  cmd->add_option("--problem", a.problem, "problem family (quad2|quad3|fonseca)");
  cmd->add_option("--n", a.n, "dimension (2|5|10)");
  cmd->add_option("--algo", a.algo, "algorithm (max|avg|monotone|sd)");
  cmd->add_option("--ls-family", a.ls_family, "line-search family for baselines (max|avg)");
  if (with_starts) cmd->add_option("--starts", a.starts, "number of start points");
  cmd->add_option("--seed", a.seed, "rng seed for start sampling");
  cmd->add_option("--config", a.config_path, "key=value config file");
  cmd->add_option("--out", a.out_dir, "output directory (default $NMMG_OUT_DIR or ./out)");
  cmd->add_flag("--serial", a.serial, "run starts serially instead of with OpenMP");

  cmd->add_option("--rho", a.rho, "Armijo slope fraction")->group("Overrides");
  cmd->add_option("--delta", a.delta, "average-type backtracking factor")->group("Overrides");
  cmd->add_option("--eta-max", a.eta_max, "averaging weight eta")->group("Overrides");
  cmd->add_option("--M", a.M, "max-type window parameter")->group("Overrides");
  cmd->add_option("--N", a.N, "direction memory depth")->group("Overrides");
  cmd->add_option("--gamma", a.gamma, "gamma (steepest-descent weight)")->group("Overrides");
  cmd->add_option("--eps-crit", a.eps_crit, "criticality tolerance")->group("Overrides");
  cmd->add_option("--max-iter", a.max_iter, "iteration cap")->group("Overrides");
}

SolverConfig build_config(const CLI::App* cmd, const CommonArgs& a) {
  SolverConfig cfg;
  if (!a.config_path.empty()) cfg = load_config_file(a.config_path, cfg);

  cfg.algorithm = algorithm_from_string(a.algo);
  cfg.baseline_family = ls_family_from_string(a.ls_family);
  cfg.rng_seed = a.seed;

  auto given = [cmd](const std::string& flag) { return cmd->count(flag) > 0; };
  if (given("--rho")) cfg.rho = a.rho;
  if (given("--delta")) cfg.delta = a.delta;
  if (given("--eta-max")) cfg.eta_max = a.eta_max;
  if (given("--M")) cfg.window = a.M;
  if (given("--N")) cfg.memory = a.N;
  if (given("--gamma")) cfg.gamma = a.gamma;
  if (given("--eps-crit")) cfg.eps_crit = a.eps_crit;
  if (given("--max-iter")) cfg.max_iter = a.max_iter;

  const auto violations = validate_config(cfg);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << "invalid configuration:";
    for (const auto& v : violations) msg << " [" << v.field << " " << v.constraint << "]";
    throw CLI::ValidationError(msg.str());
  }
  return cfg;
}

fs::path resolve_out_dir(const CommonArgs& a) {
  if (!a.out_dir.empty()) return a.out_dir;
  if (const char* env = std::getenv("NMMG_OUT_DIR"); env && *env) return env;
  return "out";
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

bool run_failed(StopReason r) {
  return r == StopReason::LineSearchFail || r == StopReason::NonDescent ||
         r == StopReason::DualSolveFail;
}

int cmd_solve(const CLI::App* cmd, const CommonArgs& a) {
  const SuiteEntry entry = make_entry(a.problem, a.n);
  const SolverConfig cfg = build_config(cmd, a);

  Vector x0;
  if (!a.x0.empty()) {
    if (static_cast<int>(a.x0.size()) != entry.problem.n) {
      throw CLI::ValidationError("--x0 needs " + std::to_string(entry.problem.n) + " values");
    }
    x0 = Eigen::Map<const Vector>(a.x0.data(), static_cast<Eigen::Index>(a.x0.size()));
  } else {
    x0 = sample_starts(entry.problem, 1, cfg.rng_seed).front();
  }

  const RunResult result = run(entry.problem, x0, cfg);

  const fs::path dir = resolve_out_dir(a);
  fs::create_directories(dir);
  const std::string stem = entry.problem.name + "_" + std::string(to_string(cfg.algorithm)) +
                           "_seed" + std::to_string(cfg.rng_seed);
  const fs::path csv_path = dir / (stem + "_trace.csv");
  const fs::path json_path = dir / (stem + "_run.json");
  write_file(csv_path, trace_csv_string(result));
  write_file(json_path, run_to_json(entry.problem.name, cfg, result).dump(2) + "\n");

  std::cout << "problem      " << entry.problem.name << "\n"
            << "algorithm    " << to_string(cfg.algorithm) << "\n"
            << "stop reason  " << to_string(result.stop_reason) << "\n"
            << "iterations   " << result.iterations() << "\n"
            << "f/J evals    " << result.f_evals << "/" << result.j_evals << "\n"
            << "final ||v||  " << format_double(result.trace.back().v_norm) << "\n"
            << "final F      [";
  for (Eigen::Index i = 0; i < result.final_F.size(); ++i) {
    std::cout << (i ? "," : "") << format_double(result.final_F[i]);
  }
  std::cout << "]\n"
            << "trace        " << csv_path.string() << "\n"
            << "summary      " << json_path.string() << "\n";

  return run_failed(result.stop_reason) ? kExitSolverError : kExitOk;
}

int cmd_front(const CLI::App* cmd, const CommonArgs& a) {
  const SuiteEntry entry = make_entry(a.problem, a.n);
  const SolverConfig cfg = build_config(cmd, a);

  const auto starts = sample_starts(entry.problem, a.starts, cfg.rng_seed);
  const auto results = run_multistart(entry.problem, starts, cfg,
                                      a.serial ? ExecMode::Serial : ExecMode::Parallel);
  const FrontResult front =
      build_front(entry.problem.name, std::string(to_string(cfg.algorithm)), results);

  const fs::path dir = resolve_out_dir(a);
  fs::create_directories(dir);
  const std::string stem = entry.problem.name + "_" + front.algorithm + "_seed" +
                           std::to_string(cfg.rng_seed);
  std::ostringstream csv;
  write_front_csv(csv, front);
  const fs::path csv_path = dir / (stem + "_front.csv");
  const fs::path json_path = dir / (stem + "_stats.json");
  write_file(csv_path, csv.str());
  write_file(json_path, front_stats_json(front).dump(2) + "\n");

  std::cout << "problem          " << front.problem_id << "\n"
            << "algorithm        " << front.algorithm << "\n"
            << "starts           " << front.stats.starts << "\n"
            << "converged        " << front.stats.converged << "\n"
            << "nondominated     " << front.nondominated.size() << "\n"
            << "median iters     " << format_double(front.stats.median_iterations) << "\n"
            << "median f-evals   " << format_double(front.stats.median_f_evals) << "\n"
            << "max final ||v||  " << format_double(front.stats.max_final_v_norm) << "\n"
            << "front            " << csv_path.string() << "\n"
            << "stats            " << json_path.string() << "\n";
  return kExitOk;
}

int cmd_compare(const CLI::App* cmd, const CommonArgs& a) {
  const SuiteEntry entry = make_entry(a.problem, a.n);
  const SolverConfig base = build_config(cmd, a);

  // One shared start set: every algorithm sees bit-identical points.
  const auto starts = sample_starts(entry.problem, a.starts, base.rng_seed);

  Json out;
  out["version"] = 1;
  out["problem"] = entry.problem.name;
  out["starts"] = a.starts;
  out["seed"] = base.rng_seed;
  Json per_algo;

  std::cout << "algorithm  converged  median_iters  median_fevals  max_final_v\n";
  for (const Algorithm algo : {Algorithm::MaxType, Algorithm::AverageType,
                               Algorithm::MonotoneBaseline, Algorithm::SteepestDescent}) {
    SolverConfig cfg = base;
    cfg.algorithm = algo;
    const auto results = run_multistart(entry.problem, starts, cfg,
                                        a.serial ? ExecMode::Serial : ExecMode::Parallel);
    const FrontResult front =
        build_front(entry.problem.name, std::string(to_string(algo)), results);
    per_algo[std::string(to_string(algo))] = front_stats_json(front);

    std::printf("%-9s  %4d/%-4d  %12s  %13s  %11s\n", std::string(to_string(algo)).c_str(),
                front.stats.converged, front.stats.starts,
                format_double(front.stats.median_iterations).c_str(),
                format_double(front.stats.median_f_evals).c_str(),
                format_double(front.stats.max_final_v_norm).c_str());
  }
  out["algorithms"] = std::move(per_algo);

  const fs::path dir = resolve_out_dir(a);
  fs::create_directories(dir);
  const fs::path json_path =
      dir / (entry.problem.name + "_compare_seed" + std::to_string(base.rng_seed) + ".json");
  write_file(json_path, out.dump(2) + "\n");
  std::cout << "comparison  " << json_path.string() << "\n";
  return kExitOk;
}

int cmd_check(const CLI::App* cmd, const CommonArgs& a, bool quick) {
  const SolverConfig base = build_config(cmd, a);
  int failures = 0;
  auto report = [&failures](bool ok, const std::string& what, const std::string& detail = "") {
    std::cout << (ok ? "[ok]   " : "[FAIL] ") << what;
    if (!ok && !detail.empty()) std::cout << "  (" << detail << ")";
    std::cout << "\n";
    if (!ok) ++failures;
  };

  const int fd_points = quick ? 10 : 50;
  const int audit_starts = quick ? 2 : 5;

  for (const SuiteEntry& entry : suite()) {
    const auto points = sample_starts(entry.problem, fd_points, base.rng_seed + 17);
    double worst = 0.0;
    for (const auto& x : points) worst = std::max(worst, fd_check(entry.problem, x, 1e-6));
    report(worst <= 1e-5, entry.problem.name + ": jacobian vs central differences",
           "max rel err " + format_double(worst));
  }

  // Subproblem identities on random Jacobians.
  {
    SplitMix64 rng(base.rng_seed + 23);
    bool ok = true;
    std::string detail;
    for (int t = 0; t < (quick ? 100 : 500) && ok; ++t) {
      const int m = 1 + static_cast<int>(rng.next() % 4);
      const int n = 1 + static_cast<int>(rng.next() % 6);
      Matrix J(m, n);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) J(i, j) = rng.uniform(-1.0, 1.0);
      const DualSolution ds = solve_dual(J, 1e-10);
      const double vsq = ds.v.squaredNorm();
      const double lam_err = std::abs(ds.lambda.sum() - 1.0);
      if (ds.lambda.minCoeff() < 0.0 || lam_err > 1e-12) {
        ok = false;
        detail = "lambda infeasible";
      } else if (std::abs(ds.theta + 0.5 * vsq) > 1e-8 * (1.0 + vsq) ||
                 std::abs(psi(J, ds.v) + vsq) > 1e-7 * (1.0 + vsq)) {
        ok = false;
        detail = "dual identities violated";
      }
    }
    report(ok, "subproblem: dual identities on random jacobians", detail);
  }

  for (const SuiteEntry& entry : suite()) {
    const auto starts = sample_starts(entry.problem, audit_starts, base.rng_seed + 31);
    for (const Algorithm algo : {Algorithm::MaxType, Algorithm::AverageType,
                                 Algorithm::MonotoneBaseline, Algorithm::SteepestDescent}) {
      SolverConfig cfg = base;
      cfg.algorithm = algo;
      const auto results = run_multistart(entry.problem, starts, cfg,
                                          a.serial ? ExecMode::Serial : ExecMode::Parallel);
      std::vector<AuditIssue> issues;
      for (const auto& r : results) {
        auto found = audit_run(entry.problem, cfg, r);
        issues.insert(issues.end(), found.begin(), found.end());
      }
      report(issues.empty(),
             entry.problem.name + " / " + std::string(to_string(algo)) + ": invariant audit",
             issues.empty() ? "" : to_string(issues.front()));
    }
  }

  std::cout << (failures == 0 ? "all checks passed\n"
                              : std::to_string(failures) + " check(s) failed\n");
  return failures == 0 ? kExitOk : kExitAuditFail;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"nonmonotone multiobjective memory-gradient solvers"};
  app.require_subcommand(1);

  CommonArgs solve_args, front_args, compare_args, check_args;
  bool check_quick = false;

  auto* solve = app.add_subcommand("solve", "run one problem from one start point");
  add_common_options(solve, solve_args, false);
  solve->add_option("--x0", solve_args.x0, "explicit start point (comma-separated)")
      ->delimiter(',');

  auto* front = app.add_subcommand("front", "multistart Pareto-front approximation");
  add_common_options(front, front_args, true);

  auto* compare = app.add_subcommand("compare", "run all algorithms on matched starts");
  add_common_options(compare, compare_args, true);

  auto* check = app.add_subcommand("check", "finite-difference and invariant audit");
  add_common_options(check, check_args, false);
  check->add_flag("--quick", check_quick, "reduced sample counts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadFlags;
  }

  try {
    if (solve->parsed()) return cmd_solve(solve, solve_args);
    if (front->parsed()) return cmd_front(front, front_args);
    if (compare->parsed()) return cmd_compare(compare, compare_args);
    if (check->parsed()) return cmd_check(check, check_args, check_quick);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadFlags;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadFlags;
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolverError;
  }
  return kExitBadFlags;
}

}  // namespace nmmg
