#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nmmg {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// A smooth unconstrained multiobjective problem: m objectives over R^n
/// with an analytic Jacobian (row i of eval_J is the gradient of F_i).
/// The box is used only to sample start points; the solver itself is
/// unconstrained.
struct Problem {
  std::string name;
  int n = 0;
  int m = 0;
  std::function<Vector(const Vector&)> eval_F;
  std::function<Matrix(const Vector&)> eval_J;
  Vector box_lo;
  Vector box_hi;
};

enum class Algorithm {
  MaxType,           // memory-gradient direction, max-window Armijo
  AverageType,       // memory-gradient direction, averaged Armijo
  MonotoneBaseline,  // memory-gradient direction, monotone Armijo (M=0 / eta=0)
  SteepestDescent,   // no memory (d = gamma * v), configured line search
};

/// Line-search family used by the baseline algorithms (the two main
/// algorithms imply their own family).
enum class LsFamily { MaxType, AverageType };

struct SolverConfig {
  Algorithm algorithm = Algorithm::MaxType;
  LsFamily baseline_family = LsFamily::MaxType;

  int memory = 5;       // N, number of stored previous directions (0 = steepest descent)
  double gamma = 1.0;   // constant gamma_k = gamma* > 0
  double eps_crit = 1e-6;
  int max_iter = 2000;
  int max_ls_trials = 60;

  // max-type line search: first trial in [lambda1, lambda2], shrink factor in
  // [lambda3, lambda4], window parameter M. The implementation always picks
  // alpha0 = lambda2 and sigma = lambda3.
  double lambda1 = 1.0;
  double lambda2 = 1.0;
  double lambda3 = 0.5;
  double lambda4 = 0.5;
  int window = 10;  // M

  double rho = 1e-4;  // Armijo slope fraction, shared by both searches

  // average-type line search: backtracking factor delta, averaging weight
  // eta_k taken constant = eta_max.
  double delta = 0.5;
  double eta_min = 0.0;
  double eta_max = 0.85;
  bool unsafe_eta = false;  // permit eta_max = 1 (pure averaging)

  // direction parameters: phi_kj = max(phi_margin * bound, phi_floor)
  double phi_margin = 2.0;   // mu > 1
  double phi_floor = 1e-12;  // eps_phi > 0
  bool force_beta_zero = false;  // diagnostic: zero all memory weights

  bool restart_on_ls_fail = false;  // retry a failed search with d = gamma*v

  double dual_tol = 1e-10;
  int dual_max_iter = 10000;

  std::uint64_t rng_seed = 0;  // start-point sampling only
};

struct ConfigViolation {
  std::string field;
  std::string constraint;
};

/// Returns every parameter-range violation (empty means the config is valid).
std::vector<ConfigViolation> validate_config(const SolverConfig& cfg);

/// Per-iteration record. Row k describes the state at x_k and the step taken
/// from it; a terminal row has alpha = 0. ls_ref is the objective-vector
/// reference the line search compared against (window max or C_k).
struct IterationRecord {
  int k = 0;
  Vector x;
  Vector F;
  double v_norm = 0.0;
  double theta = 0.0;
  double psi_v = 0.0;
  double psi_d = 0.0;
  double gamma = 0.0;
  double alpha = 0.0;
  int ls_trials = 0;
  Vector ls_ref;
};

enum class StopReason { Critical, MaxIter, LineSearchFail, NonDescent, DualSolveFail };

std::string_view to_string(StopReason r);
std::string_view to_string(Algorithm a);
std::string_view to_string(LsFamily f);
Algorithm algorithm_from_string(std::string_view s);
LsFamily ls_family_from_string(std::string_view s);

struct RunResult {
  std::vector<IterationRecord> trace;
  StopReason stop_reason = StopReason::MaxIter;
  Vector final_x;
  Vector final_F;
  long f_evals = 0;
  long j_evals = 0;
  long dual_solves = 0;

  /// Number of accepted steps (the trace always ends with a terminal row).
  int iterations() const { return trace.empty() ? 0 : static_cast<int>(trace.size()) - 1; }
};

/// Appends rec to trace; rec.k must equal the current trace length.
void record_iteration(std::vector<IterationRecord>& trace, IterationRecord rec);

/// Inner dual solver ran out of iterations before reaching its tolerance.
class NoConvergence : public std::runtime_error {
 public:
  NoConvergence(int iterations, double gap);
  int iterations;
  double gap;
};

/// A computed direction failed the analytic descent guarantee, which signals
/// numerical breakdown rather than a model property.
class NonDescent : public std::runtime_error {
 public:
  explicit NonDescent(double psi_d);
  double psi_d;
};

}  // namespace nmmg
