#include "nmmg/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace nmmg {

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("parse_double: bad number '" + std::string(s) + "'");
  }
  return v;
}

namespace {

long parse_long(std::string_view s) {
  long v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("parse integer: bad value '" + std::string(s) + "'");
  }
  return v;
}

bool parse_bool(std::string_view s) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw std::invalid_argument("parse bool: bad value '" + std::string(s) + "'");
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

Json vector_to_json(const Vector& v) {
  Json arr = Json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

void write_trace_csv(std::ostream& os, const RunResult& r) {
  const auto m = r.final_F.size();
  os << "k";
  for (Eigen::Index i = 0; i < m; ++i) os << ",F_" << i;
  os << ",v_norm,psi_d,alpha,trials\n";
  for (const auto& rec : r.trace) {
    os << rec.k;
    for (Eigen::Index i = 0; i < m; ++i) os << ',' << format_double(rec.F[i]);
    os << ',' << format_double(rec.v_norm) << ',' << format_double(rec.psi_d) << ','
       << format_double(rec.alpha) << ',' << rec.ls_trials << '\n';
  }
}

std::string trace_csv_string(const RunResult& r) {
  std::ostringstream os;
  write_trace_csv(os, r);
  return os.str();
}

std::vector<TraceRow> parse_trace_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("trace csv: missing header");
  const auto header = split_csv_line(line);
  if (header.size() < 5 || header.front() != "k" || header.back() != "trials") {
    throw std::invalid_argument("trace csv: unexpected header");
  }
  const std::size_t m = header.size() - 5;

  std::vector<TraceRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size()) throw std::invalid_argument("trace csv: ragged row");
    TraceRow row;
    row.k = parse_long(fields[0]);
    for (std::size_t i = 0; i < m; ++i) row.F.push_back(parse_double(fields[1 + i]));
    row.v_norm = parse_double(fields[1 + m]);
    row.psi_d = parse_double(fields[2 + m]);
    row.alpha = parse_double(fields[3 + m]);
    row.trials = parse_long(fields[4 + m]);
    rows.push_back(std::move(row));
  }
  return rows;
}

Json run_to_json(const std::string& problem_id, const SolverConfig& cfg, const RunResult& r) {
  Json j;
  j["version"] = 1;
  j["problem"] = problem_id;
  j["algorithm"] = std::string(to_string(cfg.algorithm));
  j["n"] = r.final_x.size();
  j["m"] = r.final_F.size();
  j["stop_reason"] = std::string(to_string(r.stop_reason));
  j["iterations"] = r.iterations();
  j["f_evals"] = r.f_evals;
  j["j_evals"] = r.j_evals;
  j["dual_solves"] = r.dual_solves;
  j["final_v_norm"] = r.trace.empty() ? 0.0 : r.trace.back().v_norm;
  j["final_x"] = vector_to_json(r.final_x);
  j["final_F"] = vector_to_json(r.final_F);

  Json trace = Json::array();
  for (const auto& rec : r.trace) {
    Json t;
    t["k"] = rec.k;
    t["x"] = vector_to_json(rec.x);
    t["F"] = vector_to_json(rec.F);
    t["v_norm"] = rec.v_norm;
    t["theta"] = rec.theta;
    t["psi_v"] = rec.psi_v;
    t["psi_d"] = rec.psi_d;
    t["gamma"] = rec.gamma;
    t["alpha"] = rec.alpha;
    t["trials"] = rec.ls_trials;
    t["ls_ref"] = vector_to_json(rec.ls_ref);
    trace.push_back(std::move(t));
  }
  j["trace"] = std::move(trace);
  return j;
}

RunSummaryView make_summary_view(const std::string& problem_id, const SolverConfig& cfg,
                                 const RunResult& r) {
  RunSummaryView v;
  v.problem = problem_id;
  v.algorithm = std::string(to_string(cfg.algorithm));
  v.stop_reason = std::string(to_string(r.stop_reason));
  v.iterations = r.iterations();
  v.f_evals = r.f_evals;
  v.j_evals = r.j_evals;
  v.dual_solves = r.dual_solves;
  v.final_v_norm = r.trace.empty() ? 0.0 : r.trace.back().v_norm;
  v.final_x = to_std(r.final_x);
  v.final_F = to_std(r.final_F);
  return v;
}

RunSummaryView summary_from_json(const Json& j) {
  RunSummaryView v;
  v.problem = j.at("problem").get<std::string>();
  v.algorithm = j.at("algorithm").get<std::string>();
  v.stop_reason = j.at("stop_reason").get<std::string>();
  v.iterations = j.at("iterations").get<long>();
  v.f_evals = j.at("f_evals").get<long>();
  v.j_evals = j.at("j_evals").get<long>();
  v.dual_solves = j.at("dual_solves").get<long>();
  v.final_v_norm = j.at("final_v_norm").get<double>();
  v.final_x = j.at("final_x").get<std::vector<double>>();
  v.final_F = j.at("final_F").get<std::vector<double>>();
  return v;
}

void write_front_csv(std::ostream& os, const FrontResult& front) {
  Eigen::Index m = 0, n = 0;
  if (!front.runs.empty()) {
    m = front.runs.front().final_F.size();
    n = front.runs.front().final_x.size();
  }
  os << "start";
  for (Eigen::Index i = 0; i < m; ++i) os << ",F_" << i;
  for (Eigen::Index i = 0; i < n; ++i) os << ",x_" << i;
  os << '\n';
  for (const std::size_t idx : front.nondominated) {
    const auto& s = front.runs[idx];
    os << s.start;
    for (Eigen::Index i = 0; i < m; ++i) os << ',' << format_double(s.final_F[i]);
    for (Eigen::Index i = 0; i < n; ++i) os << ',' << format_double(s.final_x[i]);
    os << '\n';
  }
}

std::vector<FrontRow> parse_front_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("front csv: missing header");
  const auto header = split_csv_line(line);
  if (header.empty() || header.front() != "start") {
    throw std::invalid_argument("front csv: unexpected header");
  }
  std::size_t m = 0;
  for (std::size_t i = 1; i < header.size() && header[i].starts_with("F_"); ++i) ++m;
  const std::size_t n = header.size() - 1 - m;

  std::vector<FrontRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size()) throw std::invalid_argument("front csv: ragged row");
    FrontRow row;
    row.start = static_cast<int>(parse_long(fields[0]));
    for (std::size_t i = 0; i < m; ++i) row.F.push_back(parse_double(fields[1 + i]));
    for (std::size_t i = 0; i < n; ++i) row.x.push_back(parse_double(fields[1 + m + i]));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json front_stats_json(const FrontResult& front) {
  Json j;
  j["version"] = 1;
  j["problem"] = front.problem_id;
  j["algorithm"] = front.algorithm;
  j["starts"] = front.stats.starts;
  j["converged"] = front.stats.converged;
  j["convergence_rate"] = front.stats.convergence_rate;
  j["median_iterations"] = front.stats.median_iterations;
  j["median_f_evals"] = front.stats.median_f_evals;
  j["max_final_v_norm"] = front.stats.max_final_v_norm;
  j["nondominated_count"] = front.nondominated.size();
  return j;
}

void apply_config_entry(SolverConfig& cfg, std::string_view key, std::string_view value) {
  if (key == "algorithm") cfg.algorithm = algorithm_from_string(value);
  else if (key == "baseline_family") cfg.baseline_family = ls_family_from_string(value);
  else if (key == "N") cfg.memory = static_cast<int>(parse_long(value));
  else if (key == "M") cfg.window = static_cast<int>(parse_long(value));
  else if (key == "gamma") cfg.gamma = parse_double(value);
  else if (key == "rho") cfg.rho = parse_double(value);
  else if (key == "delta") cfg.delta = parse_double(value);
  else if (key == "lambda1") cfg.lambda1 = parse_double(value);
  else if (key == "lambda2") cfg.lambda2 = parse_double(value);
  else if (key == "lambda3") cfg.lambda3 = parse_double(value);
  else if (key == "lambda4") cfg.lambda4 = parse_double(value);
  else if (key == "eta_min") cfg.eta_min = parse_double(value);
  else if (key == "eta_max") cfg.eta_max = parse_double(value);
  else if (key == "unsafe_eta") cfg.unsafe_eta = parse_bool(value);
  else if (key == "eps_crit") cfg.eps_crit = parse_double(value);
  else if (key == "max_iter") cfg.max_iter = static_cast<int>(parse_long(value));
  else if (key == "max_ls_trials") cfg.max_ls_trials = static_cast<int>(parse_long(value));
  else if (key == "phi_margin") cfg.phi_margin = parse_double(value);
  else if (key == "phi_floor") cfg.phi_floor = parse_double(value);
  else if (key == "force_beta_zero") cfg.force_beta_zero = parse_bool(value);
  else if (key == "restart_on_ls_fail") cfg.restart_on_ls_fail = parse_bool(value);
  else if (key == "dual_tol") cfg.dual_tol = parse_double(value);
  else if (key == "dual_max_iter") cfg.dual_max_iter = static_cast<int>(parse_long(value));
  else if (key == "seed") cfg.rng_seed = static_cast<std::uint64_t>(parse_long(value));
  else throw std::invalid_argument("unknown config key '" + std::string(key) + "'");
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

SolverConfig load_config_file(const std::string& path, SolverConfig base) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    try {
      apply_config_entry(base, trim(view.substr(0, eq)), trim(view.substr(eq + 1)));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return base;
}

}  // namespace nmmg
