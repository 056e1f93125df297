#pragma once

#include "nmmg/core.hpp"
#include "nmmg/multistart.hpp"

#include <nlohmann/json.hpp>

#include <iosfwd>

namespace nmmg {

using Json = nlohmann::ordered_json;

/// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double v);

/// Strict inverse of format_double; throws on trailing garbage.
double parse_double(std::string_view s);

// ---- per-run trace -------------------------------------------------------
// CSV columns: k,F_0..F_{m-1},v_norm,psi_d,alpha,trials (see SCHEMA.md).

void write_trace_csv(std::ostream& os, const RunResult& r);
std::string trace_csv_string(const RunResult& r);

struct TraceRow {
  long k = 0;
  std::vector<double> F;
  double v_norm = 0.0;
  double psi_d = 0.0;
  double alpha = 0.0;
  long trials = 0;
};
std::vector<TraceRow> parse_trace_csv(std::istream& is);

Json run_to_json(const std::string& problem_id, const SolverConfig& cfg, const RunResult& r);

/// The summary slice of a run, as written to and read back from JSON.
struct RunSummaryView {
  std::string problem;
  std::string algorithm;
  std::string stop_reason;
  long iterations = 0;
  long f_evals = 0;
  long j_evals = 0;
  long dual_solves = 0;
  double final_v_norm = 0.0;
  std::vector<double> final_x;
  std::vector<double> final_F;

  bool operator==(const RunSummaryView&) const = default;
};

RunSummaryView make_summary_view(const std::string& problem_id, const SolverConfig& cfg,
                                 const RunResult& r);
RunSummaryView summary_from_json(const Json& j);

// ---- multistart front ----------------------------------------------------
// CSV columns: start,F_0..F_{m-1},x_0..x_{n-1}; nondominated rows only,
// ordered by start index.

void write_front_csv(std::ostream& os, const FrontResult& front);

struct FrontRow {
  int start = 0;
  std::vector<double> F;
  std::vector<double> x;

  bool operator==(const FrontRow&) const = default;
};
std::vector<FrontRow> parse_front_csv(std::istream& is);

Json front_stats_json(const FrontResult& front);

// ---- config files --------------------------------------------------------
// Plain key=value lines; '#' starts a comment; keys listed in SCHEMA.md.

void apply_config_entry(SolverConfig& cfg, std::string_view key, std::string_view value);
SolverConfig load_config_file(const std::string& path, SolverConfig base = {});

}  // namespace nmmg
