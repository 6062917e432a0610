#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "csqfplan/model.hpp"

namespace csqf {

// Orchestration shared by the CLI and the test suites: run one algorithm on
// one instance and collect machine-readable metrics, or sweep a whole
// algorithm x queue-count x strengthening matrix.

struct SolveOptions {
  std::string algorithm = "greedy";  // greedy | cg-rr | nocycleinfo
  // greedy
  std::string order = "input";  // input | random:<seed>
  int k = 0;
  double epsilon = 1e-6;
  // cg-rr / nocycleinfo
  bool strengthen = false;
  int rr_runs = 50;
  uint64_t seed = 0;
  int max_cg_solves_per_demand = 10;
};

struct SolveResult {
  PlanSolution solution;
  int64_t objective_du = 0;
  int64_t total_demand_du = 0;
  size_t accepted_demands = 0;
  double accepted_traffic_pct = 0;

  std::optional<double> upper_bound_du;  // relaxation optimum, when computed
  bool ub_proven = false;
  std::optional<double> gap_pct;  // (ub - obj) / ub * 100

  int cg_iterations = 0;
  size_t cg_columns = 0;

  double t_total_s = 0;
  double t_greedy_s = 0;
  double t_master_s = 0;
  double t_pricing_s = 0;
  double t_rounding_s = 0;
};

SolveResult run_solve(const Instance& inst, const SolveOptions& options);

// Self-describing metrics record (config echo, seeds, per-phase wall times).
std::string metrics_json(const Instance& inst, const SolveOptions& options,
                         const SolveResult& result, int indent = 2);

struct CompareOptions {
  std::string preset = "desk";
  std::string scenario = "sc1";
  std::vector<int> demand_counts = {160};
  std::vector<uint64_t> seeds = {1};
  std::vector<int> queue_shifts = {0, 1};  // R axis (CQF=0, multi-queue=1)
  int rr_runs = 50;
  int k = 0;
  double epsilon = 1e-6;
  bool include_oracle = false;  // forced on for the tiny preset
  size_t oracle_max_spaths = 64;
  int max_cg_solves_per_demand = 10;
};

struct CompareRow {
  std::string preset;
  std::string scenario;
  int demands = 0;
  uint64_t seed = 0;
  int queue_shifts = 0;
  std::string strengthen;  // "on" | "off" | "-"
  std::string algorithm;
  int64_t objective_du = 0;
  int64_t total_du = 0;
  double accepted_traffic_pct = 0;
  size_t accepted_demands = 0;
  std::optional<double> upper_bound_du;
  bool ub_proven = false;
  std::optional<double> gap_to_best_ub_pct;
  double wall_time_s = 0;
  int cg_iterations = 0;
  size_t cg_columns = 0;
};

std::vector<CompareRow> run_compare(const CompareOptions& options);

std::string compare_csv_header();
std::string to_csv_row(const CompareRow& row);
std::string compare_csv(const std::vector<CompareRow>& rows);

// Aggregates a compare CSV over seeds: one row per
// (preset, scenario, demands, queues, strengthen, algorithm) with mean/min/max
// acceptance, mean gap and mean wall time.
std::string report_csv(const std::string& compare_csv_text);

}  // namespace csqf
