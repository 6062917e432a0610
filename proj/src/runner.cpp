#include "csqfplan/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "csqfplan/baselines.hpp"
#include "csqfplan/colgen.hpp"
#include "csqfplan/greedy.hpp"
#include "csqfplan/ipran.hpp"
#include "csqfplan/oracle.hpp"
#include "csqfplan/parallel.hpp"
#include "csqfplan/rng.hpp"
#include "csqfplan/validate.hpp"
#include "json.hpp"

namespace csqf {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<DemandId> demand_order(const Instance& inst,
                                   const std::string& spec) {
  std::vector<DemandId> order(inst.num_demands());
  std::iota(order.begin(), order.end(), 0);
  if (spec == "input") return order;
  if (spec.rfind("random:", 0) == 0) {
    const uint64_t seed = std::stoull(spec.substr(7));
    Rng rng(seed, "greedy-order");
    rng.shuffle(order);
    return order;
  }
  throw ModelError("unknown demand order: " + spec +
                   " (expected input or random:<seed>)");
}

void fill_acceptance(const Instance& inst, SolveResult& r) {
  int64_t total = 0;
  for (const Demand& d : inst.demands()) total += total_bandwidth(d);
  r.total_demand_du = total;
  r.objective_du = r.solution.objective;
  r.accepted_demands = r.solution.assignments.size();
  r.accepted_traffic_pct =
      total == 0 ? 100.0
                 : 100.0 * static_cast<double>(r.objective_du) /
                       static_cast<double>(total);
  if (r.upper_bound_du) {
    const double ub = *r.upper_bound_du;
    r.gap_pct = ub <= 0 ? 0.0
                        : 100.0 * (ub - static_cast<double>(r.objective_du)) /
                              ub;
  }
}

}  // namespace

SolveResult run_solve(const Instance& inst, const SolveOptions& options) {
  SolveResult result;
  const auto start = Clock::now();

  if (options.algorithm == "greedy") {
    const std::vector<DemandId> order = demand_order(inst, options.order);
    const auto greedy_start = Clock::now();
    result.solution =
        greedy_plan(inst, order, {options.k, options.epsilon});
    result.t_greedy_s = since(greedy_start);
  } else if (options.algorithm == "cg-rr") {
    const std::vector<DemandId> order = demand_order(inst, "input");
    const auto greedy_start = Clock::now();
    const PlanSolution seed =
        greedy_plan(inst, order, {options.k, options.epsilon});
    result.t_greedy_s = since(greedy_start);

    const MasterSolution master = column_generation(
        inst, {options.strengthen, options.max_cg_solves_per_demand},
        seed.assignments);
    result.t_master_s = master.master_seconds;
    result.t_pricing_s = master.pricing_seconds;
    result.upper_bound_du = master.objective;
    result.ub_proven = master.proven;
    result.cg_iterations = master.iterations;
    result.cg_columns = master.columns.size();

    const auto rounding_start = Clock::now();
    result.solution =
        randomized_rounding(inst, master, {options.rr_runs, options.seed});
    result.t_rounding_s = since(rounding_start);
  } else if (options.algorithm == "nocycleinfo") {
    const BaselineResult baseline = nocycleinfo_plan(
        inst, {options.strengthen, options.max_cg_solves_per_demand},
        {options.rr_runs, options.seed});
    result.solution = baseline.solution;
    result.upper_bound_du = baseline.upper_bound_du;
    result.ub_proven = baseline.proven;
    result.cg_iterations = baseline.cg_iterations;
    result.cg_columns = baseline.cg_columns;
    result.t_master_s = baseline.master_seconds;
    result.t_pricing_s = baseline.pricing_seconds;
  } else {
    throw ModelError("unknown algorithm: " + options.algorithm);
  }

  result.t_total_s = since(start);
  fill_acceptance(inst, result);
  return result;
}

std::string metrics_json(const Instance& inst, const SolveOptions& options,
                         const SolveResult& result, int indent) {
  nlohmann::json j;
  j["format_version"] = 1;
  j["instance"] = {{"nodes", inst.num_nodes()},
                   {"arcs", inst.num_arcs()},
                   {"demands", inst.num_demands()},
                   {"C", inst.cycles()},
                   {"R", inst.max_extra_shift()}};
  j["algorithm"] = options.algorithm;
  j["config"] = {{"order", options.order},
                 {"k", options.k},
                 {"epsilon", options.epsilon},
                 {"strengthen", options.strengthen},
                 {"rr_runs", options.rr_runs},
                 {"seed", options.seed},
                 {"max_cg_solves_per_demand", options.max_cg_solves_per_demand}};
  nlohmann::json res;
  res["objective_du"] = result.objective_du;
  res["total_demand_du"] = result.total_demand_du;
  res["accepted_demand_count"] = result.accepted_demands;
  res["accepted_traffic_pct"] = result.accepted_traffic_pct;
  if (result.upper_bound_du) {
    res["upper_bound_du"] = *result.upper_bound_du;
    res["ub_proven"] = result.ub_proven;
    res["gap_pct"] = *result.gap_pct;
  } else {
    res["upper_bound_du"] = nullptr;
    res["gap_pct"] = nullptr;
  }
  if (options.algorithm != "greedy") {
    res["cg_iterations"] = result.cg_iterations;
    res["cg_columns"] = result.cg_columns;
  }
  res["wall_time_s"] = {{"total", result.t_total_s},
                        {"greedy", result.t_greedy_s},
                        {"master", result.t_master_s},
                        {"pricing", result.t_pricing_s},
                        {"rounding", result.t_rounding_s}};
  j["results"] = std::move(res);
  return j.dump(indent);
}

namespace {

std::string format_double(double v) {
  std::ostringstream ss;
  ss.precision(6);
  ss << std::fixed << v;
  return ss.str();
}

CompareRow base_row(const CompareOptions& options, int demands, uint64_t seed,
                    int shifts) {
  CompareRow row;
  row.preset = options.preset;
  row.scenario = options.scenario;
  row.demands = demands;
  row.seed = seed;
  row.queue_shifts = shifts;
  return row;
}

CompareRow row_from_result(CompareRow row, const std::string& algorithm,
                           const std::string& strengthen,
                           const SolveResult& result) {
  row.algorithm = algorithm;
  row.strengthen = strengthen;
  row.objective_du = result.objective_du;
  row.total_du = result.total_demand_du;
  row.accepted_traffic_pct = result.accepted_traffic_pct;
  row.accepted_demands = result.accepted_demands;
  row.upper_bound_du = result.upper_bound_du;
  row.ub_proven = result.ub_proven;
  row.wall_time_s = result.t_total_s;
  row.cg_iterations = result.cg_iterations;
  row.cg_columns = result.cg_columns;
  return row;
}

}  // namespace

std::vector<CompareRow> run_compare(const CompareOptions& options) {
  struct Cell {
    int demands;
    uint64_t seed;
    int shifts;
  };
  std::vector<Cell> cells;
  for (const int demands : options.demand_counts)
    for (const uint64_t seed : options.seeds)
      for (const int shifts : options.queue_shifts)
        cells.push_back({demands, seed, shifts});

  const bool with_oracle =
      options.include_oracle || options.preset == "tiny";

  std::vector<std::vector<CompareRow>> cell_rows(cells.size());
  parallel_for(cells.size(), [&](size_t idx) {
    const Cell& cell = cells[idx];
    IpranParams params = ipran_preset(options.preset);
    apply_scenario(params, options.scenario);
    params.demand_count = cell.demands;
    params.seed = cell.seed;
    params.max_extra_shift = cell.shifts;
    const Instance inst = generate_instance(params);

    std::vector<CompareRow>& rows = cell_rows[idx];
    const CompareRow base =
        base_row(options, cell.demands, cell.seed, cell.shifts);

    SolveOptions greedy;
    greedy.algorithm = "greedy";
    greedy.k = options.k;
    greedy.epsilon = options.epsilon;
    rows.push_back(row_from_result(base, "greedy", "-",
                                   run_solve(inst, greedy)));

    for (const bool strengthen : {false, true}) {
      SolveOptions cg;
      cg.algorithm = "cg-rr";
      cg.k = options.k;
      cg.epsilon = options.epsilon;
      cg.strengthen = strengthen;
      cg.rr_runs = options.rr_runs;
      cg.seed = cell.seed;
      cg.max_cg_solves_per_demand = options.max_cg_solves_per_demand;
      rows.push_back(row_from_result(base, "cg-rr", strengthen ? "on" : "off",
                                     run_solve(inst, cg)));
    }

    SolveOptions baseline;
    baseline.algorithm = "nocycleinfo";
    baseline.rr_runs = options.rr_runs;
    baseline.seed = cell.seed;
    baseline.max_cg_solves_per_demand = options.max_cg_solves_per_demand;
    rows.push_back(row_from_result(base, "nocycleinfo", "-",
                                   run_solve(inst, baseline)));

    if (with_oracle) {
      OracleLimits limits;
      limits.max_spaths_per_demand = options.oracle_max_spaths;
      const auto start = Clock::now();
      const OracleResult oracle = brute_force_optimum(inst, limits);
      SolveResult as_result;
      as_result.solution = oracle.solution;
      as_result.t_total_s = since(start);
      fill_acceptance(inst, as_result);
      rows.push_back(row_from_result(base, "oracle", "-", as_result));
    }
  });

  std::vector<CompareRow> rows;
  for (auto& cell : cell_rows)
    rows.insert(rows.end(), cell.begin(), cell.end());

  // Gap against the best (lowest) proven-or-not upper bound of the same
  // instance cell; the bound is valid for every algorithm's integer plan.
  std::map<std::tuple<int, uint64_t, int>, double> best_ub;
  for (const CompareRow& row : rows) {
    if (row.algorithm != "cg-rr" || !row.upper_bound_du) continue;
    const auto key = std::tuple(row.demands, row.seed, row.queue_shifts);
    const auto it = best_ub.find(key);
    if (it == best_ub.end() || *row.upper_bound_du < it->second)
      best_ub[key] = *row.upper_bound_du;
  }
  for (CompareRow& row : rows) {
    const auto it =
        best_ub.find(std::tuple(row.demands, row.seed, row.queue_shifts));
    if (it == best_ub.end()) continue;
    const double ub = it->second;
    if (ub > 0)
      row.gap_to_best_ub_pct =
          100.0 * (ub - static_cast<double>(row.objective_du)) / ub;
  }
  return rows;
}

std::string compare_csv_header() {
  return "preset,scenario,demands,seed,queue_shifts,strengthen,algorithm,"
         "objective_du,total_du,accepted_traffic_pct,accepted_demands,"
         "upper_bound_du,ub_proven,gap_to_best_ub_pct,wall_time_s,"
         "cg_iterations,cg_columns";
}

std::string to_csv_row(const CompareRow& row) {
  std::ostringstream ss;
  ss << row.preset << ',' << row.scenario << ',' << row.demands << ','
     << row.seed << ',' << row.queue_shifts << ',' << row.strengthen << ','
     << row.algorithm << ',' << row.objective_du << ',' << row.total_du << ','
     << format_double(row.accepted_traffic_pct) << ',' << row.accepted_demands
     << ',';
  if (row.upper_bound_du) ss << format_double(*row.upper_bound_du);
  ss << ',' << (row.upper_bound_du ? (row.ub_proven ? "true" : "false") : "")
     << ',';
  if (row.gap_to_best_ub_pct) ss << format_double(*row.gap_to_best_ub_pct);
  ss << ',' << format_double(row.wall_time_s) << ',' << row.cg_iterations
     << ',' << row.cg_columns;
  return ss.str();
}

std::string compare_csv(const std::vector<CompareRow>& rows) {
  std::ostringstream ss;
  ss << compare_csv_header() << '\n';
  for (const CompareRow& row : rows) ss << to_csv_row(row) << '\n';
  return ss.str();
}

std::string report_csv(const std::string& compare_csv_text) {
  std::istringstream in(compare_csv_text);
  std::string line;
  if (!std::getline(in, line))
    throw StructuralError("empty compare CSV");
  if (line != compare_csv_header())
    throw StructuralError("unrecognized compare CSV header");

  struct Key {
    std::string preset, scenario, strengthen, algorithm;
    int demands, shifts;
    bool operator<(const Key& o) const {
      return std::tie(preset, scenario, demands, shifts, strengthen,
                      algorithm) < std::tie(o.preset, o.scenario, o.demands,
                                            o.shifts, o.strengthen,
                                            o.algorithm);
    }
  };
  struct Agg {
    int seeds = 0;
    double acc_sum = 0, acc_min = 1e18, acc_max = -1e18;
    double gap_sum = 0;
    int gap_count = 0;
    double wall_sum = 0;
  };
  std::map<Key, Agg> groups;

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) f.push_back(field);
    if (f.size() < 17)
      throw StructuralError("malformed compare CSV row: " + line);
    Key key{f[0], f[1], f[5], f[6], std::stoi(f[2]), std::stoi(f[4])};
    Agg& agg = groups[key];
    const double acc = std::stod(f[9]);
    agg.seeds += 1;
    agg.acc_sum += acc;
    agg.acc_min = std::min(agg.acc_min, acc);
    agg.acc_max = std::max(agg.acc_max, acc);
    if (!f[13].empty()) {
      agg.gap_sum += std::stod(f[13]);
      agg.gap_count += 1;
    }
    agg.wall_sum += std::stod(f[14]);
  }

  std::ostringstream out;
  out << "preset,scenario,demands,queue_shifts,strengthen,algorithm,seeds,"
         "mean_accepted_traffic_pct,min_accepted_traffic_pct,"
         "max_accepted_traffic_pct,mean_gap_to_best_ub_pct,mean_wall_time_s\n";
  for (const auto& [key, agg] : groups) {
    out << key.preset << ',' << key.scenario << ',' << key.demands << ','
        << key.shifts << ',' << key.strengthen << ',' << key.algorithm << ','
        << agg.seeds << ',' << format_double(agg.acc_sum / agg.seeds) << ','
        << format_double(agg.acc_min) << ',' << format_double(agg.acc_max)
        << ',';
    if (agg.gap_count > 0) out << format_double(agg.gap_sum / agg.gap_count);
    out << ',' << format_double(agg.wall_sum / agg.seeds) << '\n';
  }
  return out.str();
}

}  // namespace csqf
