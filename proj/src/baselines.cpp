#include "csqfplan/baselines.hpp"

#include <numeric>

#include "csqfplan/greedy.hpp"

namespace csqf {

Instance worst_case_reservation_instance(const Instance& inst) {
  GlobalParams params = inst.params();
  params.max_extra_shift = 0;
  std::vector<Demand> demands = inst.demands();
  for (Demand& d : demands) {
    const int64_t bw = total_bandwidth(d);
    d.pattern.assign(inst.cycles(), bw);
  }
  return Instance(params, inst.node_names(), inst.arcs(), std::move(demands));
}

BaselineResult nocycleinfo_plan(const Instance& inst, const CgConfig& cg,
                                const RoundingConfig& rounding) {
  const Instance reserved = worst_case_reservation_instance(inst);

  std::vector<DemandId> order(reserved.num_demands());
  std::iota(order.begin(), order.end(), 0);
  const PlanSolution seed = greedy_plan(reserved, order, {});

  const MasterSolution master =
      column_generation(reserved, cg, seed.assignments);
  PlanSolution reserved_plan = randomized_rounding(reserved, master, rounding);

  BaselineResult result;
  // Paths carry arc indices and all-zero shifts, both valid verbatim in the
  // original instance; only the objective is restated in original units.
  result.solution.assignments = std::move(reserved_plan.assignments);
  result.solution.objective = 0;
  for (const SPath& p : result.solution.assignments)
    result.solution.objective += total_bandwidth(inst.demand(p.demand));

  result.upper_bound_du = master.objective / inst.cycles();
  result.proven = master.proven;
  result.cg_iterations = master.iterations;
  result.cg_columns = master.columns.size();
  result.master_seconds = master.master_seconds;
  result.pricing_seconds = master.pricing_seconds;
  return result;
}

}  // namespace csqf
