#pragma once

#include "csqfplan/colgen.hpp"
#include "csqfplan/model.hpp"

namespace csqf {

// Cycle-agnostic worst-case planner: without the per-cycle emission pattern,
// a demand must be provisioned for its whole hypercycle volume in every cycle
// of every arc it crosses. Implemented as a demand transformation (constant
// pattern, no extra shifts) over the same column-generation + rounding
// machinery. Any plan feasible under this reservation is feasible for the
// cycle-aware model.
struct BaselineResult {
  PlanSolution solution;    // expressed against the original instance
  double upper_bound_du;    // original units (per hypercycle)
  bool proven = false;
  int cg_iterations = 0;
  size_t cg_columns = 0;
  double master_seconds = 0;
  double pricing_seconds = 0;
};

// The transformed instance itself (exposed for tests): every demand requires
// its total bandwidth in each cycle, extra shifts disabled.
Instance worst_case_reservation_instance(const Instance& inst);

BaselineResult nocycleinfo_plan(const Instance& inst, const CgConfig& cg,
                                const RoundingConfig& rounding);

}  // namespace csqf
