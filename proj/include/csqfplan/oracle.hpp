#pragma once

#include <cstdint>

#include "csqfplan/model.hpp"

namespace csqf {

// Hard input bounds the exact search refuses to exceed. The joint
// routing-and-scheduling problem is strongly NP-hard; enumeration plus
// branch-and-bound stays practical only on toy instances.
struct OracleLimits {
  size_t max_nodes = 10;
  size_t max_demands = 6;
  int max_cycles = 4;
  int max_extra_shift = 1;
  size_t max_spaths_per_demand = 20;
};

struct OracleResult {
  PlanSolution solution;   // provably optimal, objective filled in
  uint64_t explored = 0;   // branch-and-bound nodes visited
  size_t spath_count = 0;  // total enumerated candidate s-paths
};

// Exhaustive optimum: enumerates every feasible s-path per demand with the
// same walker the pricing step uses (dual weights zero), then runs a
// deterministic branch-and-bound over assignments including rejection, with
// the remaining-bandwidth bound for pruning. Throws LimitError when the
// instance exceeds `limits`.
OracleResult brute_force_optimum(const Instance& inst,
                                 const OracleLimits& limits = {});

}  // namespace csqf
