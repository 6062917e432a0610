#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "csqfplan/lp.hpp"
#include "csqfplan/model.hpp"
#include "csqfplan/pricing.hpp"

namespace csqf {

// Tightened capacity rows: every per-cycle requirement is a multiple of the
// packet sizes, so dividing a capacity row by the global gcd of packet sizes
// and flooring the right-hand side cuts fractional headroom without excluding
// any integer solution. The divisor is fixed across the whole run (a per-arc
// gcd over generated paths would drift as columns arrive and invalidate
// earlier duals).
struct Strengthening {
  int64_t divisor = 1;
  std::vector<int64_t> rhs;  // floor(capacity / divisor) per arc
};

Strengthening strengthened_coefficients(const Instance& inst);

// Restricted master LP over the generated columns: one uniqueness row per
// demand (rhs 1), capacity rows materialized lazily the first time a column
// touches the (arc, cycle) pair. Lazy rows are exact here because
// coefficients are non-negative: an untouched row can never be violated and
// its dual is zero.
class RestrictedMaster {
 public:
  RestrictedMaster(const Instance& inst, bool strengthen);

  // Adds the column of p; returns its index. An identical existing column is
  // reused instead of duplicated.
  int add_column(const SPath& p);

  void solve() { lp_.solve(); }

  double objective() const { return lp_.objective(); }
  const std::vector<SPath>& columns() const { return columns_; }
  std::vector<double> primal() const { return lp_.primal(); }

  // Master duals mapped back to demand / (arc, cycle) space, clamped >= 0.
  DualValues duals() const;
  // Duals prepared for path pricing: capacity duals divided by the
  // strengthening divisor so that arc weights price the untightened
  // coefficients.
  DualValues pricing_duals() const;

  bool strengthened() const { return strengthen_; }
  const Strengthening& strengthening() const { return strengthening_; }
  const lp::Simplex& engine() const { return lp_; }

 private:
  int capacity_row(ArcId a, int cycle);

  const Instance* inst_;
  bool strengthen_;
  Strengthening strengthening_;
  lp::Simplex lp_;
  std::vector<int> demand_row_;               // uniqueness row per demand
  std::unordered_map<int64_t, int> cap_row_;  // a * C + c -> row
  std::vector<SPath> columns_;
  std::unordered_map<size_t, std::vector<int>> column_lookup_;  // hash -> idxs
};

struct CgConfig {
  bool strengthen = false;
  // Master-solve cap: this factor times the demand count.
  int max_solves_per_demand = 10;
};

// Linear-relaxation optimum of the joint routing/scheduling problem by column
// generation. When `proven`, objective is the exact relaxation value and thus
// a valid upper bound on any integer plan; otherwise the solve hit its
// iteration cap and objective is only the best restricted value found.
struct MasterSolution {
  std::vector<SPath> columns;
  std::vector<double> y;
  double objective = 0;
  DualValues duals;
  bool proven = false;
  int iterations = 0;                  // master solves
  std::vector<double> objective_trace;
  double master_seconds = 0;
  double pricing_seconds = 0;
  int64_t lp_pivots = 0;
};

MasterSolution column_generation(const Instance& inst, const CgConfig& config,
                                 const std::vector<SPath>& seed_columns);

struct RoundingConfig {
  int runs = 50;
  uint64_t seed = 0;
};

// Draws one s-path per demand with probability proportional to the surviving
// fractional values, keeping residually feasible picks; demands are visited
// in random order and the best solution across runs wins (lowest run index on
// ties). The result always validates.
PlanSolution randomized_rounding(const Instance& inst,
                                 const MasterSolution& master,
                                 const RoundingConfig& config);

}  // namespace csqf
