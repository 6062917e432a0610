#pragma once

#include <optional>
#include <span>
#include <vector>

#include "csqfplan/model.hpp"
#include "csqfplan/validate.hpp"

namespace csqf {

struct GreedyConfig {
  // Cap on candidates per demand; 0 keeps the natural yield (forced-arc
  // route families crossed with the shift options at the first hop).
  int k = 0;
  // Availability floor inside the load-balance metric.
  double epsilon = 1e-6;
};

// One-by-one admission: capacity/deadline feasibility is maintained as an
// invariant, every mutation happens through admit. Single writer; candidate
// scoring is pure.
class AdmissionState {
 public:
  explicit AdmissionState(const Instance& inst);

  const Instance& instance() const { return *inst_; }
  const LoadMatrix& load() const { return load_; }
  const std::vector<std::optional<SPath>>& assignments() const {
    return assignments_;
  }

  // Fraction of the arc's per-cycle budget untouched in its busiest cycle;
  // zero-capacity arcs count as fully used.
  double availability(ArcId a) const;

  // Proportional-fairness balance score: sum over arcs of
  // log(availability + epsilon). Higher is more balanced.
  double lb_metric(double epsilon) const;

  // Diversified residual-feasible s-paths for d: routes are forced through
  // each branching arc near the endpoints (shortest delay elsewhere), with
  // extra shifts enumerated at the first intermediate node only. Falls back
  // to successive arc-penalization diversification when the topology offers
  // no usable branching. Empty result means d cannot be admitted now.
  std::vector<SPath> generate_candidates(DemandId d,
                                         const GreedyConfig& config) const;

  // Assigns the candidate that maximizes the balance metric after the
  // hypothetical addition (ties: shortest path, least total shift, lowest
  // arc ids). Returns the chosen path, or nullopt leaving the state
  // untouched.
  std::optional<SPath> admit(DemandId d, const GreedyConfig& config);

  PlanSolution to_solution() const;

 private:
  const Instance* inst_;
  LoadMatrix load_;
  std::vector<std::optional<SPath>> assignments_;
};

// Folds admit over the given demand order (a permutation of all demand
// indices). The result always validates.
PlanSolution greedy_plan(const Instance& inst,
                         std::span<const DemandId> order,
                         const GreedyConfig& config = {});

}  // namespace csqf
