#pragma once

#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "csqfplan/model.hpp"

namespace csqf {

// LP duals of the restricted master: one value per demand (uniqueness rows)
// and one per (arc, cycle) capacity row. Rows that were never materialized
// carry 0. Values are clamped non-negative at extraction.
struct DualValues {
  std::vector<double> per_demand;                // lambda, size |D|
  std::vector<double> per_arc_cycle;             // mu, size |A| * C, a*C + c

  double mu(ArcId a, int cycle, int C) const {
    return per_arc_cycle[static_cast<size_t>(a) * C + cycle];
  }
};

// Shared helper caches for path search: per-destination shortest residual
// delay (reverse Dijkstra over arc delays, zero-capacity arcs excluded).
// dist_to() is not safe for concurrent first use; call warm() with all
// targets before fanning out.
class PricingContext {
 public:
  static constexpr int kUnreachable = 1 << 29;

  explicit PricingContext(const Instance& inst) : inst_(&inst) {}

  const std::vector<int>& dist_to(NodeId target);
  void warm(std::span<const NodeId> targets);

 private:
  const Instance* inst_;
  std::unordered_map<NodeId, std::vector<int>> cache_;
};

// Weight of traversing arc a when leaving its tail `offset` cycles (mod C)
// after the demand's emission reference: the dual price of the capacity the
// demand would consume on a over one hypercycle.
double arc_weight(const Instance& inst, const Demand& d,
                  const DualValues& duals, ArcId a, int offset);

// Total dual weight of an s-path (sum of arc_weight along it).
double spath_weight(const Instance& inst, const DualValues& duals,
                    const SPath& p);

// Searches for an s-path whose dual weight is strictly below
// bw^d - lambda_d (within kSeparationTol) and whose delay meets the demand
// deadline. Depth-first search on the implicit cycle-expanded graph with
// iterative deadline deepening and label dominance; the dominance rule keeps
// the search exact: returns nullopt only when no separating s-path exists.
// The returned path is separating but not necessarily minimum-weight.
inline constexpr double kSeparationTol = 1e-9;

std::optional<SPath> price_demand(const Instance& inst, DemandId d,
                                  const DualValues& duals,
                                  PricingContext& ctx);

// Exhaustively enumerates every deadline-feasible s-path of a demand (all
// simple routing paths crossed with all shift vectors), in deterministic
// order. Throws LimitError instead of truncating when the count exceeds
// max_paths. This walker defines "feasible s-path" for the exact oracle and
// for dominance-free cross-checks in tests.
std::vector<SPath> enumerate_spaths(const Instance& inst, DemandId d,
                                    size_t max_paths, PricingContext& ctx);

}  // namespace csqf
