#pragma once

#include <string>
#include <vector>

#include "csqfplan/model.hpp"

namespace csqf {

// Per-arc, per-cycle du usage derived from a set of assigned paths.
class LoadMatrix {
 public:
  LoadMatrix(size_t num_arcs, int cycles)
      : cycles_(cycles), load_(num_arcs * cycles, 0) {}

  int64_t at(ArcId a, int cycle) const { return load_[index(a, cycle)]; }
  int cycles() const { return cycles_; }

  // Adds (sign=+1) or retracts (sign=-1) the traffic p places on its arcs.
  void apply(const Instance& inst, const SPath& p, int sign);

  // Peak load over the hypercycle on one arc.
  int64_t peak(ArcId a) const;

  bool operator==(const LoadMatrix&) const = default;

 private:
  size_t index(ArcId a, int cycle) const {
    return static_cast<size_t>(a) * cycles_ + cycle;
  }

  int cycles_;
  std::vector<int64_t> load_;
};

enum class ViolationKind {
  kUniqueness,   // more than one path assigned to a demand
  kCapacity,     // arc-cycle load exceeds capacity
  kDeadline,     // path delay exceeds the demand deadline
  kShiftBound,   // a shift outside [0, R]
  kConnectivity  // broken arc chain, wrong endpoints, revisited node
};

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  int64_t demand_id = -1;  // external demand id, -1 when not demand-scoped
  ArcId arc = -1;
  int cycle = -1;
  int64_t magnitude = 0;   // du overload, cycles over deadline, ...
  std::string detail;
};

struct ValidationReport {
  bool feasible = false;
  std::vector<Violation> violations;

  std::string to_json(int indent = 2) const;
};

// Sums required bandwidth over all structurally sound assignments. Paths with
// broken chains are skipped (they are reported by validate instead); unknown
// arc/demand references raise StructuralError.
LoadMatrix load_matrix(const Instance& inst, const PlanSolution& sol);

// Checks a solution against every model constraint: per-demand uniqueness,
// arc-cycle capacities, deadlines, shift bounds and path connectivity.
// feasible iff the violation list is empty.
ValidationReport validate(const Instance& inst, const PlanSolution& sol);

// True when p can be added on top of `load` without exceeding any arc-cycle
// capacity. Shared by the oracle, the rounding step and the greedy planner so
// a single notion of residual feasibility exists.
bool fits_residual(const Instance& inst, const LoadMatrix& load,
                   const SPath& p);

}  // namespace csqf
