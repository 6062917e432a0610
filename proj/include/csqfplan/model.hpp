#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace csqf {

// Contract violations in model arithmetic (unknown arc on a path, cycle index
// out of range, ...).
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed cross-references or shapes in input data. Distinct from
// infeasibility: a structurally broken solution file raises this, a merely
// overloaded one yields an infeasible ValidationReport.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an exact/exhaustive routine refuses an oversized input instead
// of silently truncating.
class LimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using NodeId = int32_t;
using ArcId = int32_t;
using DemandId = int32_t;

// Network-wide cycle configuration. All delays, deadlines and shifts are kept
// in integer cycles; the instance generator performs the only time-unit
// conversion. cycle_duration_us and du_size_bytes are carried along for
// reporting and conversions, the solvers never look at them.
struct GlobalParams {
  int hypercycle_len = 1;        // C: cycles per hypercycle, >= 1
  int max_extra_shift = 0;       // R: max deliberate per-node delay, >= 0
  double cycle_duration_us = 10.0;
  int du_size_bytes = 500;

  bool operator==(const GlobalParams&) const = default;
};

struct Arc {
  NodeId src = -1;
  NodeId dst = -1;
  int delay_cycles = 1;      // includes propagation + head-node processing; >= 1
  int64_t capacity_du = 0;   // per-cycle budget in data units

  bool operator==(const Arc&) const = default;
};

// A time-triggered flow: a per-cycle emission pattern that repeats every
// hypercycle, plus an end-to-end deadline.
struct Demand {
  int64_t id = 0;                 // external id, unique within an instance
  NodeId src = -1;
  NodeId dst = -1;
  std::vector<int64_t> pattern;   // length C, du emitted in each cycle
  int deadline_cycles = 0;
  int64_t packet_size_du = 1;     // divides every nonzero pattern entry

  bool operator==(const Demand&) const = default;
};

// A scheduled path: a simple routing path plus one cycle shift per
// intermediate node. The shift at node k delays forwarding by whole cycles
// (queue selection); shifts.size() == arcs.size() - 1.
struct SPath {
  DemandId demand = -1;
  std::vector<ArcId> arcs;
  std::vector<int> shifts;

  bool operator==(const SPath&) const = default;
};

// Immutable problem instance: graph, cycle parameters and demand set.
class Instance {
 public:
  Instance(GlobalParams params, std::vector<std::string> node_names,
           std::vector<Arc> arcs, std::vector<Demand> demands);

  const GlobalParams& params() const { return params_; }
  int cycles() const { return params_.hypercycle_len; }
  int max_extra_shift() const { return params_.max_extra_shift; }

  size_t num_nodes() const { return node_names_.size(); }
  size_t num_arcs() const { return arcs_.size(); }
  size_t num_demands() const { return demands_.size(); }

  const std::vector<std::string>& node_names() const { return node_names_; }
  const std::string& node_name(NodeId v) const { return node_names_[v]; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const Arc& arc(ArcId a) const { return arcs_[a]; }
  const std::vector<Demand>& demands() const { return demands_; }
  const Demand& demand(DemandId d) const { return demands_[d]; }

  // -1 when absent.
  NodeId find_node(std::string_view name) const;
  ArcId find_arc(NodeId src, NodeId dst) const;
  DemandId find_demand(int64_t external_id) const;

  std::span<const ArcId> out_arcs(NodeId v) const;
  std::span<const ArcId> in_arcs(NodeId v) const;

 private:
  GlobalParams params_;
  std::vector<std::string> node_names_;
  std::vector<Arc> arcs_;
  std::vector<Demand> demands_;

  std::unordered_map<std::string, NodeId> node_index_;
  std::unordered_map<int64_t, DemandId> demand_index_;
  std::unordered_map<int64_t, ArcId> arc_index_;  // key src * num_nodes + dst
  std::vector<std::vector<ArcId>> out_arcs_;
  std::vector<std::vector<ArcId>> in_arcs_;
};

// Per-demand path assignments plus the accepted-bandwidth objective.
// Assignments are an ordered list so that a malformed input (two paths for
// one demand) remains representable and reportable by the validator.
struct PlanSolution {
  std::vector<SPath> assignments;
  int64_t objective = 0;

  const SPath* assignment_for(DemandId d) const {
    for (const SPath& p : assignments)
      if (p.demand == d) return &p;
    return nullptr;
  }

  bool operator==(const PlanSolution&) const = default;
};

// Total du emitted by d over one hypercycle.
int64_t total_bandwidth(const Demand& d);

// Cumulative shift (cycles) at the k-th node of p, 1-based; 0 at the source.
// Counts the arc delays and deliberate shifts of everything before node k.
int node_shift(const Instance& inst, const SPath& p, size_t k);

// End-to-end delay of p in cycles, including all extra shifts.
int path_delay(const Instance& inst, const SPath& p);

// du consumed on arc a during cycle c when p carries its demand. a must lie
// on p; 0 <= c < C.
int64_t required_bandwidth(const Instance& inst, const SPath& p, ArcId a,
                           int cycle);

// Structural sanity of an SPath against its instance: arc chain contiguity,
// endpoint match, simplicity, shift vector shape and bounds. Returns an
// explanation for the first problem found, nullopt when well-formed. Shape
// errors (sizes, unknown ids) are the caller's to reject before this.
std::optional<std::string> spath_defect(const Instance& inst, const SPath& p);

// Objective restated from the assignment list: sum of bw^d over assignments.
int64_t solution_bandwidth(const Instance& inst, const PlanSolution& sol);

}  // namespace csqf
