#include "csqfplan/model.hpp"

#include <algorithm>
#include <numeric>

namespace csqf {

namespace {

int64_t arc_key(NodeId src, NodeId dst, size_t num_nodes) {
  return static_cast<int64_t>(src) * static_cast<int64_t>(num_nodes) + dst;
}

}  // namespace

Instance::Instance(GlobalParams params, std::vector<std::string> node_names,
                   std::vector<Arc> arcs, std::vector<Demand> demands)
    : params_(params),
      node_names_(std::move(node_names)),
      arcs_(std::move(arcs)),
      demands_(std::move(demands)) {
  if (params_.hypercycle_len < 1)
    throw ModelError("hypercycle length must be >= 1");
  if (params_.max_extra_shift < 0)
    throw ModelError("max extra shift must be >= 0");

  node_index_.reserve(node_names_.size());
  for (size_t v = 0; v < node_names_.size(); ++v) {
    if (node_names_[v].empty()) throw StructuralError("empty node name");
    auto [it, inserted] =
        node_index_.emplace(node_names_[v], static_cast<NodeId>(v));
    if (!inserted)
      throw StructuralError("duplicate node name: " + node_names_[v]);
  }

  out_arcs_.resize(node_names_.size());
  in_arcs_.resize(node_names_.size());
  arc_index_.reserve(arcs_.size());
  for (size_t a = 0; a < arcs_.size(); ++a) {
    const Arc& arc = arcs_[a];
    if (arc.src < 0 || static_cast<size_t>(arc.src) >= node_names_.size() ||
        arc.dst < 0 || static_cast<size_t>(arc.dst) >= node_names_.size())
      throw StructuralError("arc endpoint out of range");
    if (arc.src == arc.dst) throw StructuralError("self-loop arc");
    if (arc.delay_cycles < 1)
      throw ModelError("arc delay must be >= 1 cycle");
    if (arc.capacity_du < 0) throw ModelError("arc capacity must be >= 0");
    auto [it, inserted] = arc_index_.emplace(
        arc_key(arc.src, arc.dst, node_names_.size()), static_cast<ArcId>(a));
    if (!inserted)
      throw StructuralError("duplicate arc " + node_names_[arc.src] + " -> " +
                            node_names_[arc.dst]);
    out_arcs_[arc.src].push_back(static_cast<ArcId>(a));
    in_arcs_[arc.dst].push_back(static_cast<ArcId>(a));
  }

  demand_index_.reserve(demands_.size());
  for (size_t d = 0; d < demands_.size(); ++d) {
    const Demand& dem = demands_[d];
    if (dem.src < 0 || static_cast<size_t>(dem.src) >= node_names_.size() ||
        dem.dst < 0 || static_cast<size_t>(dem.dst) >= node_names_.size())
      throw StructuralError("demand endpoint out of range");
    if (dem.src == dem.dst)
      throw ModelError("demand source equals destination");
    if (dem.pattern.size() != static_cast<size_t>(params_.hypercycle_len))
      throw ModelError("demand pattern length must equal hypercycle length");
    if (dem.packet_size_du < 1) throw ModelError("packet size must be >= 1");
    int64_t total = 0;
    for (const int64_t bw : dem.pattern) {
      if (bw < 0) throw ModelError("negative pattern entry");
      if (bw % dem.packet_size_du != 0)
        throw ModelError("pattern entry not a multiple of packet size");
      total += bw;
    }
    if (total == 0) throw ModelError("demand pattern is all-zero");
    if (dem.deadline_cycles < 0) throw ModelError("negative deadline");
    auto [it, inserted] = demand_index_.emplace(dem.id, static_cast<DemandId>(d));
    if (!inserted)
      throw StructuralError("duplicate demand id " + std::to_string(dem.id));
  }
}

NodeId Instance::find_node(std::string_view name) const {
  const auto it = node_index_.find(std::string(name));
  return it == node_index_.end() ? -1 : it->second;
}

ArcId Instance::find_arc(NodeId src, NodeId dst) const {
  if (src < 0 || dst < 0) return -1;
  const auto it = arc_index_.find(arc_key(src, dst, node_names_.size()));
  return it == arc_index_.end() ? -1 : it->second;
}

DemandId Instance::find_demand(int64_t external_id) const {
  const auto it = demand_index_.find(external_id);
  return it == demand_index_.end() ? -1 : it->second;
}

std::span<const ArcId> Instance::out_arcs(NodeId v) const {
  return out_arcs_[v];
}

std::span<const ArcId> Instance::in_arcs(NodeId v) const { return in_arcs_[v]; }

int64_t total_bandwidth(const Demand& d) {
  return std::accumulate(d.pattern.begin(), d.pattern.end(), int64_t{0});
}

int node_shift(const Instance& inst, const SPath& p, size_t k) {
  if (k < 1 || k > p.arcs.size())
    throw ModelError("node index out of range on path");
  int shift = 0;
  for (size_t i = 0; i + 1 < k; ++i) {
    const ArcId a = p.arcs[i];
    if (a < 0 || static_cast<size_t>(a) >= inst.num_arcs())
      throw ModelError("unknown arc on path");
    shift += inst.arc(a).delay_cycles;
    if (i < p.shifts.size()) shift += p.shifts[i];
  }
  return shift;
}

int path_delay(const Instance& inst, const SPath& p) {
  if (p.arcs.empty()) throw ModelError("empty path");
  const size_t last = p.arcs.size();
  const ArcId a = p.arcs[last - 1];
  if (a < 0 || static_cast<size_t>(a) >= inst.num_arcs())
    throw ModelError("unknown arc on path");
  return node_shift(inst, p, last) + inst.arc(a).delay_cycles;
}

int64_t required_bandwidth(const Instance& inst, const SPath& p, ArcId a,
                           int cycle) {
  const int C = inst.cycles();
  if (cycle < 0 || cycle >= C) throw ModelError("cycle index out of range");
  const auto it = std::find(p.arcs.begin(), p.arcs.end(), a);
  if (it == p.arcs.end()) throw ModelError("arc not on path");
  const size_t k = static_cast<size_t>(it - p.arcs.begin()) + 1;
  const Demand& dem = inst.demand(p.demand);
  const int offset = node_shift(inst, p, k) % C;
  return dem.pattern[(cycle + offset) % C];
}

std::optional<std::string> spath_defect(const Instance& inst, const SPath& p) {
  if (p.demand < 0 || static_cast<size_t>(p.demand) >= inst.num_demands())
    throw StructuralError("path references unknown demand");
  if (p.arcs.empty()) return "path has no arcs";
  for (const ArcId a : p.arcs)
    if (a < 0 || static_cast<size_t>(a) >= inst.num_arcs())
      throw StructuralError("path references unknown arc");
  if (p.shifts.size() + 1 != p.arcs.size())
    return "shift vector length must be path length minus one";

  const Demand& dem = inst.demand(p.demand);
  if (inst.arc(p.arcs.front()).src != dem.src)
    return "path does not start at the demand source";
  if (inst.arc(p.arcs.back()).dst != dem.dst)
    return "path does not end at the demand destination";
  std::vector<char> seen(inst.num_nodes(), 0);
  seen[inst.arc(p.arcs.front()).src] = 1;
  for (size_t i = 0; i < p.arcs.size(); ++i) {
    const Arc& arc = inst.arc(p.arcs[i]);
    if (i > 0 && inst.arc(p.arcs[i - 1]).dst != arc.src)
      return "arc chain broken at position " + std::to_string(i);
    if (seen[arc.dst]) return "path revisits node " + inst.node_name(arc.dst);
    seen[arc.dst] = 1;
  }
  return std::nullopt;
}

int64_t solution_bandwidth(const Instance& inst, const PlanSolution& sol) {
  int64_t total = 0;
  for (const SPath& p : sol.assignments) {
    if (p.demand < 0 || static_cast<size_t>(p.demand) >= inst.num_demands())
      throw StructuralError("solution references unknown demand");
    total += total_bandwidth(inst.demand(p.demand));
  }
  return total;
}

}  // namespace csqf
