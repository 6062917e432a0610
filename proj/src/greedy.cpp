#include "csqfplan/greedy.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace csqf {

namespace {

constexpr double kInfDelay = 1e18;

// Forward/backward probe from an endpoint: follow the unique usable
// continuation for up to one hop, then report the branching arcs. Mirrors the
// access topology where the first real routing choice sits one hop behind the
// endpoint (a base station's gateway picking between its two uplinks).
struct ForcedSide {
  std::vector<ArcId> chain;   // forced arcs leading from/to the endpoint
  std::vector<ArcId> forced;  // branching arcs, each defining a route family
};

std::vector<ArcId> usable_out(const Instance& inst, NodeId u, NodeId avoid) {
  std::vector<ArcId> arcs;
  for (const ArcId a : inst.out_arcs(u)) {
    const Arc& arc = inst.arc(a);
    if (arc.capacity_du <= 0 || arc.dst == avoid) continue;
    arcs.push_back(a);
  }
  return arcs;
}

std::vector<ArcId> usable_in(const Instance& inst, NodeId v, NodeId avoid) {
  std::vector<ArcId> arcs;
  for (const ArcId a : inst.in_arcs(v)) {
    const Arc& arc = inst.arc(a);
    if (arc.capacity_du <= 0 || arc.src == avoid) continue;
    arcs.push_back(a);
  }
  return arcs;
}

ForcedSide source_side(const Instance& inst, NodeId src, NodeId dst) {
  ForcedSide side;
  std::vector<ArcId> options = usable_out(inst, src, -1);
  if (options.size() == 1 && inst.arc(options[0]).dst != dst) {
    const ArcId hop = options[0];
    const NodeId next = inst.arc(hop).dst;
    std::vector<ArcId> deeper = usable_out(inst, next, src);
    if (deeper.size() >= 2) {
      side.chain.push_back(hop);
      side.forced = std::move(deeper);
      return side;
    }
  }
  side.forced = std::move(options);
  return side;
}

ForcedSide dest_side(const Instance& inst, NodeId src, NodeId dst) {
  ForcedSide side;
  std::vector<ArcId> options = usable_in(inst, dst, -1);
  if (options.size() == 1 && inst.arc(options[0]).src != src) {
    const ArcId hop = options[0];
    const NodeId prev = inst.arc(hop).src;
    std::vector<ArcId> deeper = usable_in(inst, prev, dst);
    if (deeper.size() >= 2) {
      side.chain.push_back(hop);  // kept in path order by the caller
      side.forced = std::move(deeper);
      return side;
    }
  }
  side.forced = std::move(options);
  return side;
}

// Shortest-delay path from s to t, skipping forbidden nodes and zero-capacity
// arcs; arc lengths can carry penalization multipliers. Returns arcs or empty
// when unreachable (s == t yields the empty path).
std::vector<ArcId> dijkstra_route(const Instance& inst, NodeId s, NodeId t,
                                  const std::vector<char>& forbidden,
                                  const std::vector<double>* lengths) {
  if (s == t) return {};
  const size_t n = inst.num_nodes();
  std::vector<double> dist(n, kInfDelay);
  std::vector<ArcId> parent(n, -1);
  using Entry = std::pair<double, NodeId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  dist[s] = 0;
  heap.push({0, s});
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    if (u == t) break;
    for (const ArcId a : inst.out_arcs(u)) {
      const Arc& arc = inst.arc(a);
      if (arc.capacity_du <= 0) continue;
      if (arc.dst != t && forbidden[arc.dst]) continue;
      const double w =
          lengths ? (*lengths)[a] : static_cast<double>(arc.delay_cycles);
      if (dist[u] + w < dist[arc.dst]) {
        dist[arc.dst] = dist[u] + w;
        parent[arc.dst] = a;
        heap.push({dist[arc.dst], arc.dst});
      }
    }
  }
  if (dist[t] >= kInfDelay) return {};
  std::vector<ArcId> arcs;
  for (NodeId v = t; v != s;) {
    const ArcId a = parent[v];
    arcs.push_back(a);
    v = inst.arc(a).src;
  }
  std::reverse(arcs.begin(), arcs.end());
  return arcs;
}

bool route_is_simple(const Instance& inst, const std::vector<ArcId>& arcs) {
  if (arcs.empty()) return false;
  std::vector<char> seen(inst.num_nodes(), 0);
  seen[inst.arc(arcs.front()).src] = 1;
  for (size_t i = 0; i < arcs.size(); ++i) {
    if (i > 0 && inst.arc(arcs[i - 1]).dst != inst.arc(arcs[i]).src)
      return false;
    const NodeId v = inst.arc(arcs[i]).dst;
    if (seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

int route_delay(const Instance& inst, const std::vector<ArcId>& arcs) {
  int delay = 0;
  for (const ArcId a : arcs) delay += inst.arc(a).delay_cycles;
  return delay;
}

}  // namespace

AdmissionState::AdmissionState(const Instance& inst)
    : inst_(&inst),
      load_(inst.num_arcs(), inst.cycles()),
      assignments_(inst.num_demands()) {}

double AdmissionState::availability(ArcId a) const {
  const int64_t cap = inst_->arc(a).capacity_du;
  if (cap <= 0) return 0.0;
  return 1.0 - static_cast<double>(load_.peak(a)) / static_cast<double>(cap);
}

double AdmissionState::lb_metric(double epsilon) const {
  double lb = 0;
  for (ArcId a = 0; static_cast<size_t>(a) < inst_->num_arcs(); ++a)
    lb += std::log(availability(a) + epsilon);
  return lb;
}

std::vector<SPath> AdmissionState::generate_candidates(
    DemandId d, const GreedyConfig& config) const {
  const Instance& inst = *inst_;
  const Demand& dem = inst.demand(d);

  std::vector<std::vector<ArcId>> routes;
  const auto push_route = [&](std::vector<ArcId> arcs) {
    if (!route_is_simple(inst, arcs)) return;
    if (inst.arc(arcs.front()).src != dem.src ||
        inst.arc(arcs.back()).dst != dem.dst)
      return;
    if (std::find(routes.begin(), routes.end(), arcs) == routes.end())
      routes.push_back(std::move(arcs));
  };

  const ForcedSide src = source_side(inst, dem.src, dem.dst);
  const ForcedSide dst = dest_side(inst, dem.src, dem.dst);

  std::vector<char> forbidden(inst.num_nodes(), 0);
  forbidden[dem.src] = 1;
  forbidden[dem.dst] = 1;
  for (const ArcId a : src.chain) forbidden[inst.arc(a).dst] = 1;
  for (const ArcId a : dst.chain) forbidden[inst.arc(a).src] = 1;

  for (const ArcId fs : src.forced) {
    for (const ArcId ft : dst.forced) {
      std::vector<ArcId> arcs;
      arcs.insert(arcs.end(), src.chain.begin(), src.chain.end());
      arcs.push_back(fs);
      const NodeId mid_from = inst.arc(fs).dst;
      const NodeId mid_to = inst.arc(ft).src;
      if (fs == ft) {
        arcs.insert(arcs.end(), dst.chain.begin(), dst.chain.end());
        push_route(std::move(arcs));
        continue;
      }
      if (mid_from != mid_to) {
        std::vector<char> blocked = forbidden;
        blocked[inst.arc(fs).src] = 1;
        blocked[inst.arc(ft).dst] = 1;
        blocked[mid_from] = 0;
        const std::vector<ArcId> middle =
            dijkstra_route(inst, mid_from, mid_to, blocked, nullptr);
        if (middle.empty() && mid_from != mid_to) continue;
        arcs.insert(arcs.end(), middle.begin(), middle.end());
      }
      arcs.push_back(ft);
      arcs.insert(arcs.end(), dst.chain.begin(), dst.chain.end());
      push_route(std::move(arcs));
    }
  }

  if (routes.empty()) {
    // No usable branching near the endpoints: diversify by re-running the
    // shortest-delay search with previously used arcs penalized.
    const int want = std::max(1, config.k > 0 ? config.k : 4);
    std::vector<double> lengths(inst.num_arcs());
    for (ArcId a = 0; static_cast<size_t>(a) < inst.num_arcs(); ++a)
      lengths[a] = static_cast<double>(inst.arc(a).delay_cycles);
    std::vector<char> none(inst.num_nodes(), 0);
    for (int round = 0; round < want; ++round) {
      std::vector<ArcId> arcs =
          dijkstra_route(inst, dem.src, dem.dst, none, &lengths);
      if (arcs.empty()) break;
      for (const ArcId a : arcs) lengths[a] *= 2.0;
      push_route(std::move(arcs));
    }
  }

  std::vector<SPath> candidates;
  for (const std::vector<ArcId>& route : routes) {
    const int base_delay = route_delay(inst, route);
    const int shift_slots = static_cast<int>(route.size()) - 1;
    const int max_r = shift_slots > 0 ? inst.max_extra_shift() : 0;
    for (int r = 0; r <= max_r; ++r) {
      if (base_delay + r > dem.deadline_cycles) break;
      SPath p;
      p.demand = d;
      p.arcs = route;
      p.shifts.assign(shift_slots, 0);
      if (shift_slots > 0) p.shifts[0] = r;
      if (!fits_residual(inst, load_, p)) continue;
      candidates.push_back(std::move(p));
      if (config.k > 0 && candidates.size() == static_cast<size_t>(config.k))
        return candidates;
    }
  }
  return candidates;
}

std::optional<SPath> AdmissionState::admit(DemandId d,
                                           const GreedyConfig& config) {
  const std::vector<SPath> candidates = generate_candidates(d, config);
  if (candidates.empty()) return std::nullopt;

  const Instance& inst = *inst_;
  const Demand& dem = inst.demand(d);
  const int C = inst.cycles();

  // Score by the change of the balance metric on the touched arcs only; all
  // other terms cancel when comparing candidates.
  const auto score = [&](const SPath& p) {
    double delta = 0;
    int shift = 0;
    for (size_t k = 0; k < p.arcs.size(); ++k) {
      const ArcId a = p.arcs[k];
      const int64_t cap = inst.arc(a).capacity_du;
      const int offset = shift % C;
      int64_t peak = 0;
      for (int c = 0; c < C; ++c) {
        const int64_t after = load_.at(a, c) + dem.pattern[(c + offset) % C];
        peak = std::max(peak, after);
      }
      const double av_after =
          cap <= 0 ? 0.0
                   : 1.0 - static_cast<double>(peak) / static_cast<double>(cap);
      delta += std::log(av_after + config.epsilon) -
               std::log(availability(a) + config.epsilon);
      shift += inst.arc(a).delay_cycles;
      if (k < p.shifts.size()) shift += p.shifts[k];
    }
    return delta;
  };

  const auto tie_key = [&](const SPath& p) {
    int total_shift = 0;
    for (const int r : p.shifts) total_shift += r;
    return std::tuple(p.arcs.size(), total_shift, p.arcs);
  };

  size_t best = 0;
  double best_score = score(candidates[0]);
  for (size_t i = 1; i < candidates.size(); ++i) {
    const double s = score(candidates[i]);
    if (s > best_score ||
        (s == best_score && tie_key(candidates[i]) < tie_key(candidates[best]))) {
      best = i;
      best_score = s;
    }
  }

  const SPath& chosen = candidates[best];
  load_.apply(inst, chosen, +1);
  assignments_[d] = chosen;
  return chosen;
}

PlanSolution AdmissionState::to_solution() const {
  PlanSolution sol;
  for (const auto& assignment : assignments_) {
    if (!assignment) continue;
    sol.assignments.push_back(*assignment);
    sol.objective += total_bandwidth(inst_->demand(assignment->demand));
  }
  return sol;
}

PlanSolution greedy_plan(const Instance& inst,
                         std::span<const DemandId> order,
                         const GreedyConfig& config) {
  if (order.size() != inst.num_demands())
    throw ModelError("demand order must cover every demand exactly once");
  std::vector<char> seen(inst.num_demands(), 0);
  for (const DemandId d : order) {
    if (d < 0 || static_cast<size_t>(d) >= inst.num_demands() || seen[d])
      throw ModelError("demand order is not a permutation");
    seen[d] = 1;
  }

  AdmissionState state(inst);
  for (const DemandId d : order) state.admit(d, config);
  return state.to_solution();
}

}  // namespace csqf
