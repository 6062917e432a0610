#include "csqfplan/ipran.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>

#include "csqfplan/rng.hpp"

namespace csqf {

IpranParams ipran_preset(std::string_view name) {
  IpranParams p;
  if (name == "paper") return p;
  if (name == "desk") {
    p.domains = 2;
    p.csg_per_asg_pair = 5;  // 4 pairs/domain -> 20 CSG/domain, 40 total
    p.demand_count = 160;
    // A slightly lower cycle share makes the du capacities odd (11/45/...),
    // which keeps the packet-size tightening non-trivial on loaded runs.
    p.detnet_share = 0.45;
    return p;
  }
  if (name == "tiny") {
    p.domains = 1;
    p.asg_per_domain = 2;  // one pair
    p.csg_per_asg_pair = 4;
    p.rsg_per_domain = 0;  // 10 nodes total, oracle-sized
    p.hypercycle_len = 4;
    p.demand_count = 5;
    p.scenario_mix = {100, 0, 0};
    p.period_choices = {2, 4};
    p.access_gbps = 2.0;   // 2 du per cycle
    p.agg_gbps = 3.0;      // 3 du per cycle
    p.bs_csg_delay_ms_min = 0.005;
    p.bs_csg_delay_ms_max = 0.025;
    p.access_delay_ms_min = 0.005;
    p.access_delay_ms_max = 0.025;
    p.agg_delay_ms_min = 0.005;
    p.agg_delay_ms_max = 0.025;
    p.processing_us = 0.0;
    p.deadline_ms_d1 = {0.06, 0.08, 0.10};  // 6..10 cycles
    return p;
  }
  throw GenerationError("unknown preset: " + std::string(name));
}

void apply_scenario(IpranParams& params, std::string_view name) {
  if (name == "sc1")
    params.scenario_mix = {60, 30, 10};
  else if (name == "sc2")
    params.scenario_mix = {100, 0, 0};
  else if (name == "sc3")
    params.scenario_mix = {34, 33, 33};
  else
    throw GenerationError("unknown scenario: " + std::string(name));
}

int64_t capacity_du_per_cycle(double gbps, const IpranParams& params) {
  const double bits_per_cycle = gbps * 1000.0 * params.cycle_duration_us;
  const double bytes = bits_per_cycle / 8.0;
  return static_cast<int64_t>(std::floor(
      bytes * params.detnet_share / params.du_size_bytes + 1e-9));
}

int delay_to_cycles(double propagation_ms, const IpranParams& params) {
  const double prop_cycles = propagation_ms * 1000.0 / params.cycle_duration_us;
  const double proc_cycles = params.processing_us / params.cycle_duration_us;
  const int total = static_cast<int>(std::ceil(prop_cycles - 1e-9)) +
                    static_cast<int>(std::ceil(proc_cycles - 1e-9));
  return std::max(total, 1);
}

namespace {

struct Builder {
  const IpranParams& params;
  IpranTopology topo;
  Rng delay_rng;
  Rng shortcut_rng;
  Rng capacity_rng;
  std::set<std::pair<NodeId, NodeId>> links;  // undirected, src < dst

  explicit Builder(const IpranParams& p)
      : params(p),
        delay_rng(p.seed, "topology-delays"),
        shortcut_rng(p.seed, "topology-shortcuts"),
        capacity_rng(p.seed, "topology-core-capacity") {}

  NodeId add_node(std::string name) {
    topo.node_names.push_back(std::move(name));
    return static_cast<NodeId>(topo.node_names.size()) - 1;
  }

  bool linked(NodeId a, NodeId b) const {
    return links.count({std::min(a, b), std::max(a, b)}) > 0;
  }

  void add_link(NodeId a, NodeId b, double delay_ms, int64_t capacity) {
    const int delay = delay_to_cycles(delay_ms, params);
    topo.arcs.push_back({a, b, delay, capacity});
    topo.arcs.push_back({b, a, delay, capacity});
    links.insert({std::min(a, b), std::max(a, b)});
  }

  double draw_delay(double lo, double hi) {
    return delay_rng.uniform_real(lo, hi);
  }
};

}  // namespace

IpranTopology generate_topology(const IpranParams& p) {
  if (p.domains < 1 || p.asg_per_domain < 2 || p.asg_per_domain % 2 != 0 ||
      p.csg_per_asg_pair < 1 || p.bs_per_csg < 1 || p.rsg_per_domain < 0)
    throw GenerationError("inconsistent layout parameters");
  if (!(p.detnet_share > 0.0 && p.detnet_share <= 1.0))
    throw GenerationError("cycle share must be in (0, 1]");

  Builder b(p);
  const int64_t access_cap = capacity_du_per_cycle(p.access_gbps, p);
  const int64_t agg_cap = capacity_du_per_cycle(p.agg_gbps, p);
  const int pairs_per_domain = p.asg_per_domain / 2;

  std::vector<NodeId> all_rsg;
  for (int dom = 0; dom < p.domains; ++dom) {
    std::vector<NodeId> asgs;
    for (int j = 0; j < p.asg_per_domain; ++j)
      asgs.push_back(
          b.add_node("asg" + std::to_string(dom * p.asg_per_domain + j)));

    for (int pair = 0; pair < pairs_per_domain; ++pair) {
      const int pair_global = dom * pairs_per_domain + pair;
      const NodeId asg_a = asgs[2 * pair];
      const NodeId asg_b = asgs[2 * pair + 1];
      for (int c = 0; c < p.csg_per_asg_pair; ++c) {
        const int csg_global = pair_global * p.csg_per_asg_pair + c;
        const NodeId csg = b.add_node("csg" + std::to_string(csg_global));
        b.add_link(csg, asg_a,
                   b.draw_delay(p.access_delay_ms_min, p.access_delay_ms_max),
                   access_cap);
        b.add_link(csg, asg_b,
                   b.draw_delay(p.access_delay_ms_min, p.access_delay_ms_max),
                   access_cap);
        for (int s = 0; s < p.bs_per_csg; ++s) {
          const int bs_global = csg_global * p.bs_per_csg + s;
          const NodeId bs = b.add_node("bs" + std::to_string(bs_global));
          b.add_link(bs, csg,
                     b.draw_delay(p.bs_csg_delay_ms_min, p.bs_csg_delay_ms_max),
                     access_cap);
          b.topo.base_stations.push_back({bs, pair_global, dom});
        }
      }
    }

    std::vector<NodeId> ring = asgs;
    for (int r = 0; r < p.rsg_per_domain; ++r) {
      const NodeId rsg =
          b.add_node("rsg" + std::to_string(dom * p.rsg_per_domain + r));
      ring.push_back(rsg);
      all_rsg.push_back(rsg);
    }
    if (ring.size() == 2) {
      b.add_link(ring[0], ring[1],
                 b.draw_delay(p.agg_delay_ms_min, p.agg_delay_ms_max), agg_cap);
    } else if (ring.size() > 2) {
      for (size_t i = 0; i < ring.size(); ++i)
        b.add_link(ring[i], ring[(i + 1) % ring.size()],
                   b.draw_delay(p.agg_delay_ms_min, p.agg_delay_ms_max),
                   agg_cap);
    }

    const int chords =
        p.ring_nodes_per_chord > 0
            ? static_cast<int>(ring.size()) / p.ring_nodes_per_chord
            : 0;
    for (int chord = 0; chord < chords; ++chord) {
      for (int attempt = 0; attempt < 32; ++attempt) {
        const NodeId u = ring[b.shortcut_rng.uniform_u64(ring.size())];
        const NodeId v = ring[b.shortcut_rng.uniform_u64(ring.size())];
        if (u == v || b.linked(u, v)) continue;
        b.add_link(u, v, b.draw_delay(p.agg_delay_ms_min, p.agg_delay_ms_max),
                   agg_cap);
        break;
      }
    }
  }

  for (size_t i = 0; i < all_rsg.size(); ++i) {
    for (size_t j = i + 1; j < all_rsg.size(); ++j) {
      const double gbps =
          b.capacity_rng.bernoulli(0.5) ? p.core_gbps_high : p.core_gbps_low;
      if (b.linked(all_rsg[i], all_rsg[j])) continue;  // same-domain ring edge
      b.add_link(all_rsg[i], all_rsg[j],
                 b.draw_delay(p.core_delay_ms_min, p.core_delay_ms_max),
                 capacity_du_per_cycle(gbps, p));
    }
  }

  return std::move(b.topo);
}

namespace {

// Forward shortest-delay distances used for the at-least-one-feasible-path
// check during demand generation.
class DelayOracle {
 public:
  DelayOracle(const IpranTopology& topo, size_t num_nodes)
      : out_(num_nodes) {
    for (size_t a = 0; a < topo.arcs.size(); ++a)
      out_[topo.arcs[a].src].push_back(static_cast<int>(a));
    arcs_ = &topo.arcs;
  }

  int dist(NodeId src, NodeId dst) {
    auto it = cache_.find(src);
    if (it == cache_.end()) it = cache_.emplace(src, dijkstra(src)).first;
    return it->second[dst];
  }

 private:
  std::vector<int> dijkstra(NodeId src) const {
    std::vector<int> dist(out_.size(), 1 << 29);
    dist[src] = 0;
    using Entry = std::pair<int, NodeId>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    heap.push({0, src});
    while (!heap.empty()) {
      const auto [d, u] = heap.top();
      heap.pop();
      if (d > dist[u]) continue;
      for (const int idx : out_[u]) {
        const Arc& arc = (*arcs_)[idx];
        if (arc.capacity_du <= 0) continue;
        if (d + arc.delay_cycles < dist[arc.dst]) {
          dist[arc.dst] = d + arc.delay_cycles;
          heap.push({d + arc.delay_cycles, arc.dst});
        }
      }
    }
    return dist;
  }

  std::vector<std::vector<int>> out_;
  const std::vector<Arc>* arcs_ = nullptr;
  std::map<NodeId, std::vector<int>> cache_;
};

}  // namespace

std::vector<Demand> generate_demands(const IpranParams& p,
                                     const IpranTopology& topo) {
  if (p.demand_count < 0) throw GenerationError("negative demand count");
  if (p.scenario_mix[0] + p.scenario_mix[1] + p.scenario_mix[2] != 100)
    throw GenerationError("scenario mix must sum to 100");
  for (const int period : p.period_choices)
    if (period < 1 || p.hypercycle_len % period != 0)
      throw GenerationError("pattern period must divide the hypercycle");
  if (p.period_choices.empty() || p.packets_choices.empty())
    throw GenerationError("empty pattern choice set");
  if (topo.base_stations.size() < 2)
    throw GenerationError("not enough base stations");

  // Exact class quotas in a seeded random order; realized proportions then
  // match the requested mix as closely as integrality allows.
  const int n = p.demand_count;
  std::vector<int> klass;
  klass.reserve(n);
  const int c1 = n * p.scenario_mix[0] / 100;
  const int c2 = n * p.scenario_mix[1] / 100;
  for (int i = 0; i < c1; ++i) klass.push_back(0);
  for (int i = 0; i < c2; ++i) klass.push_back(1);
  while (static_cast<int>(klass.size()) < n)
    klass.push_back(p.scenario_mix[2] > 0 ? 2
                    : p.scenario_mix[1] > 0 ? 1
                                            : 0);
  Rng class_rng(p.seed, "demand-class");
  class_rng.shuffle(klass);

  Rng endpoint_rng(p.seed, "demand-endpoints");
  Rng pattern_rng(p.seed, "demand-pattern");
  Rng phase_rng(p.seed, "demand-phase");
  Rng deadline_rng(p.seed, "demand-deadline");

  DelayOracle delays(topo, topo.node_names.size());
  const auto& stations = topo.base_stations;

  std::vector<Demand> demands;
  demands.reserve(n);
  for (int i = 0; i < n; ++i) {
    const int cls = klass[i];
    const auto& src = stations[endpoint_rng.uniform_u64(stations.size())];

    std::vector<int> eligible;
    for (size_t s = 0; s < stations.size(); ++s) {
      const auto& cand = stations[s];
      if (cand.node == src.node) continue;
      const bool ok = cls == 0   ? cand.pair == src.pair
                      : cls == 1 ? cand.domain == src.domain &&
                                       cand.pair != src.pair
                                 : cand.domain != src.domain;
      if (ok) eligible.push_back(static_cast<int>(s));
    }
    if (eligible.empty())
      throw GenerationError(
          "not enough base-station pairs for destination class D" +
          std::to_string(cls + 1));

    const auto& deadline_ms = cls == 0   ? p.deadline_ms_d1
                              : cls == 1 ? p.deadline_ms_d2
                                         : p.deadline_ms_d3;
    const double ms = deadline_ms[deadline_rng.uniform_u64(3)];
    const int deadline =
        static_cast<int>(std::llround(ms * 1000.0 / p.cycle_duration_us));

    const int period =
        p.period_choices[pattern_rng.uniform_u64(p.period_choices.size())];
    const int packets =
        p.packets_choices[pattern_rng.uniform_u64(p.packets_choices.size())];
    const int phase = static_cast<int>(phase_rng.uniform_u64(period));

    NodeId chosen_src = -1, chosen_dst = -1;
    for (int src_try = 0; src_try < 16 && chosen_dst < 0; ++src_try) {
      const auto& origin =
          src_try == 0 ? src
                       : stations[endpoint_rng.uniform_u64(stations.size())];
      std::vector<int> candidates;
      for (size_t s = 0; s < stations.size(); ++s) {
        const auto& cand = stations[s];
        if (cand.node == origin.node) continue;
        const bool ok = cls == 0   ? cand.pair == origin.pair
                        : cls == 1 ? cand.domain == origin.domain &&
                                         cand.pair != origin.pair
                                   : cand.domain != origin.domain;
        if (ok) candidates.push_back(static_cast<int>(s));
      }
      if (candidates.empty()) continue;
      for (int attempt = 0; attempt < 64; ++attempt) {
        const NodeId cand =
            stations[candidates[endpoint_rng.uniform_u64(candidates.size())]]
                .node;
        if (delays.dist(origin.node, cand) <= deadline) {
          chosen_src = origin.node;
          chosen_dst = cand;
          break;
        }
      }
    }
    if (chosen_dst < 0)
      throw GenerationError("no deadline-feasible endpoints for demand " +
                            std::to_string(i) + " (class D" +
                            std::to_string(cls + 1) + ", deadline " +
                            std::to_string(deadline) + " cycles)");

    Demand d;
    d.id = i;
    d.src = chosen_src;
    d.dst = chosen_dst;
    d.deadline_cycles = deadline;
    d.packet_size_du = p.packet_du;
    d.pattern.assign(p.hypercycle_len, 0);
    for (int c = phase; c < p.hypercycle_len; c += period)
      d.pattern[c] = static_cast<int64_t>(packets) * p.packet_du;
    demands.push_back(std::move(d));
  }
  return demands;
}

Instance generate_instance(const IpranParams& params) {
  IpranTopology topo = generate_topology(params);
  std::vector<Demand> demands = generate_demands(params, topo);
  GlobalParams globals;
  globals.hypercycle_len = params.hypercycle_len;
  globals.max_extra_shift = params.max_extra_shift;
  globals.cycle_duration_us = params.cycle_duration_us;
  globals.du_size_bytes = params.du_size_bytes;
  return Instance(globals, std::move(topo.node_names), std::move(topo.arcs),
                  std::move(demands));
}

}  // namespace csqf
