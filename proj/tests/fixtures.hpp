#pragma once

#include <numeric>
#include <vector>

#include "csqfplan/model.hpp"
#include "csqfplan/pricing.hpp"
#include "csqfplan/rng.hpp"

namespace csqf::testfix {

// Two-hop worked example: demand d goes s -> u -> t (arc delays 5 and 2,
// C = 2, pattern [2,1]); demand dprime goes u -> t with pattern [0,2] and a
// deadline that admits only the direct arc. With capacity 3 on (u,t), d must
// take the shifted variant of its path for both to fit.
struct Fig2 {
  Instance instance;
  SPath p1;      // d, no extra shift
  SPath p2;      // d, one extra shift at u
  SPath pprime;  // dprime, single arc
};

inline Fig2 make_fig2(int64_t cap_ut = 3, int deadline_d = 10) {
  GlobalParams params;
  params.hypercycle_len = 2;
  params.max_extra_shift = 1;
  std::vector<std::string> nodes = {"s", "u", "t"};
  std::vector<Arc> arcs = {{0, 1, 5, 10}, {1, 2, 2, cap_ut}};
  std::vector<Demand> demands;
  demands.push_back({0, 0, 2, {2, 1}, deadline_d, 1});
  demands.push_back({1, 1, 2, {0, 2}, 2, 1});
  Fig2 fig{Instance(params, std::move(nodes), std::move(arcs),
                    std::move(demands)),
           {}, {}, {}};
  fig.p1 = {0, {0, 1}, {0}};
  fig.p2 = {0, {0, 1}, {1}};
  fig.pprime = {1, {1}, {}};
  return fig;
}

// Seeded random instance inside the exact-oracle envelope: 6..8 nodes,
// 3..6 demands, C in {2,4}, R in {0,1}, unit-to-small capacities and tight
// deadlines so that acceptance decisions are non-trivial.
inline Instance make_tiny_random(uint64_t seed) {
  Rng rng(seed, "tiny-fixture");
  const int n = static_cast<int>(rng.uniform_int(6, 8));
  const int cycles = rng.bernoulli(0.5) ? 2 : 4;
  const int max_shift = static_cast<int>(rng.uniform_int(0, 1));

  GlobalParams params;
  params.hypercycle_len = cycles;
  params.max_extra_shift = max_shift;

  std::vector<std::string> nodes;
  for (int v = 0; v < n; ++v) nodes.push_back("n" + std::to_string(v));

  std::vector<int> ring(n);
  std::iota(ring.begin(), ring.end(), 0);
  rng.shuffle(ring);

  std::vector<Arc> arcs;
  const auto has_arc = [&](NodeId a, NodeId b) {
    for (const Arc& arc : arcs)
      if (arc.src == a && arc.dst == b) return true;
    return false;
  };
  const auto add_arc = [&](NodeId a, NodeId b) {
    arcs.push_back({a, b, static_cast<int>(rng.uniform_int(1, 3)),
                    rng.uniform_int(1, 4)});
  };
  for (int i = 0; i < n; ++i)
    add_arc(ring[i], ring[(i + 1) % n]);
  const int extra = static_cast<int>(rng.uniform_int(2, n));
  for (int e = 0; e < extra; ++e) {
    const NodeId a = static_cast<NodeId>(rng.uniform_u64(n));
    const NodeId b = static_cast<NodeId>(rng.uniform_u64(n));
    if (a == b || has_arc(a, b)) continue;
    add_arc(a, b);
  }

  // Shortest delays for deadline placement, via a throwaway demand-free
  // instance over the same graph.
  Instance graph_only(params, nodes, arcs, {});
  PricingContext ctx(graph_only);

  const int demand_count = static_cast<int>(rng.uniform_int(3, 6));
  std::vector<Demand> demands;
  while (static_cast<int>(demands.size()) < demand_count) {
    const NodeId src = static_cast<NodeId>(rng.uniform_u64(n));
    const NodeId dst = static_cast<NodeId>(rng.uniform_u64(n));
    if (src == dst) continue;
    const int shortest = ctx.dist_to(dst)[src];
    if (shortest >= PricingContext::kUnreachable) continue;
    Demand d;
    d.id = static_cast<int64_t>(demands.size());
    d.src = src;
    d.dst = dst;
    d.deadline_cycles = shortest + static_cast<int>(rng.uniform_int(0, 4));
    d.packet_size_du = rng.bernoulli(0.25) ? 2 : 1;
    d.pattern.assign(cycles, 0);
    const int active = static_cast<int>(rng.uniform_int(1, cycles == 2 ? 2 : 2));
    for (int k = 0; k < active; ++k) {
      const int c = static_cast<int>(rng.uniform_u64(cycles));
      d.pattern[c] = d.packet_size_du * rng.uniform_int(1, 2);
    }
    bool nonzero = false;
    for (const int64_t bw : d.pattern) nonzero |= bw != 0;
    if (!nonzero) d.pattern[0] = d.packet_size_du;
    demands.push_back(std::move(d));
  }

  return Instance(params, std::move(nodes), std::move(arcs),
                  std::move(demands));
}

inline std::vector<DemandId> all_demands(const Instance& inst) {
  std::vector<DemandId> order(inst.num_demands());
  std::iota(order.begin(), order.end(), 0);
  return order;
}

}  // namespace csqf::testfix
