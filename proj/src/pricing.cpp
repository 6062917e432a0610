#include "csqfplan/pricing.hpp"

#include <algorithm>
#include <queue>

namespace csqf {

namespace {

using Bitset = std::vector<uint64_t>;

Bitset make_bitset(size_t bits) { return Bitset((bits + 63) / 64, 0); }

void set_bit(Bitset& b, NodeId v) { b[v >> 6] |= uint64_t{1} << (v & 63); }

void clear_bit(Bitset& b, NodeId v) { b[v >> 6] &= ~(uint64_t{1} << (v & 63)); }

bool test_bit(const Bitset& b, NodeId v) {
  return (b[v >> 6] >> (v & 63)) & 1;
}

bool is_subset(const Bitset& a, const Bitset& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

}  // namespace

const std::vector<int>& PricingContext::dist_to(NodeId target) {
  const auto it = cache_.find(target);
  if (it != cache_.end()) return it->second;

  std::vector<int> dist(inst_->num_nodes(), kUnreachable);
  dist[target] = 0;
  using Entry = std::pair<int, NodeId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  heap.push({0, target});
  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    heap.pop();
    if (d > dist[v]) continue;
    for (const ArcId a : inst_->in_arcs(v)) {
      const Arc& arc = inst_->arc(a);
      if (arc.capacity_du <= 0) continue;
      const int nd = d + arc.delay_cycles;
      if (nd < dist[arc.src]) {
        dist[arc.src] = nd;
        heap.push({nd, arc.src});
      }
    }
  }
  return cache_.emplace(target, std::move(dist)).first->second;
}

void PricingContext::warm(std::span<const NodeId> targets) {
  for (const NodeId t : targets) dist_to(t);
}

double arc_weight(const Instance& inst, const Demand& d,
                  const DualValues& duals, ArcId a, int offset) {
  const int C = inst.cycles();
  const size_t base = static_cast<size_t>(a) * C;
  double w = 0;
  for (int c = 0; c < C; ++c) {
    const double mu = duals.per_arc_cycle[base + c];
    if (mu != 0) w += static_cast<double>(d.pattern[(c + offset) % C]) * mu;
  }
  return w;
}

double spath_weight(const Instance& inst, const DualValues& duals,
                    const SPath& p) {
  const Demand& dem = inst.demand(p.demand);
  const int C = inst.cycles();
  double w = 0;
  int shift = 0;
  for (size_t k = 0; k < p.arcs.size(); ++k) {
    w += arc_weight(inst, dem, duals, p.arcs[k], shift % C);
    shift += inst.arc(p.arcs[k]).delay_cycles;
    if (k < p.shifts.size()) shift += p.shifts[k];
  }
  return w;
}

namespace {

// Labels justify pruning only when the stored prefix could replay every
// completion of the pruned one: same leave-cycle class (downstream weights
// depend on it), no worse weight and delay, and a visited set contained in
// the candidate's (so any node-disjoint completion stays disjoint).
struct Label {
  double weight;
  int delay;  // accumulated delay including the shift chosen at this node
  Bitset visited;
};

class SeparatingSearch {
 public:
  SeparatingSearch(const Instance& inst, DemandId d, const DualValues& duals,
                   double threshold, const std::vector<int>& dist_to_target)
      : inst_(inst),
        dem_(inst.demand(d)),
        demand_(d),
        duals_(duals),
        threshold_(threshold),
        dist_(dist_to_target),
        cycles_(inst.cycles()),
        max_shift_(inst.max_extra_shift()) {}

  std::optional<SPath> run(int deadline_bound) {
    bound_ = deadline_bound;
    labels_.assign(inst_.num_nodes(), {});
    arcs_.clear();
    shifts_.clear();
    visited_ = make_bitset(inst_.num_nodes());
    set_bit(visited_, dem_.src);
    if (dfs(dem_.src, 0.0, 0)) {
      SPath p;
      p.demand = demand_;
      p.arcs = arcs_;
      p.shifts = shifts_;
      return p;
    }
    return std::nullopt;
  }

 private:
  bool dfs(NodeId u, double weight, int leave_delay) {
    // Order arcs by the weight they would add; cheap-first tends to reach a
    // separating path quickly.
    struct Step {
      double w;
      int delay;
      ArcId a;
    };
    std::vector<Step> steps;
    steps.reserve(inst_.out_arcs(u).size());
    const int offset = leave_delay % cycles_;
    for (const ArcId a : inst_.out_arcs(u)) {
      const Arc& arc = inst_.arc(a);
      if (arc.capacity_du <= 0) continue;
      if (test_bit(visited_, arc.dst)) continue;
      steps.push_back({arc_weight(inst_, dem_, duals_, a, offset),
                       arc.delay_cycles, a});
    }
    std::sort(steps.begin(), steps.end(), [](const Step& x, const Step& y) {
      if (x.w != y.w) return x.w < y.w;
      if (x.delay != y.delay) return x.delay < y.delay;
      return x.a < y.a;
    });

    for (const Step& step : steps) {
      const double w2 = weight + step.w;
      if (w2 >= threshold_ - kSeparationTol) continue;
      const Arc& arc = inst_.arc(step.a);
      const int arrive = leave_delay + step.delay;
      if (arc.dst == dem_.dst) {
        if (arrive <= bound_) {
          arcs_.push_back(step.a);
          return true;
        }
        continue;
      }
      if (arrive + dist_[arc.dst] > bound_) continue;

      set_bit(visited_, arc.dst);
      bool found = false;
      for (int r = 0; r <= max_shift_ && !found; ++r) {
        const int leave = arrive + r;
        if (leave + dist_[arc.dst] > bound_) break;
        if (dominated(arc.dst, w2, leave)) continue;
        store_label(arc.dst, w2, leave);
        arcs_.push_back(step.a);
        shifts_.push_back(r);
        found = dfs(arc.dst, w2, leave);
        if (!found) {
          arcs_.pop_back();
          shifts_.pop_back();
        }
      }
      if (found) return true;
      clear_bit(visited_, arc.dst);
    }
    return false;
  }

  bool dominated(NodeId v, double w, int delay) const {
    const int offset = delay % cycles_;
    for (const Label& l : labels_[v]) {
      if (l.delay % cycles_ != offset) continue;
      if (l.weight <= w && l.delay <= delay && is_subset(l.visited, visited_))
        return true;
    }
    return false;
  }

  void store_label(NodeId v, double w, int delay) {
    auto& list = labels_[v];
    const int offset = delay % cycles_;
    std::erase_if(list, [&](const Label& l) {
      return l.delay % cycles_ == offset && w <= l.weight &&
             delay <= l.delay && is_subset(visited_, l.visited);
    });
    list.push_back({w, delay, visited_});
  }

  const Instance& inst_;
  const Demand& dem_;
  const DemandId demand_;
  const DualValues& duals_;
  const double threshold_;
  const std::vector<int>& dist_;
  const int cycles_;
  const int max_shift_;

  int bound_ = 0;
  std::vector<std::vector<Label>> labels_;
  std::vector<ArcId> arcs_;
  std::vector<int> shifts_;
  Bitset visited_;
};

}  // namespace

std::optional<SPath> price_demand(const Instance& inst, DemandId d,
                                  const DualValues& duals,
                                  PricingContext& ctx) {
  const Demand& dem = inst.demand(d);
  const double threshold =
      static_cast<double>(total_bandwidth(dem)) - duals.per_demand[d];
  if (threshold <= kSeparationTol) return std::nullopt;

  const std::vector<int>& dist = ctx.dist_to(dem.dst);
  const int shortest = dist[dem.src];
  if (shortest >= PricingContext::kUnreachable ||
      shortest > dem.deadline_cycles)
    return std::nullopt;

  SeparatingSearch search(inst, d, duals, threshold, dist);

  // Iterative deadline deepening: a tight bound keeps the search shallow;
  // only the final run at the true deadline is conclusive.
  int bound = shortest;
  for (;;) {
    if (auto path = search.run(bound)) return path;
    if (bound >= dem.deadline_cycles) return std::nullopt;
    bound = bound > dem.deadline_cycles / 2 ? dem.deadline_cycles : bound * 2;
  }
}

namespace {

class ExhaustiveWalk {
 public:
  ExhaustiveWalk(const Instance& inst, const Demand& dem, DemandId d,
                 size_t max_paths, const std::vector<int>& dist)
      : inst_(inst),
        dem_(dem),
        demand_(d),
        max_paths_(max_paths),
        dist_(dist),
        max_shift_(inst.max_extra_shift()) {}

  std::vector<SPath> run() {
    visited_ = make_bitset(inst_.num_nodes());
    set_bit(visited_, dem_.src);
    walk(dem_.src, 0);
    return std::move(results_);
  }

 private:
  void walk(NodeId u, int leave_delay) {
    for (const ArcId a : inst_.out_arcs(u)) {
      const Arc& arc = inst_.arc(a);
      if (arc.capacity_du <= 0) continue;
      if (test_bit(visited_, arc.dst)) continue;
      const int arrive = leave_delay + arc.delay_cycles;
      if (arc.dst == dem_.dst) {
        if (arrive <= dem_.deadline_cycles) {
          arcs_.push_back(a);
          emit();
          arcs_.pop_back();
        }
        continue;
      }
      if (arrive + dist_[arc.dst] > dem_.deadline_cycles) continue;
      set_bit(visited_, arc.dst);
      arcs_.push_back(a);
      for (int r = 0; r <= max_shift_; ++r) {
        if (arrive + r + dist_[arc.dst] > dem_.deadline_cycles) break;
        shifts_.push_back(r);
        walk(arc.dst, arrive + r);
        shifts_.pop_back();
      }
      arcs_.pop_back();
      clear_bit(visited_, arc.dst);
    }
  }

  void emit() {
    if (results_.size() >= max_paths_)
      throw LimitError("s-path enumeration exceeds limit of " +
                       std::to_string(max_paths_) + " paths for demand " +
                       std::to_string(dem_.id));
    SPath p;
    p.demand = demand_;
    p.arcs = arcs_;
    p.shifts = shifts_;
    results_.push_back(std::move(p));
  }

  const Instance& inst_;
  const Demand& dem_;
  const DemandId demand_;
  const size_t max_paths_;
  const std::vector<int>& dist_;
  const int max_shift_;

  Bitset visited_;
  std::vector<ArcId> arcs_;
  std::vector<int> shifts_;
  std::vector<SPath> results_;
};

}  // namespace

std::vector<SPath> enumerate_spaths(const Instance& inst, DemandId d,
                                    size_t max_paths, PricingContext& ctx) {
  const Demand& dem = inst.demand(d);
  const std::vector<int>& dist = ctx.dist_to(dem.dst);
  if (dist[dem.src] >= PricingContext::kUnreachable) return {};
  ExhaustiveWalk walk(inst, dem, d, max_paths, dist);
  return walk.run();
}

}  // namespace csqf
