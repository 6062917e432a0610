#include "csqfplan/colgen.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

#include "csqfplan/parallel.hpp"
#include "csqfplan/rng.hpp"
#include "csqfplan/validate.hpp"

namespace csqf {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

size_t spath_hash(const SPath& p) {
  size_t h = static_cast<size_t>(p.demand) * 0x9e3779b97f4a7c15ull;
  for (const ArcId a : p.arcs) h = h * 1099511628211ull + static_cast<size_t>(a) + 1;
  for (const int r : p.shifts) h = h * 1099511628211ull + static_cast<size_t>(r) + 7;
  return h;
}

}  // namespace

Strengthening strengthened_coefficients(const Instance& inst) {
  Strengthening s;
  int64_t g = 0;
  for (const Demand& d : inst.demands()) g = std::gcd(g, d.packet_size_du);
  s.divisor = g == 0 ? 1 : g;
  s.rhs.reserve(inst.num_arcs());
  for (const Arc& a : inst.arcs()) s.rhs.push_back(a.capacity_du / s.divisor);
  return s;
}

RestrictedMaster::RestrictedMaster(const Instance& inst, bool strengthen)
    : inst_(&inst), strengthen_(strengthen) {
  strengthening_ = strengthen ? strengthened_coefficients(inst)
                              : Strengthening{1, {}};
  demand_row_.reserve(inst.num_demands());
  for (size_t d = 0; d < inst.num_demands(); ++d)
    demand_row_.push_back(lp_.add_row(1.0));
}

int RestrictedMaster::capacity_row(ArcId a, int cycle) {
  const int64_t key =
      static_cast<int64_t>(a) * inst_->cycles() + cycle;
  const auto it = cap_row_.find(key);
  if (it != cap_row_.end()) return it->second;
  const int64_t cap = inst_->arc(a).capacity_du;
  const double rhs =
      strengthen_ ? static_cast<double>(strengthening_.rhs[a])
                  : static_cast<double>(cap);
  const int row = lp_.add_row(rhs);
  cap_row_.emplace(key, row);
  return row;
}

int RestrictedMaster::add_column(const SPath& p) {
  const size_t h = spath_hash(p);
  if (const auto it = column_lookup_.find(h); it != column_lookup_.end())
    for (const int idx : it->second)
      if (columns_[idx] == p) return idx;

  const Demand& dem = inst_->demand(p.demand);
  const int C = inst_->cycles();
  const double divisor = static_cast<double>(strengthening_.divisor);

  std::vector<std::pair<int, double>> coeffs;
  coeffs.emplace_back(demand_row_[p.demand], 1.0);
  int shift = 0;
  for (size_t k = 0; k < p.arcs.size(); ++k) {
    const ArcId a = p.arcs[k];
    const int offset = shift % C;
    for (int c = 0; c < C; ++c) {
      const int64_t bw = dem.pattern[(c + offset) % C];
      if (bw == 0) continue;
      coeffs.emplace_back(capacity_row(a, c),
                          static_cast<double>(bw) / divisor);
    }
    shift += inst_->arc(a).delay_cycles;
    if (k < p.shifts.size()) shift += p.shifts[k];
  }

  const int idx = lp_.add_column(
      static_cast<double>(total_bandwidth(dem)), std::move(coeffs));
  columns_.push_back(p);
  column_lookup_[h].push_back(idx);
  return idx;
}

DualValues RestrictedMaster::duals() const {
  const std::vector<double> y = lp_.duals();
  DualValues d;
  d.per_demand.resize(inst_->num_demands());
  for (size_t i = 0; i < demand_row_.size(); ++i)
    d.per_demand[i] = std::max(0.0, y[demand_row_[i]]);
  d.per_arc_cycle.assign(inst_->num_arcs() * inst_->cycles(), 0.0);
  for (const auto& [key, row] : cap_row_)
    d.per_arc_cycle[key] = std::max(0.0, y[row]);
  return d;
}

DualValues RestrictedMaster::pricing_duals() const {
  DualValues d = duals();
  if (strengthen_ && strengthening_.divisor != 1) {
    const double inv = 1.0 / static_cast<double>(strengthening_.divisor);
    for (double& mu : d.per_arc_cycle) mu *= inv;
  }
  return d;
}

MasterSolution column_generation(const Instance& inst, const CgConfig& config,
                                 const std::vector<SPath>& seed_columns) {
  RestrictedMaster master(inst, config.strengthen);
  for (const SPath& seed : seed_columns) {
    if (const auto defect = spath_defect(inst, seed))
      throw ModelError("seed column rejected: " + *defect);
    if (path_delay(inst, seed) > inst.demand(seed.demand).deadline_cycles)
      throw ModelError("seed column misses its demand deadline");
    master.add_column(seed);
  }

  PricingContext ctx(inst);
  std::vector<NodeId> targets;
  targets.reserve(inst.num_demands());
  for (const Demand& d : inst.demands()) targets.push_back(d.dst);
  ctx.warm(targets);

  MasterSolution result;
  const int64_t max_solves = std::max<int64_t>(
      1, static_cast<int64_t>(config.max_solves_per_demand) *
             static_cast<int64_t>(inst.num_demands()));

  std::vector<std::optional<SPath>> priced(inst.num_demands());
  for (int64_t round = 0; round < max_solves; ++round) {
    const auto master_start = std::chrono::steady_clock::now();
    master.solve();
    result.master_seconds += seconds_since(master_start);
    ++result.iterations;
    result.objective_trace.push_back(master.objective());

    const DualValues duals = master.pricing_duals();
    const auto pricing_start = std::chrono::steady_clock::now();
    parallel_for(inst.num_demands(), [&](size_t d) {
      priced[d] = price_demand(inst, static_cast<DemandId>(d), duals, ctx);
    });
    result.pricing_seconds += seconds_since(pricing_start);

    bool any = false;
    for (auto& path : priced) {
      if (!path) continue;
      master.add_column(*path);
      path.reset();
      any = true;
    }
    if (!any) {
      result.proven = true;
      break;
    }
  }

  result.columns = master.columns();
  result.y = master.primal();
  result.objective = master.objective();
  result.duals = master.duals();
  result.lp_pivots = master.engine().stats().pivots;
  return result;
}

PlanSolution randomized_rounding(const Instance& inst,
                                 const MasterSolution& master,
                                 const RoundingConfig& config) {
  // Columns with vanishing weight can never be drawn; drop them up front.
  std::vector<std::vector<std::pair<int, double>>> by_demand(
      inst.num_demands());
  for (size_t i = 0; i < master.columns.size(); ++i) {
    const double y = i < master.y.size() ? master.y[i] : 0.0;
    if (y > 1e-12)
      by_demand[master.columns[i].demand].emplace_back(static_cast<int>(i), y);
  }

  PlanSolution best;
  best.objective = 0;

  std::vector<DemandId> order(inst.num_demands());
  std::iota(order.begin(), order.end(), 0);

  for (int run = 0; run < config.runs; ++run) {
    Rng rng(config.seed, "rounding-run-" + std::to_string(run));
    rng.shuffle(order);

    LoadMatrix load(inst.num_arcs(), inst.cycles());
    PlanSolution current;
    for (const DemandId d : order) {
      std::vector<std::pair<int, double>> candidates = by_demand[d];
      while (!candidates.empty()) {
        double total = 0;
        for (const auto& [idx, w] : candidates) total += w;
        if (total <= 0) break;
        const double x = rng.uniform_real(0.0, total);
        size_t pick = 0;
        double cum = 0;
        for (; pick + 1 < candidates.size(); ++pick) {
          cum += candidates[pick].second;
          if (x < cum) break;
        }
        const SPath& p = master.columns[candidates[pick].first];
        if (fits_residual(inst, load, p)) {
          load.apply(inst, p, +1);
          current.assignments.push_back(p);
          current.objective += total_bandwidth(inst.demand(d));
          break;
        }
        candidates.erase(candidates.begin() + pick);
      }
    }
    if (current.objective > best.objective) best = std::move(current);
  }
  return best;
}

}  // namespace csqf
