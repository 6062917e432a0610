#include "csqfplan/oracle.hpp"

#include <algorithm>

#include "csqfplan/pricing.hpp"
#include "csqfplan/validate.hpp"

namespace csqf {

namespace {

class BranchAndBound {
 public:
  BranchAndBound(const Instance& inst,
                 const std::vector<std::vector<SPath>>& candidates)
      : inst_(inst),
        candidates_(candidates),
        load_(inst.num_arcs(), inst.cycles()),
        chosen_(inst.num_demands(), -1),
        best_choice_(inst.num_demands(), -1) {
    const size_t n = inst.num_demands();
    suffix_bw_.assign(n + 1, 0);
    for (size_t i = n; i-- > 0;)
      suffix_bw_[i] =
          suffix_bw_[i + 1] + total_bandwidth(inst.demand(static_cast<int>(i)));
  }

  OracleResult run() {
    explore(0, 0);
    OracleResult result;
    for (size_t d = 0; d < inst_.num_demands(); ++d)
      if (best_choice_[d] >= 0)
        result.solution.assignments.push_back(candidates_[d][best_choice_[d]]);
    result.solution.objective = best_value_;
    result.explored = explored_;
    for (const auto& c : candidates_) result.spath_count += c.size();
    return result;
  }

 private:
  void explore(size_t d, int64_t value) {
    ++explored_;
    // The empty assignment (value 0) is the initial incumbent, so pruning
    // branches that cannot strictly improve is safe from the start.
    if (value + suffix_bw_[d] <= best_value_) return;
    if (d == inst_.num_demands()) {
      best_value_ = value;
      best_choice_ = chosen_;
      return;
    }
    const int64_t bw = total_bandwidth(inst_.demand(static_cast<int>(d)));
    for (size_t i = 0; i < candidates_[d].size(); ++i) {
      const SPath& p = candidates_[d][i];
      if (!fits_residual(inst_, load_, p)) continue;
      load_.apply(inst_, p, +1);
      chosen_[d] = static_cast<int>(i);
      explore(d + 1, value + bw);
      chosen_[d] = -1;
      load_.apply(inst_, p, -1);
    }
    explore(d + 1, value);  // rejection branch
  }

  const Instance& inst_;
  const std::vector<std::vector<SPath>>& candidates_;
  LoadMatrix load_;
  std::vector<int> chosen_;
  std::vector<int64_t> suffix_bw_;

  int64_t best_value_ = 0;
  std::vector<int> best_choice_;
  uint64_t explored_ = 0;
};

}  // namespace

OracleResult brute_force_optimum(const Instance& inst,
                                 const OracleLimits& limits) {
  if (inst.num_nodes() > limits.max_nodes)
    throw LimitError("oracle refuses instance with " +
                     std::to_string(inst.num_nodes()) + " nodes (limit " +
                     std::to_string(limits.max_nodes) + ")");
  if (inst.num_demands() > limits.max_demands)
    throw LimitError("oracle refuses instance with " +
                     std::to_string(inst.num_demands()) + " demands (limit " +
                     std::to_string(limits.max_demands) + ")");
  if (inst.cycles() > limits.max_cycles)
    throw LimitError("oracle refuses hypercycle length " +
                     std::to_string(inst.cycles()));
  if (inst.max_extra_shift() > limits.max_extra_shift)
    throw LimitError("oracle refuses max shift " +
                     std::to_string(inst.max_extra_shift()));

  PricingContext ctx(inst);
  std::vector<std::vector<SPath>> candidates(inst.num_demands());
  for (DemandId d = 0; static_cast<size_t>(d) < inst.num_demands(); ++d)
    candidates[d] =
        enumerate_spaths(inst, d, limits.max_spaths_per_demand, ctx);

  BranchAndBound search(inst, candidates);
  return search.run();
}

}  // namespace csqf
