#include "csqfplan/validate.hpp"

#include <algorithm>
#include <unordered_set>

#include "json.hpp"

namespace csqf {

void LoadMatrix::apply(const Instance& inst, const SPath& p, int sign) {
  const int C = cycles_;
  const Demand& dem = inst.demand(p.demand);
  int shift = 0;
  for (size_t k = 0; k < p.arcs.size(); ++k) {
    const ArcId a = p.arcs[k];
    const int offset = shift % C;
    for (int c = 0; c < C; ++c) {
      const int64_t bw = dem.pattern[(c + offset) % C];
      if (bw != 0) load_[index(a, c)] += sign * bw;
    }
    shift += inst.arc(a).delay_cycles;
    if (k < p.shifts.size()) shift += p.shifts[k];
  }
}

int64_t LoadMatrix::peak(ArcId a) const {
  int64_t best = 0;
  for (int c = 0; c < cycles_; ++c) best = std::max(best, at(a, c));
  return best;
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kUniqueness: return "uniqueness";
    case ViolationKind::kCapacity: return "capacity";
    case ViolationKind::kDeadline: return "deadline";
    case ViolationKind::kShiftBound: return "shift-bound";
    case ViolationKind::kConnectivity: return "connectivity";
  }
  return "unknown";
}

std::string ValidationReport::to_json(int indent) const {
  nlohmann::json j;
  j["format_version"] = 1;
  j["feasible"] = feasible;
  nlohmann::json list = nlohmann::json::array();
  for (const Violation& v : violations) {
    nlohmann::json entry;
    entry["kind"] = to_string(v.kind);
    if (v.demand_id >= 0) entry["demand"] = v.demand_id;
    if (v.arc >= 0) entry["arc"] = v.arc;
    if (v.cycle >= 0) entry["cycle"] = v.cycle;
    entry["magnitude"] = v.magnitude;
    if (!v.detail.empty()) entry["detail"] = v.detail;
    list.push_back(std::move(entry));
  }
  j["violations"] = std::move(list);
  return j.dump(indent);
}

namespace {

// A path participates in the load matrix iff its arc chain is contiguous and
// shift shapes are sane; endpoint or simplicity defects still contribute load
// on the arcs they do traverse would be ambiguous, so those are excluded too.
bool structurally_sound(const Instance& inst, const SPath& p) {
  return !spath_defect(inst, p).has_value();
}

}  // namespace

LoadMatrix load_matrix(const Instance& inst, const PlanSolution& sol) {
  LoadMatrix load(inst.num_arcs(), inst.cycles());
  for (const SPath& p : sol.assignments) {
    if (p.demand < 0 || static_cast<size_t>(p.demand) >= inst.num_demands())
      throw StructuralError("solution references unknown demand");
    for (const ArcId a : p.arcs)
      if (a < 0 || static_cast<size_t>(a) >= inst.num_arcs())
        throw StructuralError("solution references unknown arc");
    if (structurally_sound(inst, p)) load.apply(inst, p, +1);
  }
  return load;
}

ValidationReport validate(const Instance& inst, const PlanSolution& sol) {
  ValidationReport report;

  std::unordered_set<DemandId> assigned;
  for (const SPath& p : sol.assignments) {
    if (p.demand < 0 || static_cast<size_t>(p.demand) >= inst.num_demands())
      throw StructuralError("solution references unknown demand");
    const Demand& dem = inst.demand(p.demand);
    if (!assigned.insert(p.demand).second) {
      report.violations.push_back({ViolationKind::kUniqueness, dem.id, -1, -1,
                                   0, "demand assigned more than once"});
    }
    if (const auto defect = spath_defect(inst, p)) {
      report.violations.push_back(
          {ViolationKind::kConnectivity, dem.id, -1, -1, 0, *defect});
      continue;
    }
    for (size_t k = 0; k < p.shifts.size(); ++k) {
      if (p.shifts[k] < 0 || p.shifts[k] > inst.max_extra_shift()) {
        report.violations.push_back(
            {ViolationKind::kShiftBound, dem.id, -1, -1, p.shifts[k],
             "shift at node " + std::to_string(k + 1) + " outside [0, R]"});
      }
    }
    const int delay = path_delay(inst, p);
    if (delay > dem.deadline_cycles) {
      report.violations.push_back(
          {ViolationKind::kDeadline, dem.id, -1, -1,
           delay - dem.deadline_cycles,
           "path delay " + std::to_string(delay) + " exceeds deadline " +
               std::to_string(dem.deadline_cycles)});
    }
  }

  const LoadMatrix load = load_matrix(inst, sol);
  for (ArcId a = 0; static_cast<size_t>(a) < inst.num_arcs(); ++a) {
    const int64_t cap = inst.arc(a).capacity_du;
    for (int c = 0; c < inst.cycles(); ++c) {
      const int64_t used = load.at(a, c);
      if (used > cap) {
        report.violations.push_back(
            {ViolationKind::kCapacity, -1, a, c, used - cap,
             inst.node_name(inst.arc(a).src) + " -> " +
                 inst.node_name(inst.arc(a).dst) + " carries " +
                 std::to_string(used) + " du, capacity " +
                 std::to_string(cap)});
      }
    }
  }

  report.feasible = report.violations.empty();
  return report;
}

bool fits_residual(const Instance& inst, const LoadMatrix& load,
                   const SPath& p) {
  const Demand& dem = inst.demand(p.demand);
  const int C = inst.cycles();
  int shift = 0;
  for (size_t k = 0; k < p.arcs.size(); ++k) {
    const ArcId a = p.arcs[k];
    const int64_t cap = inst.arc(a).capacity_du;
    const int offset = shift % C;
    for (int c = 0; c < C; ++c) {
      const int64_t bw = dem.pattern[(c + offset) % C];
      if (bw != 0 && load.at(a, c) + bw > cap) return false;
    }
    shift += inst.arc(a).delay_cycles;
    if (k < p.shifts.size()) shift += p.shifts[k];
  }
  return true;
}

}  // namespace csqf
