#include <algorithm>

#include "csqfplan/greedy.hpp"
#include "csqfplan/oracle.hpp"
#include "csqfplan/validate.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace csqf;
using testfix::make_fig2;
using testfix::make_tiny_random;

namespace {

bool has_violation(const ValidationReport& report, ViolationKind kind) {
  return std::any_of(report.violations.begin(), report.violations.end(),
                     [&](const Violation& v) { return v.kind == kind; });
}

}  // namespace

TEST_CASE("the unshifted pair overloads the shared arc, the shifted one fits") {
  const auto fig = make_fig2(3);

  PlanSolution clash;
  clash.assignments = {fig.p1, fig.pprime};
  clash.objective = 5;
  const ValidationReport bad = validate(fig.instance, clash);
  CHECK(!bad.feasible);
  REQUIRE(bad.violations.size() == 1);
  CHECK(bad.violations[0].kind == ViolationKind::kCapacity);
  CHECK(bad.violations[0].arc == 1);
  CHECK(bad.violations[0].cycle == 1);          // the odd cycle
  CHECK(bad.violations[0].magnitude == 1);      // 4 du on capacity 3
  CHECK(load_matrix(fig.instance, clash).at(1, 1) == 4);

  PlanSolution shifted;
  shifted.assignments = {fig.p2, fig.pprime};
  shifted.objective = 5;
  CHECK(validate(fig.instance, shifted).feasible);

  const PlanSolution empty;
  const ValidationReport ok = validate(fig.instance, empty);
  CHECK(ok.feasible);
  CHECK(ok.violations.empty());
}

TEST_CASE("load matrix entries and additivity") {
  const auto fig = make_fig2(3);

  PlanSolution only_d;
  only_d.assignments = {fig.p1};
  only_d.objective = 3;
  const LoadMatrix load = load_matrix(fig.instance, only_d);
  CHECK(load.at(1, 1) == 2);
  CHECK(load.at(1, 0) == 1);
  CHECK(load.at(0, 0) == 2);  // first arc carries the raw pattern
  CHECK(load.at(0, 1) == 1);
  CHECK(load.peak(1) == 2);

  const PlanSolution none;
  const LoadMatrix zero = load_matrix(fig.instance, none);
  for (ArcId a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c) CHECK(zero.at(a, c) == 0);

  // Disjoint paths add up to the union of the single-demand matrices.
  PlanSolution both;
  both.assignments = {fig.p1, fig.pprime};
  both.objective = 5;
  PlanSolution only_dprime;
  only_dprime.assignments = {fig.pprime};
  only_dprime.objective = 2;
  const LoadMatrix lhs = load_matrix(fig.instance, both);
  const LoadMatrix a = load_matrix(fig.instance, only_d);
  const LoadMatrix b = load_matrix(fig.instance, only_dprime);
  for (ArcId arc = 0; arc < 2; ++arc)
    for (int c = 0; c < 2; ++c)
      CHECK(lhs.at(arc, c) == a.at(arc, c) + b.at(arc, c));
}

TEST_CASE("deadline, shift bound, connectivity and uniqueness reporting") {
  const auto fig = make_fig2(3, /*deadline_d=*/7);  // p2 (delay 8) now breaches

  PlanSolution late;
  late.assignments = {fig.p2};
  late.objective = 3;
  const ValidationReport deadline = validate(fig.instance, late);
  CHECK(!deadline.feasible);
  CHECK(has_violation(deadline, ViolationKind::kDeadline));
  CHECK(deadline.violations[0].magnitude == 1);

  SPath out_of_range = fig.p1;
  out_of_range.shifts = {2};  // R = 1
  PlanSolution shifts;
  shifts.assignments = {out_of_range};
  shifts.objective = 3;
  CHECK(has_violation(validate(fig.instance, shifts),
                      ViolationKind::kShiftBound));

  SPath detached = fig.p1;
  detached.arcs = {1};  // starts at u instead of s
  detached.shifts = {};
  PlanSolution broken;
  broken.assignments = {detached};
  broken.objective = 3;
  CHECK(has_violation(validate(fig.instance, broken),
                      ViolationKind::kConnectivity));

  PlanSolution doubled;
  doubled.assignments = {fig.p1, fig.p2};
  doubled.objective = 6;
  CHECK(has_violation(validate(fig.instance, doubled),
                      ViolationKind::kUniqueness));
}

TEST_CASE("malformed references raise structural errors, not reports") {
  const auto fig = make_fig2();
  PlanSolution bogus;
  bogus.assignments = {SPath{7, {0, 1}, {0}}};
  bogus.objective = 0;
  CHECK_THROWS_AS(validate(fig.instance, bogus), StructuralError);
  CHECK_THROWS_AS(load_matrix(fig.instance, bogus), StructuralError);

  PlanSolution ghost_arc;
  ghost_arc.assignments = {SPath{0, {0, 9}, {0}}};
  ghost_arc.objective = 0;
  CHECK_THROWS_AS(validate(fig.instance, ghost_arc), StructuralError);
}

TEST_CASE("feasible solutions stay feasible when a demand is dropped") {
  for (uint64_t seed = 1; seed <= 25; ++seed) {
    const Instance inst = make_tiny_random(seed);
    const PlanSolution plan =
        greedy_plan(inst, testfix::all_demands(inst), {});
    REQUIRE(validate(inst, plan).feasible);
    for (size_t drop = 0; drop < plan.assignments.size(); ++drop) {
      PlanSolution reduced;
      for (size_t i = 0; i < plan.assignments.size(); ++i)
        if (i != drop) reduced.assignments.push_back(plan.assignments[i]);
      reduced.objective = solution_bandwidth(inst, reduced);
      CHECK(validate(inst, reduced).feasible);
    }
  }
}

TEST_CASE("report serializes with violation context") {
  const auto fig = make_fig2(3);
  PlanSolution clash;
  clash.assignments = {fig.p1, fig.pprime};
  clash.objective = 5;
  const std::string text = validate(fig.instance, clash).to_json();
  CHECK(text.find("\"feasible\": false") != std::string::npos);
  CHECK(text.find("capacity") != std::string::npos);
}
