#include <cmath>
#include <vector>

#include "csqfplan/lp.hpp"
#include "csqfplan/rng.hpp"
#include "doctest.h"

using csqf::Rng;
using csqf::lp::LpError;
using csqf::lp::Simplex;

namespace {

// Optimality certificate by LP duality: primal feasible, dual feasible,
// objectives equal. Independent of the pivoting path taken.
void check_certificate(Simplex& lp,
                       const std::vector<double>& rhs,
                       const std::vector<double>& obj,
                       const std::vector<std::vector<std::pair<int, double>>>&
                           cols) {
  const std::vector<double> x = lp.primal();
  const std::vector<double> y = lp.duals();
  std::vector<double> activity(rhs.size(), 0.0);
  for (size_t j = 0; j < cols.size(); ++j) {
    CHECK(x[j] >= -1e-7);
    for (const auto& [row, v] : cols[j]) activity[row] += v * x[j];
  }
  for (size_t i = 0; i < rhs.size(); ++i) {
    CHECK(activity[i] <= rhs[i] + 1e-6);
    CHECK(y[i] >= -1e-7);
  }
  for (size_t j = 0; j < cols.size(); ++j) {
    double reduced = obj[j];
    for (const auto& [row, v] : cols[j]) reduced -= y[row] * v;
    CHECK(reduced <= 1e-6);                       // dual feasibility
    CHECK(std::abs(reduced * x[j]) <= 1e-6);      // complementary slackness
  }
  double dual_obj = 0;
  for (size_t i = 0; i < rhs.size(); ++i) dual_obj += y[i] * rhs[i];
  CHECK(lp.objective() == doctest::Approx(dual_obj).epsilon(1e-7));
}

}  // namespace

TEST_CASE("single variable against two rows") {
  Simplex lp;
  const int r0 = lp.add_row(1.0);
  const int r1 = lp.add_row(8.0);
  lp.add_column(3.0, {{r0, 1.0}, {r1, 2.0}});
  lp.solve();
  CHECK(lp.objective() == doctest::Approx(3.0));
  CHECK(lp.primal()[0] == doctest::Approx(1.0));
  CHECK(lp.duals()[0] == doctest::Approx(3.0));
  CHECK(lp.duals()[1] == doctest::Approx(0.0));
}

TEST_CASE("two variables, binding mix known in closed form") {
  // max 3a + 2b  s.t.  a + b <= 4,  a + 3b <= 6
  Simplex lp;
  const int r0 = lp.add_row(4.0);
  const int r1 = lp.add_row(6.0);
  lp.add_column(3.0, {{r0, 1.0}, {r1, 1.0}});
  lp.add_column(2.0, {{r0, 1.0}, {r1, 3.0}});
  lp.solve();
  CHECK(lp.objective() == doctest::Approx(12.0));
  CHECK(lp.primal()[0] == doctest::Approx(4.0));
  CHECK(lp.primal()[1] == doctest::Approx(0.0));
  check_certificate(lp, {4, 6}, {3, 2}, {{{r0, 1.0}, {r1, 1.0}},
                                         {{r0, 1.0}, {r1, 3.0}}});
}

TEST_CASE("degenerate and redundant rows") {
  // max a + b  s.t.  a <= 1, b <= 1, a + b <= 2 (redundant)
  Simplex lp;
  const int r0 = lp.add_row(1.0);
  const int r1 = lp.add_row(1.0);
  const int r2 = lp.add_row(2.0);
  lp.add_column(1.0, {{r0, 1.0}, {r2, 1.0}});
  lp.add_column(1.0, {{r1, 1.0}, {r2, 1.0}});
  lp.solve();
  CHECK(lp.objective() == doctest::Approx(2.0));
  check_certificate(lp, {1, 1, 2},
                    {1, 1}, {{{r0, 1.0}, {r2, 1.0}}, {{r1, 1.0}, {r2, 1.0}}});
}

TEST_CASE("zero right-hand side forces a variable to zero") {
  Simplex lp;
  const int r0 = lp.add_row(0.0);
  lp.add_column(5.0, {{r0, 1.0}});
  lp.solve();
  CHECK(lp.objective() == doctest::Approx(0.0));
  CHECK(lp.primal()[0] == doctest::Approx(0.0));
}

TEST_CASE("unbounded problems are reported as hard errors") {
  Simplex lp;
  lp.add_row(1.0);
  lp.add_column(1.0, {});  // no constraining row
  CHECK_THROWS_AS(lp.solve(), LpError);

  Simplex no_rows;
  no_rows.add_column(1.0, {});
  CHECK_THROWS_AS(no_rows.solve(), LpError);
}

TEST_CASE("negative rhs and unknown rows are rejected") {
  Simplex lp;
  CHECK_THROWS_AS(lp.add_row(-1.0), LpError);
  CHECK_THROWS_AS(lp.add_column(1.0, {{0, 1.0}}), LpError);
}

TEST_CASE("warm restart after adding a column") {
  Simplex lp;
  const int r0 = lp.add_row(4.0);
  lp.add_column(1.0, {{r0, 1.0}});
  lp.solve();
  CHECK(lp.objective() == doctest::Approx(4.0));
  lp.add_column(3.0, {{r0, 2.0}});  // better rate per unit of the row
  lp.solve();
  CHECK(lp.objective() == doctest::Approx(6.0));
  CHECK(lp.primal()[0] == doctest::Approx(0.0));
  CHECK(lp.primal()[1] == doctest::Approx(2.0));
}

TEST_CASE("warm restart after adding untouched rows keeps the basis valid") {
  Simplex lp;
  const int r0 = lp.add_row(2.0);
  lp.add_column(1.0, {{r0, 1.0}});
  lp.solve();
  CHECK(lp.objective() == doctest::Approx(2.0));

  const int r1 = lp.add_row(1.0);
  lp.add_column(4.0, {{r0, 1.0}, {r1, 1.0}});
  lp.solve();
  // New column worth 4 takes the new row's unit; old column keeps the rest.
  CHECK(lp.objective() == doctest::Approx(4.0 + 1.0));
  const auto x = lp.primal();
  CHECK(x[0] == doctest::Approx(1.0));
  CHECK(x[1] == doctest::Approx(1.0));
}

TEST_CASE("random instances satisfy the duality certificate") {
  for (uint64_t seed = 1; seed <= 200; ++seed) {
    Rng rng(seed, "lp-random");
    const int m = static_cast<int>(rng.uniform_int(1, 5));
    const int n = static_cast<int>(rng.uniform_int(1, 6));
    Simplex lp;
    std::vector<double> rhs;
    for (int i = 0; i < m; ++i) {
      rhs.push_back(static_cast<double>(rng.uniform_int(0, 7)));
      lp.add_row(rhs.back());
    }
    std::vector<double> obj;
    std::vector<std::vector<std::pair<int, double>>> cols;
    for (int j = 0; j < n; ++j) {
      std::vector<std::pair<int, double>> coeffs;
      bool touched = false;
      for (int i = 0; i < m; ++i) {
        const int v = static_cast<int>(rng.uniform_int(0, 3));
        if (v > 0) {
          coeffs.emplace_back(i, static_cast<double>(v));
          touched = true;
        }
      }
      if (!touched) coeffs.emplace_back(0, 1.0);  // keep the LP bounded
      obj.push_back(static_cast<double>(rng.uniform_int(0, 9)));
      cols.push_back(coeffs);
      lp.add_column(obj.back(), coeffs);
    }
    lp.solve();
    check_certificate(lp, rhs, obj, cols);
  }
}

TEST_CASE("incremental column arrival matches a from-scratch solve") {
  for (uint64_t seed = 1; seed <= 50; ++seed) {
    Rng rng(seed, "lp-incremental");
    const int m = static_cast<int>(rng.uniform_int(2, 6));
    const int n = static_cast<int>(rng.uniform_int(3, 8));
    std::vector<double> rhs;
    std::vector<double> obj;
    std::vector<std::vector<std::pair<int, double>>> cols;
    for (int i = 0; i < m; ++i)
      rhs.push_back(static_cast<double>(rng.uniform_int(1, 9)));
    for (int j = 0; j < n; ++j) {
      std::vector<std::pair<int, double>> coeffs;
      for (int i = 0; i < m; ++i) {
        const int v = static_cast<int>(rng.uniform_int(0, 2));
        if (v > 0) coeffs.emplace_back(i, static_cast<double>(v));
      }
      if (coeffs.empty()) coeffs.emplace_back(0, 1.0);
      obj.push_back(static_cast<double>(rng.uniform_int(1, 9)));
      cols.push_back(coeffs);
    }

    Simplex incremental;
    for (const double b : rhs) incremental.add_row(b);
    for (int j = 0; j < n; ++j) {
      incremental.add_column(obj[j], cols[j]);
      incremental.solve();  // solve after every arrival
    }

    Simplex fresh;
    for (const double b : rhs) fresh.add_row(b);
    for (int j = 0; j < n; ++j) fresh.add_column(obj[j], cols[j]);
    fresh.solve();

    CHECK(incremental.objective() ==
          doctest::Approx(fresh.objective()).epsilon(1e-9));
  }
}
