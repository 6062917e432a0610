#include "csqfplan/lp.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>

namespace csqf::lp {

int Simplex::add_row(double rhs) {
  if (!(rhs >= 0))
    throw LpError("row right-hand side must be non-negative, got " +
                  std::to_string(rhs));
  rhs_.push_back(rhs);
  slack_position_.push_back(-1);  // becomes basic in ensure_basis_current
  return static_cast<int>(rhs_.size()) - 1;
}

int Simplex::add_column(double objective,
                        std::vector<std::pair<int, double>> coeffs) {
  for (const auto& [row, value] : coeffs) {
    if (row < 0 || static_cast<size_t>(row) >= rhs_.size())
      throw LpError("column references unknown row " + std::to_string(row));
    if (!std::isfinite(value)) throw LpError("non-finite coefficient");
  }
  cols_.push_back({objective, std::move(coeffs)});
  position_.push_back(-1);
  return static_cast<int>(cols_.size()) - 1;
}

void Simplex::ensure_basis_current() {
  const size_t m = rhs_.size();
  if (basis_rows_ == m) return;
#ifndef NDEBUG
  // Basic columns must be untouched by rows appended since the last solve,
  // otherwise the block-diagonal basis extension below would be wrong.
  for (size_t i = 0; i < basis_rows_; ++i) {
    const int handle = basic_[i];
    if (is_slack(handle)) continue;
    for (const auto& [row, value] : cols_[handle].coeffs)
      assert(static_cast<size_t>(row) < basis_rows_ || value == 0.0);
  }
#endif

  std::vector<double> grown(m * m, 0.0);
  for (size_t i = 0; i < basis_rows_; ++i)
    std::copy_n(binv_.begin() + i * basis_rows_, basis_rows_,
                grown.begin() + i * m);
  for (size_t i = basis_rows_; i < m; ++i) grown[i * m + i] = 1.0;
  binv_ = std::move(grown);

  basic_.resize(m);
  xb_.resize(m);
  for (size_t i = basis_rows_; i < m; ++i) {
    basic_[i] = slack_handle(static_cast<int>(i));
    slack_position_[i] = static_cast<int>(i);
    xb_[i] = rhs_[i];
  }
  basis_rows_ = m;
}

void Simplex::refactorize() {
  const size_t m = rhs_.size();
  ++stats_.refactorizations;

  // Gauss-Jordan on [B | I] with partial pivoting.
  std::vector<double> work(m * 2 * m, 0.0);
  const size_t stride = 2 * m;
  for (size_t i = 0; i < m; ++i) work[i * stride + m + i] = 1.0;
  for (size_t col = 0; col < m; ++col) {
    const int handle = basic_[col];
    if (is_slack(handle)) {
      work[static_cast<size_t>(slack_row(handle)) * stride + col] = 1.0;
    } else {
      for (const auto& [row, value] : cols_[handle].coeffs)
        work[static_cast<size_t>(row) * stride + col] = value;
    }
  }

  for (size_t k = 0; k < m; ++k) {
    size_t pivot_row = k;
    double best = std::abs(work[k * stride + k]);
    for (size_t i = k + 1; i < m; ++i) {
      const double cand = std::abs(work[i * stride + k]);
      if (cand > best) {
        best = cand;
        pivot_row = i;
      }
    }
    if (best < 1e-12) throw LpError("singular basis during refactorization");
    if (pivot_row != k)
      std::swap_ranges(work.begin() + k * stride,
                       work.begin() + (k + 1) * stride,
                       work.begin() + pivot_row * stride);
    const double inv = 1.0 / work[k * stride + k];
    for (size_t j = k; j < stride; ++j) work[k * stride + j] *= inv;
    for (size_t i = 0; i < m; ++i) {
      if (i == k) continue;
      const double f = work[i * stride + k];
      if (f == 0.0) continue;
      for (size_t j = k; j < stride; ++j)
        work[i * stride + j] -= f * work[k * stride + j];
    }
  }

  for (size_t i = 0; i < m; ++i)
    std::copy_n(work.begin() + i * stride + m, m, binv_.begin() + i * m);

  for (size_t i = 0; i < m; ++i) {
    double v = 0;
    for (size_t j = 0; j < m; ++j) v += binv_[i * m + j] * rhs_[j];
    xb_[i] = v;
  }
}

std::vector<double> Simplex::compute_duals() const {
  const size_t m = rhs_.size();
  std::vector<double> y(m, 0.0);
  for (size_t i = 0; i < m; ++i) {
    const double cb = objective_of(basic_[i]);
    if (cb == 0.0) continue;
    const double* row = binv_.data() + i * m;
    for (size_t j = 0; j < m; ++j) y[j] += cb * row[j];
  }
  return y;
}

std::vector<double> Simplex::basis_column(int handle) const {
  const size_t m = rhs_.size();
  std::vector<double> alpha(m, 0.0);
  if (is_slack(handle)) {
    const size_t r = static_cast<size_t>(slack_row(handle));
    for (size_t i = 0; i < m; ++i) alpha[i] = binv_[i * m + r];
  } else {
    const Column& col = cols_[handle];
    for (size_t i = 0; i < m; ++i) {
      const double* row = binv_.data() + i * m;
      double v = 0;
      for (const auto& [r, value] : col.coeffs) v += row[r] * value;
      alpha[i] = v;
    }
  }
  return alpha;
}

double Simplex::reduced_cost(int handle, const std::vector<double>& y) const {
  if (is_slack(handle)) return -y[slack_row(handle)];
  const Column& col = cols_[handle];
  double d = col.objective;
  for (const auto& [row, value] : col.coeffs) d -= y[row] * value;
  return d;
}

void Simplex::pivot(int entering, int leaving_row,
                    const std::vector<double>& direction) {
  const size_t m = rhs_.size();
  const size_t r = static_cast<size_t>(leaving_row);
  const double piv = direction[r];
  if (std::abs(piv) < kPivotTol) throw LpError("zero pivot element");

  double* pivot_row = binv_.data() + r * m;
  const double inv = 1.0 / piv;
  for (size_t j = 0; j < m; ++j) pivot_row[j] *= inv;
  xb_[r] *= inv;
  for (size_t i = 0; i < m; ++i) {
    if (i == r) continue;
    const double f = direction[i];
    if (f == 0.0) continue;
    double* row = binv_.data() + i * m;
    for (size_t j = 0; j < m; ++j) row[j] -= f * pivot_row[j];
    xb_[i] -= f * xb_[r];
  }

  const int old = basic_[r];
  if (is_slack(old))
    slack_position_[slack_row(old)] = -1;
  else
    position_[old] = -1;
  basic_[r] = entering;
  if (is_slack(entering))
    slack_position_[slack_row(entering)] = leaving_row;
  else
    position_[entering] = leaving_row;
  ++stats_.pivots;
}

void Simplex::solve() {
  ensure_basis_current();
  ++stats_.solves;
  const size_t m = rhs_.size();
  const size_t n = cols_.size();
  if (m == 0) {
    for (const Column& col : cols_)
      if (col.objective > kOptTol)
        throw LpError("LP is unbounded (profitable column, no rows)");
    return;
  }

  const int64_t budget =
      20000 + 400 * static_cast<int64_t>(m + n);
  int64_t used = 0;
  int64_t since_refactor = 0;
  int64_t degenerate_streak = 0;
  bool bland = false;
  int feasibility_repairs = 0;

  // Bland ordering key used for anti-cycling tie-breaks.
  const auto order_key = [&](int handle) {
    return is_slack(handle) ? static_cast<int64_t>(n) + slack_row(handle)
                            : static_cast<int64_t>(handle);
  };

  for (;;) {
    const std::vector<double> y = compute_duals();

    int entering = 0;
    bool have_entering = false;
    double best = kOptTol;
    const auto consider = [&](int handle) {
      const double d = reduced_cost(handle, y);
      if (d <= kOptTol) return false;
      if (bland) {
        entering = handle;
        have_entering = true;
        return true;  // first eligible wins
      }
      if (d > best) {
        best = d;
        entering = handle;
        have_entering = true;
      }
      return false;
    };
    bool stop = false;
    for (size_t j = 0; j < n && !stop; ++j)
      if (position_[j] < 0) stop = consider(static_cast<int>(j));
    for (size_t i = 0; i < m && !stop; ++i)
      if (slack_position_[i] < 0) stop = consider(slack_handle(static_cast<int>(i)));

    if (!have_entering) {
      // Optimal by reduced costs; guard against accumulated drift before
      // declaring victory.
      if (!primal_consistent()) {
        if (++feasibility_repairs > 3)
          throw LpError("primal infeasibility persists after refactorization");
        refactorize();
        continue;
      }
      return;
    }

    const std::vector<double> alpha = basis_column(entering);
    int leaving = -1;
    double best_ratio = 0;
    for (size_t i = 0; i < m; ++i) {
      if (alpha[i] <= kPivotTol) continue;
      const double ratio = std::max(xb_[i], 0.0) / alpha[i];
      if (leaving < 0 || ratio < best_ratio - 1e-12 ||
          (ratio < best_ratio + 1e-12 &&
           order_key(basic_[i]) < order_key(basic_[leaving]))) {
        leaving = static_cast<int>(i);
        best_ratio = ratio;
      }
    }
    if (leaving < 0)
      throw LpError("LP is unbounded (no leaving row for entering column)");

    if (best_ratio <= 1e-12) {
      if (++degenerate_streak > 500 && !bland) bland = true;
    } else {
      degenerate_streak = 0;
    }

    pivot(entering, leaving, alpha);

    if (++used > budget)
      throw LpError("pivot budget exhausted after " + std::to_string(used) +
                    " pivots (" + std::to_string(m) + " rows, " +
                    std::to_string(n) + " cols)");
    if (++since_refactor >= 512) {
      refactorize();
      since_refactor = 0;
    }
  }
}

bool Simplex::primal_consistent() const {
  const size_t m = rhs_.size();
  for (size_t i = 0; i < m; ++i)
    if (xb_[i] < -1e-7) return false;

  // Row activity from scratch: basic structural columns at xb, slacks ignored
  // (they absorb the remainder); activity must not exceed rhs beyond a slack
  // rounding margin.
  std::vector<double> activity(m, 0.0);
  for (size_t i = 0; i < m; ++i) {
    const int handle = basic_[i];
    if (is_slack(handle)) continue;
    for (const auto& [row, value] : cols_[handle].coeffs)
      activity[row] += value * xb_[i];
  }
  for (size_t i = 0; i < m; ++i) {
    const double slack =
        slack_position_[i] >= 0 ? xb_[slack_position_[i]] : 0.0;
    if (std::abs(activity[i] + slack - rhs_[i]) > 1e-6) return false;
  }
  return true;
}

double Simplex::objective() const {
  double obj = 0;
  for (size_t i = 0; i < basis_rows_; ++i) {
    const int handle = basic_[i];
    if (!is_slack(handle)) obj += cols_[handle].objective * xb_[i];
  }
  return obj;
}

std::vector<double> Simplex::primal() const {
  std::vector<double> x(cols_.size(), 0.0);
  for (size_t j = 0; j < cols_.size(); ++j)
    if (position_[j] >= 0) x[j] = std::max(xb_[position_[j]], 0.0);
  return x;
}

std::vector<double> Simplex::duals() const {
  return compute_duals();
}

}  // namespace csqf::lp
