#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace csqf::lp {

class LpError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Primal simplex for LPs of the form
//
//   max  c^T x   s.t.  A x <= b,  x >= 0,  b >= 0
//
// with an explicitly maintained dense basis inverse. The all-slack basis is
// feasible, so no phase-1 is needed. Designed for column generation:
//
//  * columns may be added between solves (they enter nonbasic at zero, the
//    current basis stays optimal-feasible and the next solve resumes from it);
//  * rows may be added between solves provided no existing column has a
//    coefficient in them (the basis extends block-diagonally with the new
//    slack). This invariant is the caller's; it holds when rows are created
//    lazily the first time a column touches them.
//
// Duals are taken from the final basis (y = c_B B^-1); at optimality they are
// feasible for the dual up to kOptTol.
class Simplex {
 public:
  static constexpr double kOptTol = 1e-9;
  static constexpr double kPivotTol = 1e-9;

  struct Stats {
    int64_t pivots = 0;
    int refactorizations = 0;
    int solves = 0;
  };

  int add_row(double rhs);

  // coeffs: (row, value) pairs, rows existing, values finite. Returns the
  // column index.
  int add_column(double objective,
                 std::vector<std::pair<int, double>> coeffs);

  size_t num_rows() const { return rhs_.size(); }
  size_t num_cols() const { return cols_.size(); }

  // Runs primal simplex to optimality. Throws LpError on numerical failure
  // or when the pivot budget is exhausted.
  void solve();

  double objective() const;
  // x_j per column; zero for nonbasic columns.
  std::vector<double> primal() const;
  // y_i per row; >= -kOptTol at optimality.
  std::vector<double> duals() const;

  const Stats& stats() const { return stats_; }

 private:
  // Variable handles: j >= 0 is structural column j, handle < 0 is the slack
  // of row (-handle - 1). Slack handles stay stable as columns are added.
  static int slack_handle(int row) { return -row - 1; }
  static bool is_slack(int handle) { return handle < 0; }
  static int slack_row(int handle) { return -handle - 1; }

  double objective_of(int handle) const {
    return is_slack(handle) ? 0.0 : cols_[handle].objective;
  }

  void ensure_basis_current();
  void refactorize();
  std::vector<double> compute_duals() const;
  std::vector<double> basis_column(int handle) const;  // B^-1 * A_handle
  double reduced_cost(int handle, const std::vector<double>& y) const;
  void pivot(int entering, int leaving_row,
             const std::vector<double>& direction);
  bool primal_consistent() const;

  struct Column {
    double objective = 0;
    std::vector<std::pair<int, double>> coeffs;
  };

  std::vector<Column> cols_;
  std::vector<double> rhs_;

  // Basis state; valid for basis_rows_ rows (extension happens lazily when
  // rows were added since the last solve).
  size_t basis_rows_ = 0;
  std::vector<int> basic_;          // handle per row
  std::vector<int> position_;       // row of each basic structural col, -1 else
  std::vector<int> slack_position_; // row where each slack sits, -1 when nonbasic
  std::vector<double> binv_;        // row-major basis inverse
  std::vector<double> xb_;          // basic variable values

  Stats stats_;
};

}  // namespace csqf::lp
