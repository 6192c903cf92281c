#pragma once

#include <vector>

#include "kantor/errors.hpp"

namespace kantor {

// min c.x   s.t.  rows[i] . x = rhs[i],  x >= 0
struct LpProblem {
  int nvars = 0;
  std::vector<double> c;
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;

  void add_row(std::vector<double> coeffs, double b) {
    rows.push_back(std::move(coeffs));
    rhs.push_back(b);
  }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Optimal;
  double value = 0.0;
  std::vector<double> x;
  std::vector<double> y;               // one dual per row
  double dual_infeasibility = 0.0;     // max positive part of y.A_j - c_j
};

// Dense two-phase primal simplex.  Pivot selection is Dantzig with
// lowest-index tie breaks, falling back to Bland's rule after a run of
// degenerate pivots so termination is guaranteed.
LpSolution solve_lp(const LpProblem& p, double tol = 1e-9, long max_iter = 200000);

}  // namespace kantor
