#include "kantor/simplex.hpp"

#include <algorithm>
#include <cmath>

namespace kantor {

namespace {

struct Tableau {
  int m, nvars, ncols;  // ncols = nvars + m artificials
  std::vector<std::vector<double>> t;  // m rows of ncols + 1 (rhs last)
  std::vector<int> basis;
  std::vector<double> row_sign;
  std::vector<double> cost;  // current phase costs, size ncols
  std::vector<double> red;   // reduced costs
  double obj_shift = 0.0;

  double& at(int i, int j) { return t[i][j]; }
  double rhs(int i) const { return t[i][ncols]; }

  void compute_reduced() {
    red.assign(ncols, 0.0);
    for (int j = 0; j < ncols; ++j) {
      double z = 0;
      for (int i = 0; i < m; ++i) z += cost[basis[i]] * t[i][j];
      red[j] = cost[j] - z;
    }
  }

  void pivot(int r, int col) {
    double piv = t[r][col];
    for (int j = 0; j <= ncols; ++j) t[r][j] /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == r) continue;
      double f = t[i][col];
      if (f == 0.0) continue;
      for (int j = 0; j <= ncols; ++j) t[i][j] -= f * t[r][j];
    }
    double f = red[col];
    if (f != 0.0)
      for (int j = 0; j < ncols; ++j) red[j] -= f * t[r][j];
    basis[r] = col;
  }

  double objective() const {
    double z = obj_shift;
    for (int i = 0; i < m; ++i) z += cost[basis[i]] * t[i][ncols];
    return z;
  }
};

// Runs the simplex loop on the current phase.  eligible(j) gates entering
// columns.  Returns false if unbounded.
template <class Eligible>
bool run_phase(Tableau& tb, double tol, long max_iter, const Eligible& eligible) {
  tb.compute_reduced();
  int degenerate_streak = 0;
  for (long it = 0; it < max_iter; ++it) {
    const bool bland = degenerate_streak > 64;
    int enter = -1;
    double best = -tol;
    for (int j = 0; j < tb.ncols; ++j) {
      if (!eligible(j)) continue;
      if (tb.red[j] < best) {
        enter = j;
        if (bland) break;  // first negative index
        best = tb.red[j];
      }
    }
    if (enter < 0) return true;  // optimal
    int leave = -1;
    double best_ratio = 0;
    for (int i = 0; i < tb.m; ++i) {
      double a = tb.at(i, enter);
      if (a <= tol) continue;
      double ratio = tb.rhs(i) / a;
      if (leave < 0 || ratio < best_ratio - 1e-15 ||
          (std::abs(ratio - best_ratio) <= 1e-15 && tb.basis[i] < tb.basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) return false;  // unbounded
    degenerate_streak = best_ratio <= tol ? degenerate_streak + 1 : 0;
    tb.pivot(leave, enter);
  }
  throw NoConvergence("simplex", 0.0, max_iter);
}

}  // namespace

LpSolution solve_lp(const LpProblem& p, double tol, long max_iter) {
  const int m = static_cast<int>(p.rows.size());
  Tableau tb;
  tb.m = m;
  tb.nvars = p.nvars;
  tb.ncols = p.nvars + m;
  tb.t.assign(m, std::vector<double>(tb.ncols + 1, 0.0));
  tb.basis.resize(m);
  tb.row_sign.assign(m, 1.0);
  for (int i = 0; i < m; ++i) {
    double sgn = p.rhs[i] < 0 ? -1.0 : 1.0;
    tb.row_sign[i] = sgn;
    for (int j = 0; j < p.nvars; ++j) tb.t[i][j] = sgn * p.rows[i][j];
    tb.t[i][p.nvars + i] = 1.0;
    tb.t[i][tb.ncols] = sgn * p.rhs[i];
    tb.basis[i] = p.nvars + i;
  }

  // Phase I: minimize the artificial mass.
  tb.cost.assign(tb.ncols, 0.0);
  for (int i = 0; i < m; ++i) tb.cost[p.nvars + i] = 1.0;
  if (!run_phase(tb, tol, max_iter, [](int) { return true; }))
    throw NoConvergence("simplex phase I unbounded", 0.0, 0);
  LpSolution sol;
  if (tb.objective() > 1e-7) {
    sol.status = LpStatus::Infeasible;
    return sol;
  }
  // Pivot artificials out of the basis where the row has support on real
  // columns; rows without support are redundant and keep a zero artificial.
  for (int i = 0; i < m; ++i) {
    if (tb.basis[i] < p.nvars) continue;
    int col = -1;
    for (int j = 0; j < p.nvars && col < 0; ++j)
      if (std::abs(tb.at(i, j)) > 1e-9) col = j;
    if (col >= 0) {
      tb.compute_reduced();
      tb.pivot(i, col);
    }
  }

  // Phase II on the real objective; artificial columns may not re-enter.
  tb.cost.assign(tb.ncols, 0.0);
  for (int j = 0; j < p.nvars; ++j) tb.cost[j] = p.c[j];
  if (!run_phase(tb, tol, max_iter, [&](int j) { return j < p.nvars; })) {
    sol.status = LpStatus::Unbounded;
    return sol;
  }

  sol.status = LpStatus::Optimal;
  sol.x.assign(p.nvars, 0.0);
  for (int i = 0; i < m; ++i)
    if (tb.basis[i] < p.nvars) sol.x[tb.basis[i]] = tb.rhs(i);
  sol.value = tb.objective();

  // Duals: y = c_B B^-1; the artificial block of the tableau holds B^-1.
  sol.y.assign(m, 0.0);
  for (int i = 0; i < m; ++i) {
    double yi = 0;
    for (int k = 0; k < m; ++k) yi += tb.cost[tb.basis[k]] * tb.at(k, p.nvars + i);
    sol.y[i] = yi * tb.row_sign[i];
  }
  double dinf = 0;
  for (int j = 0; j < p.nvars; ++j) {
    double z = 0;
    for (int i = 0; i < m; ++i) z += sol.y[i] * p.rows[i][j];
    dinf = std::max(dinf, z - p.c[j]);
  }
  sol.dual_infeasibility = dinf;
  return sol;
}

}  // namespace kantor
