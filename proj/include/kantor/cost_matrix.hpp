#pragma once

#include <cmath>
#include <vector>

#include "kantor/extreal.hpp"
#include "kantor/types.hpp"

namespace kantor {

// Cost A(x, y) on a finite space; entries in (-inf, +inf].  +inf marks a
// forbidden transition.  Rows that are entirely +inf are legal but make the
// induced backward operator non-standard; standard() reports this.
struct CostMatrix {
  int n = 0;
  std::vector<ExtReal> a;  // row-major

  CostMatrix() = default;
  explicit CostMatrix(int n_, ExtReal fill = ExtReal::inf())
      : n(n_), a(static_cast<std::size_t>(n_) * n_, fill) {
    if (fill.neg_inf_p()) throw SchemaError("cost", "-inf entry not allowed");
  }
  CostMatrix(int n_, std::vector<ExtReal> a_) : n(n_), a(std::move(a_)) {
    if (a.size() != static_cast<std::size_t>(n) * n)
      throw DimensionMismatch("CostMatrix", a.size(), static_cast<std::size_t>(n) * n);
    for (auto x : a)
      if (x.neg_inf_p()) throw SchemaError("cost", "-inf entry not allowed");
  }

  ExtReal& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  ExtReal at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

  bool standard() const {  // every row has a finite entry
    for (int i = 0; i < n; ++i) {
      bool ok = false;
      for (int j = 0; j < n && !ok; ++j) ok = at(i, j).finite();
      if (!ok) return false;
    }
    return true;
  }

  std::vector<int> infinite_rows() const {
    std::vector<int> out;
    for (int i = 0; i < n; ++i) {
      bool any = false;
      for (int j = 0; j < n && !any; ++j) any = at(i, j).finite();
      if (!any) out.push_back(i);
    }
    return out;
  }

  bool all_finite() const {
    for (auto x : a)
      if (!x.finite()) return false;
    return true;
  }

  bool integer_valued() const {
    for (auto x : a)
      if (x.finite() && x.value() != std::floor(x.value())) return false;
    return true;
  }

  ExtReal min_entry() const {
    ExtReal m = ExtReal::inf();
    for (auto x : a) m = ext_min(m, x);
    return m;
  }
  ExtReal max_finite_entry() const {
    ExtReal m = ExtReal::neg_inf();
    for (auto x : a)
      if (x.finite()) m = ext_max(m, x);
    return m;
  }

  // A - c on finite entries; +inf stays +inf.
  CostMatrix shifted(double c) const {
    CostMatrix out = *this;
    for (auto& x : out.a)
      if (x.finite()) x = ExtReal(x.value() - c);
    return out;
  }

  CostMatrix scaled(double s) const {
    CostMatrix out = *this;
    for (auto& x : out.a)
      if (x.finite()) x = ExtReal(x.value() * s);
    return out;
  }

  friend CostMatrix entrywise_min(const CostMatrix& A, const CostMatrix& B) {
    if (A.n != B.n) throw DimensionMismatch("entrywise_min", B.n, A.n);
    CostMatrix out = A;
    for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] = ext_min(out.a[i], B.a[i]);
    return out;
  }

  bool operator==(const CostMatrix&) const = default;
};

// |x - y|^p on a one-dimensional grid of points.
inline CostMatrix power_cost(const std::vector<double>& grid, double p) {
  int n = static_cast<int>(grid.size());
  CostMatrix A(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A.at(i, j) = ExtReal(std::pow(std::abs(grid[i] - grid[j]), p));
  return A;
}

}  // namespace kantor
