#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "kantor/errors.hpp"
#include "kantor/extreal.hpp"

namespace kantor {

// Function on a finite state space, valued in the extended reals.
struct Potential {
  std::vector<ExtReal> v;

  Potential() = default;
  explicit Potential(std::size_t n, ExtReal fill = ExtReal(0.0)) : v(n, fill) {}
  Potential(std::initializer_list<double> xs) {
    v.reserve(xs.size());
    for (double x : xs) v.emplace_back(x);
  }
  static Potential from(std::vector<ExtReal> xs) {
    Potential p;
    p.v = std::move(xs);
    return p;
  }

  std::size_t size() const { return v.size(); }
  ExtReal& operator[](std::size_t i) { return v[i]; }
  ExtReal operator[](std::size_t i) const { return v[i]; }

  bool proper() const {  // at least one finite entry
    for (auto x : v)
      if (x.finite()) return true;
    return false;
  }
  bool all_finite() const {
    for (auto x : v)
      if (!x.finite()) return false;
    return true;
  }
  bool bounded_above() const {
    for (auto x : v)
      if (x.pos_inf()) return false;
    return true;
  }

  ExtReal max() const {
    ExtReal m = ExtReal::neg_inf();
    for (auto x : v) m = ext_max(m, x);
    return m;
  }
  ExtReal min() const {
    ExtReal m = ExtReal::inf();
    for (auto x : v) m = ext_min(m, x);
    return m;
  }

  Potential shifted(double c) const {
    Potential out = *this;
    for (auto& x : out.v)
      if (x.finite()) x = ExtReal(x.value() + c);
    return out;
  }
};

// sup distance; comparisons against infinities of matching sign count as zero gap.
inline double sup_dist(const Potential& a, const Potential& b) {
  if (a.size() != b.size()) throw DimensionMismatch("sup_dist", b.size(), a.size());
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) continue;
    if (!a[i].finite() || !b[i].finite()) return std::numeric_limits<double>::infinity();
    d = std::max(d, std::abs(a[i].value() - b[i].value()));
  }
  return d;
}

// Oscillation seminorm (max - min)/2 over finite entries.
inline double osc_seminorm(const Potential& a) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (auto x : a.v) {
    if (!x.finite()) continue;
    lo = std::min(lo, x.value());
    hi = std::max(hi, x.value());
  }
  if (lo > hi) return 0.0;
  return (hi - lo) / 2.0;
}

struct ProbVector {
  std::vector<double> w;

  ProbVector() = default;
  explicit ProbVector(std::vector<double> w_, double tol = 1e-10) : w(std::move(w_)) {
    double s = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i] < -tol) throw SchemaError("measure[" + std::to_string(i) + "]", "negative mass");
      s += w[i];
    }
    if (std::abs(s - 1.0) > tol)
      throw SchemaError("measure", "mass " + std::to_string(s) + " != 1");
  }
  std::size_t size() const { return w.size(); }
  double operator[](std::size_t i) const { return w[i]; }
};

struct StochasticMatrix {
  int n = 0;
  std::vector<double> p;  // row-major

  StochasticMatrix() = default;
  StochasticMatrix(int n_, std::vector<double> p_, double tol = 1e-12)
      : n(n_), p(std::move(p_)) {
    if (p.size() != static_cast<std::size_t>(n) * n)
      throw DimensionMismatch("StochasticMatrix", p.size(), static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
      double s = 0;
      for (int j = 0; j < n; ++j) {
        if (at(i, j) < -tol)
          throw SchemaError("transition_matrix", "negative entry at row " + std::to_string(i));
        s += at(i, j);
      }
      if (std::abs(s - 1.0) > tol)
        throw SchemaError("transition_matrix",
                          "row " + std::to_string(i) + " sums to " + std::to_string(s));
    }
  }
  double& at(int i, int j) { return p[static_cast<std::size_t>(i) * n + j]; }
  double at(int i, int j) const { return p[static_cast<std::size_t>(i) * n + j]; }

  std::vector<double> apply(const std::vector<double>& x) const {  // row action: (Px)_i
    std::vector<double> y(n, 0.0);
    for (int i = 0; i < n; ++i) {
      double s = 0;
      for (int j = 0; j < n; ++j) s += at(i, j) * x[j];
      y[i] = s;
    }
    return y;
  }
  std::vector<double> apply_left(const std::vector<double>& mu) const {  // (mu P)_j
    std::vector<double> y(n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) y[j] += mu[i] * at(i, j);
    return y;
  }
};

// Probability measure on pairs, row-major.
struct Coupling {
  int n = 0, m = 0;
  std::vector<double> pi;

  Coupling() = default;
  Coupling(int n_, int m_) : n(n_), m(m_), pi(static_cast<std::size_t>(n_) * m_, 0.0) {}
  double& at(int i, int j) { return pi[static_cast<std::size_t>(i) * m + j]; }
  double at(int i, int j) const { return pi[static_cast<std::size_t>(i) * m + j]; }

  std::vector<double> row_sums() const {
    std::vector<double> r(n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) r[i] += at(i, j);
    return r;
  }
  std::vector<double> col_sums() const {
    std::vector<double> c(m, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) c[j] += at(i, j);
    return c;
  }
};

struct FiniteSpace {
  int n = 0;
  std::vector<std::string> labels;              // optional
  std::optional<std::vector<double>> metric;    // row-major n*n, optional

  void validate(double tol = 1e-12) const {
    if (!labels.empty() && labels.size() != static_cast<std::size_t>(n))
      throw DimensionMismatch("FiniteSpace.labels", labels.size(), n);
    if (metric) {
      const auto& d = *metric;
      if (d.size() != static_cast<std::size_t>(n) * n)
        throw DimensionMismatch("FiniteSpace.metric", d.size(), static_cast<std::size_t>(n) * n);
      auto at = [&](int i, int j) { return d[static_cast<std::size_t>(i) * n + j]; };
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (at(i, j) < -tol || std::abs(at(i, j) - at(j, i)) > tol)
            throw SchemaError("metric", "not a symmetric nonnegative matrix");
          for (int k = 0; k < n; ++k)
            if (at(i, j) > at(i, k) + at(k, j) + tol)
              throw SchemaError("metric", "triangle inequality fails");
        }
    }
  }
};

}  // namespace kantor
