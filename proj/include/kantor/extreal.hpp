#pragma once

#include <cassert>
#include <cmath>
#include <compare>
#include <limits>
#include <string>

#include "kantor/errors.hpp"

namespace kantor {

// Extended real: an IEEE double plus the two symbolic infinities.
// Addition of (+inf) and (-inf) throws; it never produces NaN.
class ExtReal {
 public:
  constexpr ExtReal() = default;
  constexpr ExtReal(double v) : v_(v) { assert(!std::isnan(v)); }

  static constexpr ExtReal inf() { return ExtReal(std::numeric_limits<double>::infinity()); }
  static constexpr ExtReal neg_inf() { return ExtReal(-std::numeric_limits<double>::infinity()); }

  constexpr double value() const { return v_; }
  constexpr bool finite() const { return std::isfinite(v_); }
  constexpr bool pos_inf() const { return std::isinf(v_) && v_ > 0; }
  constexpr bool neg_inf_p() const { return std::isinf(v_) && v_ < 0; }

  ExtReal operator+(ExtReal o) const {
    if (std::isinf(v_) && std::isinf(o.v_) && (v_ > 0) != (o.v_ > 0)) throw IndeterminateSum();
    return ExtReal(v_ + o.v_);
  }
  ExtReal operator-(ExtReal o) const {
    if (std::isinf(v_) && std::isinf(o.v_) && (v_ > 0) == (o.v_ > 0)) throw IndeterminateSum();
    return ExtReal(v_ - o.v_);
  }
  constexpr ExtReal operator-() const { return ExtReal(-v_); }

  constexpr auto operator<=>(const ExtReal&) const = default;

  std::string str() const {
    if (pos_inf()) return "inf";
    if (neg_inf_p()) return "-inf";
    return std::to_string(v_);
  }

 private:
  double v_ = 0.0;
};

constexpr ExtReal ext_min(ExtReal a, ExtReal b) { return a < b ? a : b; }
constexpr ExtReal ext_max(ExtReal a, ExtReal b) { return a < b ? b : a; }

// Pairing used by the backward reduction max_y (g(y) - A(x,y)):
// an infinite cost never helps, so it contributes the max-neutral -inf,
// regardless of g(y).  Likewise g(y) = -inf contributes -inf.
inline ExtReal backward_term(ExtReal g, ExtReal cost) {
  if (cost.pos_inf() || g.neg_inf_p()) return ExtReal::neg_inf();
  return ExtReal(g.value() - cost.value());
}

// Pairing used by the forward reduction min_x (f(x) + A(x,y)):
// an infinite cost contributes the min-neutral +inf regardless of f(x).
inline ExtReal forward_term(ExtReal f, ExtReal cost) {
  if (cost.pos_inf() || f.pos_inf()) return ExtReal::inf();
  return ExtReal(f.value() + cost.value());
}

// Path concatenation a + b for costs (never -inf individually).
inline ExtReal path_sum(ExtReal a, ExtReal b) {
  if (a.pos_inf() || b.pos_inf()) return ExtReal::inf();
  return ExtReal(a.value() + b.value());
}

}  // namespace kantor
