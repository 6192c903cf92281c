#pragma once

#include "kantor/cost_matrix.hpp"
#include "kantor/types.hpp"

namespace kantor {

// Backward action (T g)(x) = max_y { g(y) - A(x,y) }.
Potential backward_apply(const CostMatrix& A, const Potential& g);

// Forward action (T f)(y) = min_x { f(x) + A(x,y) }.
Potential forward_apply(const CostMatrix& A, const Potential& f);

// Inf-convolution (A * B)(x,y) = min_z { A(x,z) + B(z,y) }.
CostMatrix convolve(const CostMatrix& A, const CostMatrix& B);

// n-fold convolution power, n >= 1, via binary exponentiation.
CostMatrix minplus_power(const CostMatrix& A, long n);

// Detects a cycle with total weight < -tol; returns a witness node sequence
// (closed: front == back) or empty if none exists.
std::vector<int> find_negative_cycle(const CostMatrix& B, double tol = 1e-12);

// Kleene plus B+(x,y) = min_{n>=1} B_n(x,y): least cost over walks with at
// least one edge.  Requires min cycle mean >= -tol; throws NegativeCycle
// with a witness otherwise.
CostMatrix kleene_plus(const CostMatrix& B, double tol = 1e-12);

}  // namespace kantor
