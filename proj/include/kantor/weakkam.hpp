#pragma once

#include <utility>

#include "kantor/cost_matrix.hpp"
#include "kantor/types.hpp"

namespace kantor {

// Peierls barrier via the critical-node formula: with B = A - c and
// B+ = kleene_plus(B),  A_inf(x,y) = min over z with B+(z,z)=0 of
// B+(x,z) + B+(z,y).
CostMatrix peierls_barrier(const CostMatrix& A, double c, double tol = 1e-9);

// Independent route: entrywise min of A_k - k c over the window N/2 <= k <= N.
CostMatrix peierls_oracle(const CostMatrix& A, double c, int N);

struct PeierlsComparison {
  CostMatrix formula;
  CostMatrix window;
  std::vector<std::pair<int, int>> flagged;  // entries where the routes disagree
  double max_gap = 0.0;                      // over unflagged finite entries
};
PeierlsComparison compare_peierls(const CostMatrix& A, double c, int N, double tol = 1e-9);

struct WeakKamBundle {
  double c = 0.0;
  double tol = 1e-9;
  CostMatrix a_inf;
  std::vector<int> aubry;                         // {x : A_inf(x,x) = 0}
  std::vector<std::pair<int, int>> mather_pairs;  // {(x,y) : A(x,y) + A_inf(y,x) = c}
  Potential h;                                    // normalized solution, -inf off basin
  Potential psi0, psi1;                           // canonical conjugate pair (from f = 0)
};

WeakKamBundle make_weak_kam_bundle(const CostMatrix& A, double tol = 1e-9);

struct BundleChecks {
  double fixed_point = 0.0;   // |T h + c - h| over finite entries
  double idempotence = 0.0;   // |A_inf * A_inf - A_inf|
  double absorption = 0.0;    // |(A-c) * A_inf - A_inf| and mirrored
  double conjugacy = 0.0;     // |psi0 - T_inf^-(psi1)|
  double aubry_match = 0.0;   // |psi0 - psi1| on the Aubry set
  bool measure_in_D = false;  // optimal coupling supported inside the Mather set
  double max_residual() const;
};
BundleChecks verify_bundle(const CostMatrix& A, const WeakKamBundle& b);

// (T_inf^- f, T_inf^+ f): backward/forward actions of the barrier.
std::pair<Potential, Potential> weak_kam_ops(const WeakKamBundle& b, const Potential& f);

struct ConjugateCertificate {
  Potential psi0, psi1;
  double cross = 0.0;       // psi0 vs T_inf^- psi1
  double order_up = 0.0;    // violation of T+ T- f >= f
  double order_down = 0.0;  // violation of T- T+ f <= f
  double triple = 0.0;      // T- T+ T- f vs T- f
  double aubry = 0.0;       // psi0 vs psi1 on the Aubry set
};
ConjugateCertificate conjugate_pair(const WeakKamBundle& b, const Potential& f);

struct SubsolutionResult {
  Potential phi;
  bool dichotomy = false;  // every x has some n <= N with T^n g + n c < g
  bool certified = false;
  double residual = 0.0;  // positive part of T phi + c - phi
};
SubsolutionResult subsolution_phi(const CostMatrix& A, double c, const Potential& g, int N);

struct PowerBoundedReport {
  std::vector<double> sup_seq;  // sup_x (T^n g + n c)
  double spread = 0.0;          // max - min of the sup sequence
  bool bounded = false;         // finite spread and no drift between late windows
  Potential h;
  double residual = 0.0;  // |T h + c - h| over finite entries
};
PowerBoundedReport power_bounded_check(const CostMatrix& A, const Potential& g, int N, double c);

struct RecessionReport {
  Potential t_r_g;  // recession action: sup of g over one-step feasible targets
  Potential ghat;   // envelope: max of g over the reflexive-transitive closure
  bool inequalities_ok = false;  // Tg + inf A <= T_r g <= ghat
  bool hat_idempotent = false;
  bool ran_weak_kam = false;  // only when c = inf A
  Potential h;
  double residual = 0.0;
};
RecessionReport recession_envelope(const CostMatrix& A, const Potential& g);

}  // namespace kantor
