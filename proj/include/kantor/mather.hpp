#pragma once

#include "kantor/cost_matrix.hpp"
#include "kantor/types.hpp"

namespace kantor {

struct MinMeanCycle {
  ExtReal c = ExtReal::inf();  // +inf when no finite-cost cycle exists
  std::vector<int> cycle;      // closed node sequence (front == back), empty iff c = +inf
};

// Minimum mean cycle of the finite-cost edge graph, via Karp's recurrence
// with a multi-node source, plus a tight-edge recovery pass for the witness.
MinMeanCycle mather_constant_cycle(const CostMatrix& A);

struct MatherLp {
  ExtReal value = ExtReal::inf();
  Coupling pi;  // optimal coupling with equal marginals; empty when value = +inf
};

// min <A, pi> over couplings with equal marginals, as a dense-simplex LP.
MatherLp mather_constant_lp(const CostMatrix& A);

struct MatherDiagnostics {
  bool applicable = false;          // strongly connected finite-edge graph with finite c
  double c = 0.0;
  std::vector<double> m_n;          // min entry of A_n, n = 1..N
  std::vector<double> ratio;        // m_n / n
  double K = 0.0;                   // max_n |m_n - n c|
  std::vector<double> cesaro;       // <T^n g, mu_bar> / n
  double cesaro_gap = 0.0;          // |cesaro_N + c|
  bool envelope_ok = false;         // |m_n/n - c| <= K/n for all n
};

MatherDiagnostics convergence_diagnostics(const CostMatrix& A, const Potential& g, int N);

// Finite potential h with min_x (h - Th)(x) = c(T), attaining the sup-inf
// dual.  Throws CertificateUnavailable when c(T) = +inf.
Potential dual_certificate(const CostMatrix& A);

struct MatherCertificate {
  double c = 0.0;
  std::vector<int> cycle;
  Coupling pi;
  Potential h;
  double K = 0.0;
  double route_gap = 0.0;  // |c_cycle - c_lp|
};

// Assembles both routes plus the dual potential and cross-checks them.
MatherCertificate make_mather_certificate(const CostMatrix& A, const Potential& g, int N);

}  // namespace kantor
