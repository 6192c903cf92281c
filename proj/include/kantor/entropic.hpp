#pragma once

#include "kantor/cost_matrix.hpp"
#include "kantor/types.hpp"

namespace kantor {

// log <m, e^g> with the usual max shift; -inf entries of g contribute nothing.
double log_dot_exp(const std::vector<double>& m, const Potential& g);

// (T g)(x) = eps log sum_y nu(y) exp((g(y) - C(x,y)) / eps).
Potential entropic_apply(const CostMatrix& C, const ProbVector& nu, double epsilon,
                         const Potential& g);

struct SinkhornResult {
  Potential phi, psi;
  Coupling coupling;
  long iterations = 0;
  double marginal_residual = 0.0;  // l1 gap of the coupling marginals
  double kappa_hat = 0.0;          // measured contraction factor in the oscillation seminorm
  bool converged = false;
};

// Log-domain Sinkhorn; potentials only, never raw kernel products.
SinkhornResult sinkhorn_solve(const CostMatrix& C, const ProbVector& mu, const ProbVector& nu,
                              double epsilon, double tol = 1e-9, long max_iter = 1000000);

struct MarkovSemigroup {
  StochasticMatrix P;
  std::vector<double> m;  // stationary distribution
};

// Requires an irreducible aperiodic chain; finds m by power iteration.
MarkovSemigroup make_markov_semigroup(const StochasticMatrix& P, double tol = 1e-12,
                                      long max_iter = 1000000);

// T_t f = log (P^t e^f), t >= 0.
Potential markov_semigroup_apply(const MarkovSemigroup& S, const Potential& f, long t);

// T_inf f = log <m, e^f> as a constant potential.
Potential markov_semigroup_limit(const MarkovSemigroup& S, const Potential& f);

struct SchrodingerResult {
  double lp_value = 0.0;  // sup_f { <f, nu> - log <m, e^f> } at f* = log(nu/m)
  double kl_value = 0.0;  // KL(nu || m)
  Potential fstar;
};
SchrodingerResult schrodinger_duality(const MarkovSemigroup& S, const ProbVector& nu);

}  // namespace kantor
