#pragma once

#include <functional>
#include <memory>
#include <string>

#include "kantor/cost_matrix.hpp"
#include "kantor/types.hpp"

namespace kantor {

// A monotone operator on potentials.  Kinds constructed here are Kantorovich
// operators (monotone, affine on constants, convex or concave, 1-Lipschitz
// when standard) except the filling scheme, which is only monotone and
// positively 1-homogeneous; kantorovich() reports which contract applies.
class KantorovichOp {
 public:
  enum class Sense { Backward, Forward, Linear };

  static KantorovichOp max_plus(CostMatrix A);
  static KantorovichOp forward_cost(CostMatrix A);
  static KantorovichOp entropic(CostMatrix C, ProbVector nu, double epsilon);
  static KantorovichOp markov(StochasticMatrix P);
  static KantorovichOp reduite_step(StochasticMatrix P);   // g -> g v Pg
  static KantorovichOp filling_step(StochasticMatrix P);   // g -> P g+ - g-
  static KantorovichOp affine_shift(std::vector<int> sigma, std::vector<double> abar);
  static KantorovichOp convex_energy(ProbVector m, double offset);  // log <m, e^g> + k
  static KantorovichOp recession(CostMatrix A);

  static KantorovichOp convex_combination(KantorovichOp a, KantorovichOp b, double lambda);
  static KantorovichOp pointwise_max(KantorovichOp a, KantorovichOp b);
  static KantorovichOp scaled(KantorovichOp a, double lambda);  // (1/l) T(l g)

  Potential apply(const Potential& g) const;
  int dim() const { return dim_; }
  Sense sense() const { return sense_; }
  bool standard() const { return standard_; }
  bool kantorovich() const { return kantorovich_; }
  const std::string& kind() const { return kind_; }

 private:
  KantorovichOp() = default;
  std::function<Potential(const Potential&)> fn_;
  int dim_ = 0;
  Sense sense_ = Sense::Backward;
  bool standard_ = true;
  bool kantorovich_ = true;
  std::string kind_;
};

struct AxiomReport {
  long trials = 0;
  std::uint64_t seed = 0;
  double tol = 0.0;
  double monotone = 0.0;
  double constant_affine = 0.0;
  double convexity = 0.0;  // in the operator's declared sense
  double lipschitz = 0.0;  // only probed when standard
  bool lipschitz_checked = false;
  double max_violation() const;
  bool pass() const;
};

// Samples potentials on the dyadic grid 2^-20 in [-10, 10] so the max-plus
// identities are probed in exact arithmetic.
AxiomReport check_axioms(const KantorovichOp& op, long trials, std::uint64_t seed,
                         double tol = 1e-9);

struct ReduiteResult {
  Potential ghat;
  long iterations = 0;
  double residual = 0.0;
};
// Least fixed point of g -> g v Pg above g.
ReduiteResult reduite_fixed_point(const StochasticMatrix& P, const Potential& g,
                                  double tol = 1e-9, long max_iter = 1000000);

struct FillingTrace {
  std::vector<Potential> iterates;               // T g, T^2 g, ...
  std::vector<double> invariant_pairing;         // <mu, T^k g> for the given invariant mu
};
FillingTrace filling_scheme_iterate(const StochasticMatrix& P, const Potential& g,
                                    const ProbVector& invariant_mu, int steps);

}  // namespace kantor
