#pragma once

#include "kantor/cost_matrix.hpp"
#include "kantor/types.hpp"

namespace kantor {

// Linear transfer on a finite space: the value T(mu, nu) of moving mu to nu.
struct TransferProblem {
  enum class Kind { CostOT, ConvexEnergyKL, TransferSet, PointMap };
  Kind kind = Kind::CostOT;
  int n = 0;
  CostMatrix cost;        // CostOT; TransferSet stores the 0 / +inf indicator here
  ProbVector reference;   // ConvexEnergyKL: m
  double offset = 0.0;    // ConvexEnergyKL: k, value is KL(nu || m) - k
  std::vector<int> map;   // PointMap: F

  static TransferProblem cost_ot(CostMatrix A);
  static TransferProblem convex_energy_kl(ProbVector m, double offset);
  static TransferProblem transfer_set(const std::vector<std::vector<bool>>& feasible);
  static TransferProblem point_map(std::vector<int> F);
};

// T(mu, nu); +inf when no admissible plan exists.
ExtReal transfer_value(const TransferProblem& p, const ProbVector& mu, const ProbVector& nu);

struct DualResult {
  double value = 0.0;
  Potential gstar;
  double gap = 0.0;  // |primal - dual|
};
// Kantorovich duality sup_g { <nu, g> - <mu, T g> }; CostOT reads the optimal
// g from the LP duals, ConvexEnergyKL uses the closed form g* = log(nu/m).
DualResult dual_value(const TransferProblem& p, const ProbVector& mu, const ProbVector& nu);

struct ConvolveCheck {
  ExtReal joint;     // min over the intermediate marginal, solved as one LP
  ExtReal via_cost;  // transfer value of the convolved cost
  double gap = 0.0;
};
// (T1 * T2)(mu, nu) two ways; both CostOT.
ConvolveCheck transfer_convolve(const TransferProblem& p1, const TransferProblem& p2,
                                const ProbVector& mu, const ProbVector& nu);

struct PointMapWeakKam {
  Potential ghat;  // max of g along the forward orbit closure
  Potential h;     // limit of ghat along the orbit: max of g on the eventual cycle
  bool h_invariant = false;  // h(F(x)) == h(x)
};
PointMapWeakKam point_map_weak_kam(const std::vector<int>& F, const Potential& g);

}  // namespace kantor
