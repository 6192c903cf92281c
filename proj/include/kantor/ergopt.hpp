#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "kantor/cost_matrix.hpp"
#include "kantor/types.hpp"

namespace kantor {

// Depth-k truncation of a subshift of finite type.  Nodes are admissible
// words of length k, edges are one-symbol overlaps, and the edge u -> w
// carries the potential evaluated on the (k+1)-word u[0]w.
struct SftGraph {
  int q = 0;  // alphabet size
  int k = 0;  // word length
  std::vector<std::vector<int>> trans;      // 0/1 transition matrix on symbols
  std::vector<std::string> words;           // admissible k-words, lexicographic
  CostMatrix edge_cost;                     // +inf where there is no edge
  std::vector<std::vector<ExtReal>> prepend_cost;  // [symbol y][node u] = phi(y . u), +inf if y u[0] forbidden

  int word_index(const std::string& w) const;
};

// phi is evaluated on admissible (k+1)-words written with symbols 0-9, a-f.
// Throws DeadState listing every word with no admissible continuation.
SftGraph build_sft(const std::vector<std::vector<int>>& M, int k,
                   const std::function<double(const std::string&)>& phi);

struct ErgodicValue {
  ExtReal value;
  std::vector<int> cycle;  // closed walk of node indices, front == back
  std::vector<std::string> cycle_words;
};
// Optimal ergodic average over the truncation: the extreme mean cycle.
ErgodicValue ergodic_value(const SftGraph& g, bool maximize = false);

struct HolonomicLp {
  double value = 0.0;
  std::vector<std::pair<int, int>> edges;
  std::vector<double> measure;  // optimal edge measure, aligned with `edges`
  std::vector<double> f;        // dual node potential
  double dual_value = 0.0;      // min (resp. max) over edges of f(src)-f(tgt)+w(e)
  double gap = 0.0;
};
// Edge-measure LP: optimize sum w(e) mu(e) over probability measures with
// balanced flow at every node.
HolonomicLp holonomic_lp(const SftGraph& g, bool maximize = false);

struct Subaction {
  double value = 0.0;
  Potential h;      // calibrated via successors: extremum over out-edges of the
                    // reduced cost w - value + h(src) - h(tgt) is 0 at every node
  Potential h_tau;  // calibrated via predecessors (in-edges)
  double subsolution_residual = 0.0;
  double sigma_residual = 0.0;  // successor calibration defect of h
  double tau_residual = 0.0;    // predecessor calibration defect of h_tau
  bool exact = false;           // residuals certified in exact integer arithmetic
};
// For integer potentials the computation runs on q*w - p (p/q the optimal
// mean), where every quantity is integral and the calibration defect is
// exactly zero; h is returned rescaled.
Subaction subaction(const SftGraph& g, bool maximize = false);

struct StochasticLp {
  struct Atom {
    int symbol;  // prepended symbol y
    int src, tgt;
    double mass;
  };
  double value = 0.0;
  std::vector<double> f;   // dual node potential
  double dual_value = 0.0; // min over (y, e) of f(prepended node) - f(tgt) + a(y, src)
  double gap = 0.0;
  double deterministic_value = 0.0;
  std::vector<Atom> support;
};
// Relaxation over pairs (prepended symbol, edge); mass entering a node as an
// extended past balances mass leaving through edge targets.  Its optimum is
// at most (resp. at least) the deterministic one.
StochasticLp stochastic_holonomic_lp(const SftGraph& g, bool maximize = false);

}  // namespace kantor
