#include "kantor/minplus.hpp"

#include <algorithm>

namespace kantor {

Potential backward_apply(const CostMatrix& A, const Potential& g) {
  if (g.size() != static_cast<std::size_t>(A.n))
    throw DimensionMismatch("backward_apply", g.size(), A.n);
  Potential out(A.n, ExtReal::neg_inf());
  for (int x = 0; x < A.n; ++x) {
    ExtReal best = ExtReal::neg_inf();
    for (int y = 0; y < A.n; ++y) best = ext_max(best, backward_term(g[y], A.at(x, y)));
    out[x] = best;
  }
  return out;
}

Potential forward_apply(const CostMatrix& A, const Potential& f) {
  if (f.size() != static_cast<std::size_t>(A.n))
    throw DimensionMismatch("forward_apply", f.size(), A.n);
  Potential out(A.n, ExtReal::inf());
  for (int y = 0; y < A.n; ++y) {
    ExtReal best = ExtReal::inf();
    for (int x = 0; x < A.n; ++x) best = ext_min(best, forward_term(f[x], A.at(x, y)));
    out[y] = best;
  }
  return out;
}

CostMatrix convolve(const CostMatrix& A, const CostMatrix& B) {
  if (A.n != B.n) throw DimensionMismatch("convolve", B.n, A.n);
  const int n = A.n;
  CostMatrix out(n);
  for (int x = 0; x < n; ++x)
    for (int z = 0; z < n; ++z) {
      const ExtReal axz = A.at(x, z);
      if (axz.pos_inf()) continue;
      for (int y = 0; y < n; ++y)
        out.at(x, y) = ext_min(out.at(x, y), path_sum(axz, B.at(z, y)));
    }
  return out;
}

CostMatrix minplus_power(const CostMatrix& A, long n) {
  if (n < 1) throw Error("minplus_power: exponent must be >= 1");
  CostMatrix result = A;
  CostMatrix base = A;
  long k = n - 1;
  while (k > 0) {
    if (k & 1) result = convolve(result, base);
    k >>= 1;
    if (k > 0) base = convolve(base, base);
  }
  return result;
}

std::vector<int> find_negative_cycle(const CostMatrix& B, double tol) {
  const int n = B.n;
  // Bellman-Ford from a virtual source connected to every node with cost 0.
  std::vector<double> dist(n, 0.0);
  std::vector<int> pred(n, -1);
  int touched = -1;
  for (int round = 0; round < n; ++round) {
    touched = -1;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        if (!B.at(x, y).finite()) continue;
        double cand = dist[x] + B.at(x, y).value();
        if (cand < dist[y] - tol) {
          dist[y] = cand;
          pred[y] = x;
          touched = y;
        }
      }
    if (touched < 0) return {};
  }
  // A relaxation fired on round n: walk predecessors into the cycle.
  int v = touched;
  for (int i = 0; i < n; ++i) v = pred[v];
  std::vector<int> cyc{v};
  for (int u = pred[v]; u != v; u = pred[u]) cyc.push_back(u);
  cyc.push_back(v);
  std::reverse(cyc.begin(), cyc.end());
  return cyc;
}

CostMatrix kleene_plus(const CostMatrix& B, double tol) {
  auto witness = find_negative_cycle(B, tol);
  if (!witness.empty()) throw NegativeCycle(witness);
  const int n = B.n;
  CostMatrix D = B;  // walks with exactly one edge
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      const ExtReal dik = D.at(i, k);
      if (dik.pos_inf()) continue;
      for (int j = 0; j < n; ++j)
        D.at(i, j) = ext_min(D.at(i, j), path_sum(dik, D.at(k, j)));
    }
  return D;
}

}  // namespace kantor
