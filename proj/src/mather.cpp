#include "kantor/mather.hpp"

#include <algorithm>
#include <cmath>

#include "kantor/digraph.hpp"
#include "kantor/minplus.hpp"
#include "kantor/simplex.hpp"

namespace kantor {

namespace {

Digraph finite_edge_graph(const CostMatrix& A) {
  return Digraph::from_edges(A.n, [&](int i, int j) { return A.at(i, j).finite(); });
}

// Walk tight first steps of shortest B-walks toward z until a node repeats;
// the repeated stretch telescopes to a zero-weight cycle of B.
std::vector<int> recover_cycle(const CostMatrix& A, const CostMatrix& Bplus, double c, int z) {
  const int n = A.n;
  std::vector<int> order;
  std::vector<int> seen_at(n, -1);
  int u = z;
  for (int step = 0; step <= n + 1; ++step) {
    if (seen_at[u] >= 0) {
      std::vector<int> cyc(order.begin() + seen_at[u], order.end());
      cyc.push_back(u);
      return cyc;
    }
    seen_at[u] = static_cast<int>(order.size());
    order.push_back(u);
    int next = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int w = 0; w < n; ++w) {
      if (!A.at(u, w).finite()) continue;
      double b = A.at(u, w).value() - c;
      double tail = (w == z) ? std::min(0.0, Bplus.at(w, z).value())
                             : (Bplus.at(w, z).finite() ? Bplus.at(w, z).value()
                                                        : std::numeric_limits<double>::infinity());
      if (b + tail < best) {
        best = b + tail;
        next = w;
      }
    }
    u = next;
  }
  return {};  // unreachable for a well-formed critical node
}

}  // namespace

MinMeanCycle mather_constant_cycle(const CostMatrix& A) {
  const int n = A.n;
  MinMeanCycle out;
  if (n == 0) return out;

  // Karp: D[k][v] = least weight of a k-edge walk ending at v, any start.
  const double INF = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> D(n + 1, std::vector<double>(n, INF));
  std::fill(D[0].begin(), D[0].end(), 0.0);
  for (int k = 1; k <= n; ++k)
    for (int x = 0; x < n; ++x) {
      if (D[k - 1][x] == INF) continue;
      for (int y = 0; y < n; ++y) {
        if (!A.at(x, y).finite()) continue;
        double cand = D[k - 1][x] + A.at(x, y).value();
        if (cand < D[k][y]) D[k][y] = cand;
      }
    }

  double c = INF;
  for (int v = 0; v < n; ++v) {
    if (D[n][v] == INF) continue;
    double worst = -INF;
    for (int k = 0; k < n; ++k) {
      if (D[k][v] == INF) continue;
      worst = std::max(worst, (D[n][v] - D[k][v]) / (n - k));
    }
    c = std::min(c, worst);
  }
  if (c == INF) return out;  // acyclic: c = +inf is a result, not an error

  CostMatrix Bplus = kleene_plus(A.shifted(c), 1e-9 * (1.0 + std::abs(c)));
  int z = 0;
  double zq = INF;
  for (int v = 0; v < n; ++v)
    if (Bplus.at(v, v).finite() && Bplus.at(v, v).value() < zq) {
      zq = Bplus.at(v, v).value();
      z = v;
    }
  out.c = ExtReal(c);
  out.cycle = recover_cycle(A, Bplus, c, z);
  return out;
}

MatherLp mather_constant_lp(const CostMatrix& A) {
  const int n = A.n;
  MatherLp out;
  std::vector<std::pair<int, int>> vars;  // finite-cost pairs only
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (A.at(i, j).finite()) vars.emplace_back(i, j);
  if (vars.empty()) return out;

  LpProblem lp;
  lp.nvars = static_cast<int>(vars.size());
  lp.c.resize(lp.nvars);
  for (int v = 0; v < lp.nvars; ++v) lp.c[v] = A.at(vars[v].first, vars[v].second).value();
  {
    std::vector<double> total(lp.nvars, 1.0);
    lp.add_row(total, 1.0);
  }
  for (int i = 0; i < n; ++i) {
    std::vector<double> row(lp.nvars, 0.0);
    for (int v = 0; v < lp.nvars; ++v) {
      if (vars[v].first == i) row[v] += 1.0;
      if (vars[v].second == i) row[v] -= 1.0;
    }
    lp.add_row(std::move(row), 0.0);
  }
  auto sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal) return out;  // acyclic graph: +inf

  out.value = ExtReal(sol.value);
  out.pi = Coupling(n, n);
  for (int v = 0; v < lp.nvars; ++v) out.pi.at(vars[v].first, vars[v].second) = sol.x[v];
  return out;
}

MatherDiagnostics convergence_diagnostics(const CostMatrix& A, const Potential& g, int N) {
  MatherDiagnostics d;
  auto mm = mather_constant_cycle(A);
  if (!mm.c.finite() || !finite_edge_graph(A).strongly_connected()) return d;
  d.applicable = true;
  d.c = mm.c.value();

  auto lp = mather_constant_lp(A);
  std::vector<double> mu_bar = lp.pi.row_sums();

  CostMatrix An = A;
  Potential Tg = g;
  d.K = 0.0;
  for (int k = 1; k <= N; ++k) {
    if (k > 1) An = convolve(An, A);
    double mn = An.min_entry().value();
    d.m_n.push_back(mn);
    d.ratio.push_back(mn / k);
    d.K = std::max(d.K, std::abs(mn - k * d.c));
    Tg = backward_apply(A, Tg);
    double pairing = 0;
    for (int x = 0; x < A.n; ++x)
      if (mu_bar[x] > 1e-12) pairing += mu_bar[x] * Tg[x].value();
    d.cesaro.push_back(pairing / k);
  }
  d.cesaro_gap = std::abs(d.cesaro.back() + d.c);
  d.envelope_ok = true;
  for (int k = 1; k <= N; ++k)
    if (std::abs(d.ratio[k - 1] - d.c) > d.K / k + 1e-12) d.envelope_ok = false;
  return d;
}

Potential dual_certificate(const CostMatrix& A) {
  if (!A.standard()) throw CertificateUnavailable("cost has a row with no finite entry");
  auto mm = mather_constant_cycle(A);
  if (!mm.c.finite()) throw CertificateUnavailable("no finite-cost cycle, c = +inf");
  const double c = mm.c.value();
  CostMatrix Bplus = kleene_plus(A.shifted(c), 1e-9 * (1.0 + std::abs(c)));

  // h(x) = min(0, min_z B+(z, x)) is finite and satisfies
  // h(y) <= h(x) + A(x,y) - c on every edge, tight around critical cycles.
  const int n = A.n;
  Potential h(n, ExtReal(0.0));
  for (int x = 0; x < n; ++x) {
    double v = 0.0;
    for (int z = 0; z < n; ++z)
      if (Bplus.at(z, x).finite()) v = std::min(v, Bplus.at(z, x).value());
    h[x] = ExtReal(v);
  }
  return h;
}

MatherCertificate make_mather_certificate(const CostMatrix& A, const Potential& g, int N) {
  MatherCertificate cert;
  auto mm = mather_constant_cycle(A);
  if (!mm.c.finite()) throw PrimalInfinite("mather certificate");
  auto lp = mather_constant_lp(A);
  cert.c = mm.c.value();
  cert.cycle = mm.cycle;
  cert.pi = lp.pi;
  cert.route_gap = std::abs(mm.c.value() - lp.value.value());
  cert.h = dual_certificate(A);
  auto diag = convergence_diagnostics(A, g, N);
  cert.K = diag.applicable ? diag.K : 0.0;
  return cert;
}

}  // namespace kantor
