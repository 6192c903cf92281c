#include "kantor/ergopt.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "kantor/errors.hpp"
#include "kantor/mather.hpp"
#include "kantor/minplus.hpp"
#include "kantor/simplex.hpp"
#include "kantor/weakkam.hpp"

namespace kantor {

namespace {

char sym_char(int s) { return s < 10 ? static_cast<char>('0' + s) : static_cast<char>('a' + s - 10); }

int sym_value(char c) { return c <= '9' ? c - '0' : c - 'a' + 10; }

CostMatrix negated(const CostMatrix& A) {
  CostMatrix B(A.n);
  for (int i = 0; i < A.n; ++i)
    for (int j = 0; j < A.n; ++j) {
      ExtReal v = A.at(i, j);
      B.at(i, j) = v.finite() ? ExtReal(-v.value()) : v;
    }
  return B;
}

}  // namespace

int SftGraph::word_index(const std::string& w) const {
  auto it = std::lower_bound(words.begin(), words.end(), w);
  if (it == words.end() || *it != w) throw SchemaError("word", "not an admissible word: " + w);
  return static_cast<int>(it - words.begin());
}

SftGraph build_sft(const std::vector<std::vector<int>>& M, int k,
                   const std::function<double(const std::string&)>& phi) {
  int q = static_cast<int>(M.size());
  if (q < 1 || q > 16) throw SchemaError("transition", "alphabet size must be between 1 and 16");
  for (const auto& row : M) {
    if (static_cast<int>(row.size()) != q)
      throw DimensionMismatch("build_sft", static_cast<int>(row.size()), q);
    for (int v : row)
      if (v != 0 && v != 1) throw SchemaError("transition", "entries must be 0 or 1");
  }
  if (k < 1) throw SchemaError("depth", "word length must be at least 1");

  std::vector<std::string> words;
  for (int s = 0; s < q; ++s) words.push_back(std::string(1, sym_char(s)));
  for (int len = 2; len <= k; ++len) {
    std::vector<std::string> next;
    for (const auto& w : words) {
      int last = sym_value(w.back());
      for (int s = 0; s < q; ++s)
        if (M[last][s]) next.push_back(w + sym_char(s));
    }
    if (next.size() > 100000) throw SchemaError("depth", "truncation too large");
    words = std::move(next);
  }
  if (words.empty()) throw DeadState({});

  SftGraph g;
  g.q = q;
  g.k = k;
  g.trans = M;
  g.words = std::move(words);
  int n = static_cast<int>(g.words.size());
  g.edge_cost = CostMatrix(n);
  std::vector<int> outdeg(n, 0), indeg(n, 0);
  for (int u = 0; u < n; ++u) {
    const std::string& wu = g.words[u];
    for (int w = 0; w < n; ++w) {
      const std::string& ww = g.words[w];
      bool overlap = k == 1 || wu.compare(1, k - 1, ww, 0, k - 1) == 0;
      if (overlap && M[sym_value(wu.back())][sym_value(ww.back())]) {
        g.edge_cost.at(u, w) = ExtReal(phi(wu + ww.back()));
        ++outdeg[u];
        ++indeg[w];
      }
    }
  }
  std::vector<std::string> dead;
  for (int u = 0; u < n; ++u)
    if (outdeg[u] == 0 || indeg[u] == 0) dead.push_back(g.words[u]);
  if (!dead.empty()) throw DeadState(dead);

  g.prepend_cost.assign(q, std::vector<ExtReal>(n, ExtReal::inf()));
  for (int y = 0; y < q; ++y)
    for (int u = 0; u < n; ++u)
      if (M[y][sym_value(g.words[u][0])])
        g.prepend_cost[y][u] = ExtReal(phi(sym_char(y) + g.words[u]));
  return g;
}

ErgodicValue ergodic_value(const SftGraph& g, bool maximize) {
  MinMeanCycle mm = mather_constant_cycle(maximize ? negated(g.edge_cost) : g.edge_cost);
  ErgodicValue out;
  out.value = maximize ? -mm.c : mm.c;
  out.cycle = mm.cycle;
  for (int v : mm.cycle) out.cycle_words.push_back(g.words[v]);
  return out;
}

HolonomicLp holonomic_lp(const SftGraph& g, bool maximize) {
  const CostMatrix W = maximize ? negated(g.edge_cost) : g.edge_cost;
  int n = W.n;
  HolonomicLp out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (W.at(i, j).finite()) out.edges.emplace_back(i, j);

  LpProblem lp;
  lp.nvars = static_cast<int>(out.edges.size());
  lp.c.resize(lp.nvars);
  for (int e = 0; e < lp.nvars; ++e) lp.c[e] = W.at(out.edges[e].first, out.edges[e].second).value();
  lp.add_row(std::vector<double>(lp.nvars, 1.0), 1.0);
  for (int v = 0; v < n; ++v) {
    std::vector<double> row(lp.nvars, 0.0);
    for (int e = 0; e < lp.nvars; ++e) {
      if (out.edges[e].first == v) row[e] += 1.0;
      if (out.edges[e].second == v) row[e] -= 1.0;
    }
    lp.add_row(row, 0.0);
  }
  LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal) throw Infeasible("holonomic_lp");

  out.measure = sol.x;
  out.f.resize(n);
  for (int v = 0; v < n; ++v) out.f[v] = -sol.y[1 + v];
  double dual = maximize ? -std::numeric_limits<double>::infinity()
                         : std::numeric_limits<double>::infinity();
  for (int e = 0; e < lp.nvars; ++e) {
    double r = out.f[out.edges[e].first] - out.f[out.edges[e].second] + lp.c[e];
    dual = maximize ? std::max(dual, -r) : std::min(dual, r);
  }
  if (maximize) {
    out.value = -sol.value;
    out.dual_value = dual;
    for (double& fv : out.f) fv = -fv;
  } else {
    out.value = sol.value;
    out.dual_value = dual;
  }
  out.gap = std::abs(out.value - out.dual_value);
  return out;
}

namespace {

struct CalibrationResiduals {
  double subsolution = 0.0;
  double sigma = 0.0;
  double tau = 0.0;
};

// B is already shifted so that its optimal mean is zero; residuals measure how
// far h (successor form) and h_tau (predecessor form) are from calibration.
CalibrationResiduals calibration_residuals(const CostMatrix& B, const Potential& h,
                                           const Potential& h_tau) {
  CalibrationResiduals r;
  int n = B.n;
  for (int u = 0; u < n; ++u) {
    if (!h.v[u].finite()) continue;
    ExtReal best = ExtReal::inf();
    for (int v = 0; v < n; ++v) {
      if (!B.at(u, v).finite() || !h.v[v].finite()) continue;
      double red = B.at(u, v).value() + h.v[u].value() - h.v[v].value();
      r.subsolution = std::max(r.subsolution, -red);
      best = ext_min(best, ExtReal(red));
    }
    if (best.finite()) r.sigma = std::max(r.sigma, std::abs(best.value()));
  }
  for (int v = 0; v < n; ++v) {
    if (!h_tau.v[v].finite()) continue;
    ExtReal best = ExtReal::inf();
    for (int u = 0; u < n; ++u) {
      if (!B.at(u, v).finite() || !h_tau.v[u].finite()) continue;
      best = ext_min(best, ExtReal(B.at(u, v).value() + h_tau.v[u].value() - h_tau.v[v].value()));
    }
    if (best.finite()) r.tau = std::max(r.tau, std::abs(best.value()));
  }
  r.subsolution = std::max(r.subsolution, 0.0);
  return r;
}

Potential conjugate_pair_psi0(const CostMatrix& a_inf) {
  return backward_apply(a_inf, Potential(a_inf.n));
}

}  // namespace

Subaction subaction(const SftGraph& g, bool maximize) {
  const CostMatrix C = maximize ? negated(g.edge_cost) : g.edge_cost;
  int n = C.n;
  MinMeanCycle mm = mather_constant_cycle(C);
  if (!mm.c.finite()) throw PrimalInfinite("subaction");

  Subaction out;
  double c = mm.c.value();
  Potential psi0, psi1;
  bool exact_done = false;

  if (C.integer_valued() && !mm.cycle.empty()) {
    // exact route: scale to q*C - p where the optimal mean is integer zero
    double den = static_cast<double>(mm.cycle.size() - 1);
    double num = 0.0;
    for (size_t i = 0; i + 1 < mm.cycle.size(); ++i)
      num += C.at(mm.cycle[i], mm.cycle[i + 1]).value();
    CostMatrix S(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        ExtReal v = C.at(i, j);
        S.at(i, j) = v.finite() ? ExtReal(den * v.value() - num) : v;
      }
    try {
      CostMatrix a_inf = peierls_barrier(S, 0.0, 1e-9);
      Potential p0 = conjugate_pair_psi0(a_inf);
      Potential p1 = forward_apply(a_inf, p0);
      CalibrationResiduals r = calibration_residuals(S, p0, p1);
      if (r.subsolution == 0.0 && r.sigma == 0.0 && r.tau == 0.0) {
        psi0 = Potential(n);
        psi1 = Potential(n);
        for (int i = 0; i < n; ++i) {
          psi0.v[i] = p0.v[i].finite() ? ExtReal(p0.v[i].value() / den) : p0.v[i];
          psi1.v[i] = p1.v[i].finite() ? ExtReal(p1.v[i].value() / den) : p1.v[i];
        }
        c = num / den;
        out.subsolution_residual = r.subsolution;
        out.sigma_residual = r.sigma;
        out.tau_residual = r.tau;
        out.exact = true;
        exact_done = true;
      }
    } catch (const Error&) {
      // fall through to the floating-point route
    }
  }

  if (!exact_done) {
    CostMatrix a_inf = peierls_barrier(C, c, 1e-9 * (1.0 + std::abs(c)));
    psi0 = conjugate_pair_psi0(a_inf);
    psi1 = forward_apply(a_inf, psi0);
    CalibrationResiduals r = calibration_residuals(C.shifted(c), psi0, psi1);
    out.subsolution_residual = r.subsolution;
    out.sigma_residual = r.sigma;
    out.tau_residual = r.tau;
  }

  out.value = maximize ? -c : c;
  out.h = Potential(n);
  out.h_tau = Potential(n);
  for (int i = 0; i < n; ++i) {
    out.h.v[i] = maximize ? -psi0.v[i] : psi0.v[i];
    out.h_tau.v[i] = maximize ? -psi1.v[i] : psi1.v[i];
  }
  return out;
}

StochasticLp stochastic_holonomic_lp(const SftGraph& g, bool maximize) {
  int n = g.edge_cost.n;
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (g.edge_cost.at(i, j).finite()) edges.emplace_back(i, j);

  // variables: (prepended symbol y, edge u -> w) with y u admissible
  struct Var {
    int y, e, back;  // back = node obtained by prepending y to src and dropping the last symbol
  };
  std::vector<Var> vars;
  for (int y = 0; y < g.q; ++y)
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
      int u = edges[e].first;
      if (!g.prepend_cost[y][u].finite()) continue;
      std::string back = sym_char(y) + g.words[u].substr(0, g.k - 1);
      vars.push_back({y, e, g.word_index(back)});
    }
  if (vars.empty()) throw Infeasible("stochastic_holonomic_lp");

  LpProblem lp;
  lp.nvars = static_cast<int>(vars.size());
  lp.c.resize(lp.nvars);
  for (int i = 0; i < lp.nvars; ++i) {
    double a = g.prepend_cost[vars[i].y][edges[vars[i].e].first].value();
    lp.c[i] = maximize ? -a : a;
  }
  lp.add_row(std::vector<double>(lp.nvars, 1.0), 1.0);
  for (int v = 0; v < n; ++v) {
    std::vector<double> row(lp.nvars, 0.0);
    for (int i = 0; i < lp.nvars; ++i) {
      if (vars[i].back == v) row[i] += 1.0;
      if (edges[vars[i].e].second == v) row[i] -= 1.0;
    }
    lp.add_row(row, 0.0);
  }
  LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal) throw Infeasible("stochastic_holonomic_lp");

  StochasticLp out;
  out.f.resize(n);
  for (int v = 0; v < n; ++v) out.f[v] = -sol.y[1 + v];
  double dual = maximize ? -std::numeric_limits<double>::infinity()
                         : std::numeric_limits<double>::infinity();
  for (int i = 0; i < lp.nvars; ++i) {
    double r = out.f[vars[i].back] - out.f[edges[vars[i].e].second] + lp.c[i];
    dual = maximize ? std::max(dual, -r) : std::min(dual, r);
  }
  if (maximize)
    for (double& fv : out.f) fv = -fv;
  out.value = maximize ? -sol.value : sol.value;
  out.dual_value = dual;
  out.gap = std::abs(out.value - out.dual_value);
  out.deterministic_value = holonomic_lp(g, maximize).value;
  for (int i = 0; i < lp.nvars; ++i)
    if (sol.x[i] > 1e-12)
      out.support.push_back({vars[i].y, edges[vars[i].e].first, edges[vars[i].e].second, sol.x[i]});
  return out;
}

}  // namespace kantor
