#include "kantor/transfers.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "kantor/entropic.hpp"
#include "kantor/errors.hpp"
#include "kantor/minplus.hpp"
#include "kantor/simplex.hpp"

namespace kantor {

TransferProblem TransferProblem::cost_ot(CostMatrix A) {
  TransferProblem p;
  p.kind = Kind::CostOT;
  p.n = A.n;
  p.cost = std::move(A);
  return p;
}

TransferProblem TransferProblem::convex_energy_kl(ProbVector m, double offset) {
  TransferProblem p;
  p.kind = Kind::ConvexEnergyKL;
  p.n = static_cast<int>(m.size());
  p.reference = std::move(m);
  p.offset = offset;
  return p;
}

TransferProblem TransferProblem::transfer_set(const std::vector<std::vector<bool>>& feasible) {
  int n = static_cast<int>(feasible.size());
  CostMatrix A(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(feasible[i].size()) != n)
      throw DimensionMismatch("transfer_set", static_cast<int>(feasible[i].size()), n);
    for (int j = 0; j < n; ++j)
      A.at(i, j) = feasible[i][j] ? ExtReal(0.0) : ExtReal::inf();
  }
  TransferProblem p;
  p.kind = Kind::TransferSet;
  p.n = n;
  p.cost = std::move(A);
  return p;
}

TransferProblem TransferProblem::point_map(std::vector<int> F) {
  TransferProblem p;
  p.kind = Kind::PointMap;
  p.n = static_cast<int>(F.size());
  for (int y : F)
    if (y < 0 || y >= p.n) throw SchemaError("map", "image out of range");
  p.map = std::move(F);
  return p;
}

namespace {

struct OtSolve {
  ExtReal value;
  // duals: u for the row (mu) constraints, v for the column (nu) constraints
  std::vector<double> u, v;
  bool feasible = false;
};

OtSolve solve_ot(const CostMatrix& A, const ProbVector& mu, const ProbVector& nu) {
  int n = A.n;
  if (static_cast<int>(mu.size()) != n)
    throw DimensionMismatch("transfer_value mu", static_cast<int>(mu.size()), n);
  if (static_cast<int>(nu.size()) != n)
    throw DimensionMismatch("transfer_value nu", static_cast<int>(nu.size()), n);

  std::vector<std::pair<int, int>> vars;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (A.at(i, j).finite()) vars.emplace_back(i, j);

  LpProblem lp;
  lp.nvars = static_cast<int>(vars.size());
  lp.c.resize(lp.nvars);
  for (int k = 0; k < lp.nvars; ++k) lp.c[k] = A.at(vars[k].first, vars[k].second).value();
  for (int i = 0; i < n; ++i) {
    std::vector<double> row(lp.nvars, 0.0);
    for (int k = 0; k < lp.nvars; ++k)
      if (vars[k].first == i) row[k] = 1.0;
    lp.add_row(row, mu[i]);
  }
  for (int j = 0; j < n; ++j) {
    std::vector<double> row(lp.nvars, 0.0);
    for (int k = 0; k < lp.nvars; ++k)
      if (vars[k].second == j) row[k] = 1.0;
    lp.add_row(row, nu[j]);
  }

  OtSolve out;
  LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal) {
    out.value = ExtReal::inf();
    return out;
  }
  out.value = ExtReal(sol.value);
  out.feasible = true;
  out.u.assign(sol.y.begin(), sol.y.begin() + n);
  out.v.assign(sol.y.begin() + n, sol.y.begin() + 2 * n);
  return out;
}

ExtReal point_map_value(const TransferProblem& p, const ProbVector& mu, const ProbVector& nu) {
  std::vector<double> push(p.n, 0.0);
  for (int x = 0; x < p.n; ++x) push[p.map[x]] += mu[x];
  double tv = 0.0;
  for (int y = 0; y < p.n; ++y) tv += std::abs(push[y] - nu[y]);
  return tv <= 1e-10 ? ExtReal(0.0) : ExtReal::inf();
}

ExtReal kl_value(const TransferProblem& p, const ProbVector& nu) {
  double kl = 0.0;
  for (int i = 0; i < p.n; ++i) {
    if (nu[i] <= 0.0) continue;
    if (p.reference[i] <= 0.0) return ExtReal::inf();
    kl += nu[i] * std::log(nu[i] / p.reference[i]);
  }
  return ExtReal(kl - p.offset);
}

}  // namespace

ExtReal transfer_value(const TransferProblem& p, const ProbVector& mu, const ProbVector& nu) {
  switch (p.kind) {
    case TransferProblem::Kind::CostOT:
    case TransferProblem::Kind::TransferSet:
      return solve_ot(p.cost, mu, nu).value;
    case TransferProblem::Kind::ConvexEnergyKL:
      return kl_value(p, nu);
    case TransferProblem::Kind::PointMap:
      return point_map_value(p, mu, nu);
  }
  throw Error("transfer_value: unknown kind");
}

DualResult dual_value(const TransferProblem& p, const ProbVector& mu, const ProbVector& nu) {
  DualResult out;
  if (p.kind == TransferProblem::Kind::CostOT || p.kind == TransferProblem::Kind::TransferSet) {
    OtSolve sol = solve_ot(p.cost, mu, nu);
    if (!sol.feasible) throw PrimalInfinite("dual_value");
    out.gstar = Potential(p.n);
    for (int j = 0; j < p.n; ++j) out.gstar.v[j] = ExtReal(sol.v[j]);
    // evaluate <nu, g*> - <mu, T g*> through the backward operator itself
    Potential tg = backward_apply(p.cost, out.gstar);
    double val = 0.0;
    for (int j = 0; j < p.n; ++j) val += nu[j] * out.gstar.v[j].value();
    for (int i = 0; i < p.n; ++i) {
      if (mu[i] <= 0.0) continue;
      if (!tg.v[i].finite()) throw CertificateUnavailable("dual potential escapes to infinity");
      val -= mu[i] * tg.v[i].value();
    }
    out.value = val;
    out.gap = std::abs(val - sol.value.value());
    return out;
  }
  if (p.kind == TransferProblem::Kind::ConvexEnergyKL) {
    ExtReal primal = kl_value(p, nu);
    if (!primal.finite()) throw PrimalInfinite("dual_value");
    out.gstar = Potential(p.n);
    for (int i = 0; i < p.n; ++i) {
      if (nu[i] <= 0.0) {
        out.gstar.v[i] = ExtReal::neg_inf();
        continue;
      }
      if (p.reference[i] <= 0.0) throw AbsoluteContinuityViolated(i);
      out.gstar.v[i] = ExtReal(std::log(nu[i] / p.reference[i]));
    }
    double pairing = 0.0;
    for (int i = 0; i < p.n; ++i)
      if (nu[i] > 0.0) pairing += nu[i] * out.gstar.v[i].value();
    double lse = log_dot_exp(p.reference.w, out.gstar);
    out.value = pairing - lse - p.offset;
    out.gap = std::abs(out.value - primal.value());
    return out;
  }
  throw CertificateUnavailable("dual certificates exist for cost and energy transfers only");
}

ConvolveCheck transfer_convolve(const TransferProblem& p1, const TransferProblem& p2,
                                const ProbVector& mu, const ProbVector& nu) {
  if (p1.kind != TransferProblem::Kind::CostOT && p1.kind != TransferProblem::Kind::TransferSet)
    throw CertificateUnavailable("convolution needs cost transfers");
  if (p2.kind != TransferProblem::Kind::CostOT && p2.kind != TransferProblem::Kind::TransferSet)
    throw CertificateUnavailable("convolution needs cost transfers");
  if (p1.n != p2.n) throw DimensionMismatch("transfer_convolve", p2.n, p1.n);
  int n = p1.n;
  const CostMatrix& A1 = p1.cost;
  const CostMatrix& A2 = p2.cost;

  // one LP over (pi1, pi2): rows(pi1) = mu, cols(pi2) = nu, cols(pi1) = rows(pi2)
  std::vector<std::pair<int, int>> v1, v2;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (A1.at(i, j).finite()) v1.emplace_back(i, j);
      if (A2.at(i, j).finite()) v2.emplace_back(i, j);
    }
  int m1 = static_cast<int>(v1.size());
  LpProblem lp;
  lp.nvars = m1 + static_cast<int>(v2.size());
  lp.c.resize(lp.nvars);
  for (int k = 0; k < m1; ++k) lp.c[k] = A1.at(v1[k].first, v1[k].second).value();
  for (int k = m1; k < lp.nvars; ++k)
    lp.c[k] = A2.at(v2[k - m1].first, v2[k - m1].second).value();
  for (int i = 0; i < n; ++i) {
    std::vector<double> row(lp.nvars, 0.0);
    for (int k = 0; k < m1; ++k)
      if (v1[k].first == i) row[k] = 1.0;
    lp.add_row(row, mu[i]);
  }
  for (int j = 0; j < n; ++j) {
    std::vector<double> row(lp.nvars, 0.0);
    for (int k = m1; k < lp.nvars; ++k)
      if (v2[k - m1].second == j) row[k] = 1.0;
    lp.add_row(row, nu[j]);
  }
  for (int z = 0; z < n; ++z) {
    std::vector<double> row(lp.nvars, 0.0);
    for (int k = 0; k < m1; ++k)
      if (v1[k].second == z) row[k] = 1.0;
    for (int k = m1; k < lp.nvars; ++k)
      if (v2[k - m1].first == z) row[k] = -1.0;
    lp.add_row(row, 0.0);
  }

  ConvolveCheck out;
  LpSolution sol = solve_lp(lp);
  out.joint = sol.status == LpStatus::Optimal ? ExtReal(sol.value) : ExtReal::inf();
  out.via_cost = solve_ot(convolve(A1, A2), mu, nu).value;
  if (out.joint.finite() && out.via_cost.finite())
    out.gap = std::abs(out.joint.value() - out.via_cost.value());
  else
    out.gap = (out.joint == out.via_cost) ? 0.0 : std::numeric_limits<double>::infinity();
  return out;
}

PointMapWeakKam point_map_weak_kam(const std::vector<int>& F, const Potential& g) {
  int n = static_cast<int>(F.size());
  if (static_cast<int>(g.v.size()) != n)
    throw DimensionMismatch("point_map_weak_kam", static_cast<int>(g.v.size()), n);
  PointMapWeakKam out;
  out.ghat = Potential(n);
  out.h = Potential(n);
  for (int x = 0; x < n; ++x) {
    // forward orbit; after at most n steps it is inside its eventual cycle
    ExtReal best = g.v[x];
    int cur = x;
    std::vector<char> seen(n, 0);
    std::vector<int> order;
    while (!seen[cur]) {
      seen[cur] = 1;
      order.push_back(cur);
      best = ext_max(best, g.v[cur]);
      cur = F[cur];
    }
    out.ghat.v[x] = best;
    // cur closed the loop: the cycle is the tail of `order` from cur onward
    ExtReal cyc = ExtReal::neg_inf();
    auto it = std::find(order.begin(), order.end(), cur);
    for (; it != order.end(); ++it) cyc = ext_max(cyc, g.v[*it]);
    out.h.v[x] = cyc;
  }
  out.h_invariant = true;
  for (int x = 0; x < n; ++x)
    if (!(out.h.v[x] == out.h.v[F[x]])) out.h_invariant = false;
  return out;
}

}  // namespace kantor
