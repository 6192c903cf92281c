#include "kantor/entropic.hpp"

#include <algorithm>
#include <cmath>

#include "kantor/digraph.hpp"

namespace kantor {

double log_dot_exp(const std::vector<double>& m, const Potential& g) {
  if (m.size() != g.size()) throw DimensionMismatch("log_dot_exp", g.size(), m.size());
  double shift = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i] > 0 && g[i].finite()) shift = std::max(shift, g[i].value());
  if (!std::isfinite(shift)) return -std::numeric_limits<double>::infinity();
  double s = 0;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i] > 0 && g[i].finite()) s += m[i] * std::exp(g[i].value() - shift);
  return shift + std::log(s);
}

Potential entropic_apply(const CostMatrix& C, const ProbVector& nu, double epsilon,
                         const Potential& g) {
  if (g.size() != static_cast<std::size_t>(C.n))
    throw DimensionMismatch("entropic_apply", g.size(), C.n);
  if (epsilon <= 0) throw NonpositiveScale(epsilon);
  if (!g.all_finite()) throw Error("entropic_apply: potential must be finite");
  const int n = C.n;
  Potential out(n);
  for (int x = 0; x < n; ++x) {
    double shift = -std::numeric_limits<double>::infinity();
    for (int y = 0; y < n; ++y)
      if (nu[y] > 0 && C.at(x, y).finite())
        shift = std::max(shift, (g[y].value() - C.at(x, y).value()) / epsilon);
    if (!std::isfinite(shift)) {
      out[x] = ExtReal::neg_inf();
      continue;
    }
    double s = 0;
    for (int y = 0; y < n; ++y)
      if (nu[y] > 0 && C.at(x, y).finite())
        s += nu[y] * std::exp((g[y].value() - C.at(x, y).value()) / epsilon - shift);
    out[x] = ExtReal(epsilon * (shift + std::log(s)));
  }
  return out;
}

SinkhornResult sinkhorn_solve(const CostMatrix& C, const ProbVector& mu, const ProbVector& nu,
                              double epsilon, double tol, long max_iter) {
  const int n = C.n;
  if (mu.size() != static_cast<std::size_t>(n) || nu.size() != static_cast<std::size_t>(n))
    throw DimensionMismatch("sinkhorn_solve", mu.size(), n);
  if (!C.all_finite()) throw Error("sinkhorn_solve: cost must be finite");
  if (epsilon <= 0) throw NonpositiveScale(epsilon);
  for (int i = 0; i < n; ++i)
    if (mu[i] <= 0 || nu[i] <= 0) throw Error("sinkhorn_solve: marginals must have full support");

  SinkhornResult res;
  res.phi = Potential(n, ExtReal(0.0));
  res.psi = Potential(n, ExtReal(0.0));

  auto half_update = [&](bool update_phi) {
    // phi(x) = -eps log sum_y nu(y) exp((psi(y) - C(x,y))/eps), and mirrored.
    Potential& target = update_phi ? res.phi : res.psi;
    const Potential& other = update_phi ? res.psi : res.phi;
    const ProbVector& weights = update_phi ? nu : mu;
    for (int i = 0; i < n; ++i) {
      double shift = -std::numeric_limits<double>::infinity();
      for (int j = 0; j < n; ++j) {
        double cij = update_phi ? C.at(i, j).value() : C.at(j, i).value();
        shift = std::max(shift, (other[j].value() - cij) / epsilon);
      }
      double s = 0;
      for (int j = 0; j < n; ++j) {
        double cij = update_phi ? C.at(i, j).value() : C.at(j, i).value();
        s += weights[j] * std::exp((other[j].value() - cij) / epsilon - shift);
      }
      target[i] = ExtReal(-epsilon * (shift + std::log(s)));
    }
  };

  auto fill_coupling = [&] {
    res.coupling = Coupling(n, n);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        res.coupling.at(x, y) =
            mu[x] * nu[y] *
            std::exp((res.phi[x].value() + res.psi[y].value() - C.at(x, y).value()) / epsilon);
  };
  auto residual = [&] {
    auto rows = res.coupling.row_sums();
    auto cols = res.coupling.col_sums();
    double r = 0;
    for (int i = 0; i < n; ++i) r += std::abs(rows[i] - mu[i]) + std::abs(cols[i] - nu[i]);
    return r;
  };

  Potential prev_delta;
  double prev_osc = 0;
  for (long it = 1; it <= max_iter; ++it) {
    Potential old_psi = res.psi;
    half_update(true);   // phi from psi; rows become exact
    half_update(false);  // psi from phi; columns become exact
    Potential delta(n);
    for (int i = 0; i < n; ++i)
      delta[i] = ExtReal(res.psi[i].value() - old_psi[i].value());
    double osc = osc_seminorm(delta);
    if (it > 1 && prev_osc > 1e-13 * (1.0 + osc_seminorm(res.psi)))
      res.kappa_hat = std::max(res.kappa_hat, osc / prev_osc);
    prev_osc = osc;
    res.iterations = it;
    fill_coupling();
    res.marginal_residual = residual();
    if (res.marginal_residual <= tol) {
      res.converged = true;
      return res;
    }
  }
  throw NoConvergence("sinkhorn_solve", res.marginal_residual, max_iter);
}

MarkovSemigroup make_markov_semigroup(const StochasticMatrix& P, double tol, long max_iter) {
  Digraph g = Digraph::from_edges(P.n, [&](int i, int j) { return P.at(i, j) > 0; });
  if (!g.strongly_connected()) throw Error("make_markov_semigroup: chain is not irreducible");
  if (g.period() != 1) throw Error("make_markov_semigroup: chain has period > 1");
  MarkovSemigroup S{P, std::vector<double>(P.n, 1.0 / P.n)};
  for (long it = 0; it < max_iter; ++it) {
    auto next = P.apply_left(S.m);
    double gap = 0;
    for (int i = 0; i < P.n; ++i) gap += std::abs(next[i] - S.m[i]);
    S.m = std::move(next);
    if (gap <= tol) return S;
  }
  throw NoConvergence("make_markov_semigroup", 0.0, max_iter);
}

Potential markov_semigroup_apply(const MarkovSemigroup& S, const Potential& f, long t) {
  if (f.size() != static_cast<std::size_t>(S.P.n))
    throw DimensionMismatch("markov_semigroup_apply", f.size(), S.P.n);
  if (!f.all_finite()) throw Error("markov_semigroup_apply: potential must be finite");
  if (t < 0) throw Error("markov_semigroup_apply: negative time");
  std::vector<double> v(S.P.n);
  for (int i = 0; i < S.P.n; ++i) v[i] = std::exp(f[i].value());
  for (long k = 0; k < t; ++k) v = S.P.apply(v);
  Potential out(S.P.n);
  for (int i = 0; i < S.P.n; ++i) out[i] = ExtReal(std::log(v[i]));
  return out;
}

Potential markov_semigroup_limit(const MarkovSemigroup& S, const Potential& f) {
  return Potential(S.P.n, ExtReal(log_dot_exp(S.m, f)));
}

SchrodingerResult schrodinger_duality(const MarkovSemigroup& S, const ProbVector& nu) {
  if (nu.size() != static_cast<std::size_t>(S.P.n))
    throw DimensionMismatch("schrodinger_duality", nu.size(), S.P.n);
  SchrodingerResult out;
  out.fstar = Potential(S.P.n, ExtReal::neg_inf());
  for (int i = 0; i < S.P.n; ++i) {
    if (nu[i] <= 0) continue;
    if (S.m[i] <= 0) throw AbsoluteContinuityViolated(i);
    out.fstar[i] = ExtReal(std::log(nu[i] / S.m[i]));
    out.kl_value += nu[i] * std::log(nu[i] / S.m[i]);
  }
  double pairing = 0;
  for (int i = 0; i < S.P.n; ++i)
    if (nu[i] > 0) pairing += nu[i] * out.fstar[i].value();
  out.lp_value = pairing - log_dot_exp(S.m, out.fstar);
  return out;
}

}  // namespace kantor
