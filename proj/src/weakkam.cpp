#include "kantor/weakkam.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "kantor/digraph.hpp"
#include "kantor/mather.hpp"
#include "kantor/minplus.hpp"

namespace kantor {

namespace {

double finite_gap(const CostMatrix& X, const CostMatrix& Y) {
  double gap = 0.0;
  for (std::size_t i = 0; i < X.a.size(); ++i) {
    if (X.a[i] == Y.a[i]) continue;
    if (!X.a[i].finite() || !Y.a[i].finite()) return std::numeric_limits<double>::infinity();
    gap = std::max(gap, std::abs(X.a[i].value() - Y.a[i].value()));
  }
  return gap;
}

std::vector<int> weak_components(const CostMatrix& A) {
  const int n = A.n;
  std::vector<int> comp(n, -1);
  int next = 0;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = next;
    std::vector<int> stack{s};
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v = 0; v < n; ++v) {
        if (comp[v] >= 0) continue;
        if (A.at(u, v).finite() || A.at(v, u).finite()) {
          comp[v] = next;
          stack.push_back(v);
        }
      }
    }
    ++next;
  }
  return comp;
}

}  // namespace

CostMatrix peierls_barrier(const CostMatrix& A, double c, double tol) {
  CostMatrix Bplus = kleene_plus(A.shifted(c), tol);
  const int n = A.n;
  std::vector<int> critical;
  for (int z = 0; z < n; ++z)
    if (Bplus.at(z, z).finite() && std::abs(Bplus.at(z, z).value()) <= tol) critical.push_back(z);
  if (critical.empty()) throw Error("peierls_barrier: no zero-mean cycle at this shift; c is not the Mather constant");

  CostMatrix out(n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      ExtReal best = ExtReal::inf();
      for (int z : critical) best = ext_min(best, path_sum(Bplus.at(x, z), Bplus.at(z, y)));
      out.at(x, y) = best;
    }
  return out;
}

CostMatrix peierls_oracle(const CostMatrix& A, double c, int N) {
  if (N < A.n * A.n) throw Error("peierls_oracle: window too short, need N >= n^2");
  CostMatrix Ak = A;
  CostMatrix out(A.n);
  const int lo = N / 2;
  for (int k = 1; k <= N; ++k) {
    if (k > 1) Ak = convolve(Ak, A);
    if (k < lo) continue;
    for (std::size_t i = 0; i < out.a.size(); ++i)
      if (Ak.a[i].finite()) out.a[i] = ext_min(out.a[i], ExtReal(Ak.a[i].value() - k * c));
  }
  return out;
}

PeierlsComparison compare_peierls(const CostMatrix& A, double c, int N, double tol) {
  PeierlsComparison cmp{peierls_barrier(A, c, tol), peierls_oracle(A, c, N), {}, 0.0};
  for (int x = 0; x < A.n; ++x)
    for (int y = 0; y < A.n; ++y) {
      ExtReal f = cmp.formula.at(x, y), w = cmp.window.at(x, y);
      if (f == w) continue;
      if (!f.finite() || !w.finite()) {
        cmp.flagged.emplace_back(x, y);
        continue;
      }
      double gap = std::abs(f.value() - w.value());
      if (gap > tol)
        cmp.flagged.emplace_back(x, y);
      else
        cmp.max_gap = std::max(cmp.max_gap, gap);
    }
  return cmp;
}

WeakKamBundle make_weak_kam_bundle(const CostMatrix& A, double tol) {
  auto mm = mather_constant_cycle(A);
  if (!mm.c.finite()) throw PrimalInfinite("weak KAM bundle: c = +inf");

  WeakKamBundle b;
  b.c = mm.c.value();
  b.tol = tol;
  b.a_inf = peierls_barrier(A, b.c, tol);

  const int n = A.n;
  for (int x = 0; x < n; ++x)
    if (b.a_inf.at(x, x).finite() && std::abs(b.a_inf.at(x, x).value()) <= tol)
      b.aubry.push_back(x);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (!A.at(x, y).finite() || !b.a_inf.at(y, x).finite()) continue;
      if (std::abs(A.at(x, y).value() + b.a_inf.at(y, x).value() - b.c) <= tol)
        b.mather_pairs.emplace_back(x, y);
    }

  b.psi0 = backward_apply(b.a_inf, Potential(n, ExtReal(0.0)));
  b.psi1 = forward_apply(b.a_inf, b.psi0);

  // Normalized solution: pin h = 0 at the lowest-index Aubry node of each
  // weak component of the feasibility graph; stays -inf off the basins.
  b.h = b.psi0;
  auto comp = weak_components(A);
  int ncomp = 1 + *std::max_element(comp.begin(), comp.end());
  std::vector<double> shift(ncomp, std::numeric_limits<double>::quiet_NaN());
  for (int z : b.aubry)
    if (std::isnan(shift[comp[z]])) shift[comp[z]] = b.psi0[z].finite() ? b.psi0[z].value() : 0.0;
  for (int x = 0; x < n; ++x)
    if (b.h[x].finite() && !std::isnan(shift[comp[x]]))
      b.h[x] = ExtReal(b.h[x].value() - shift[comp[x]]);
  return b;
}

double BundleChecks::max_residual() const {
  return std::max({fixed_point, idempotence, absorption, conjugacy, aubry_match});
}

BundleChecks verify_bundle(const CostMatrix& A, const WeakKamBundle& b) {
  BundleChecks out;
  Potential Th = backward_apply(A, b.h);
  for (int x = 0; x < A.n; ++x) {
    if (!b.h[x].finite()) continue;
    if (!Th[x].finite()) {
      out.fixed_point = std::numeric_limits<double>::infinity();
      continue;
    }
    out.fixed_point = std::max(out.fixed_point, std::abs(Th[x].value() + b.c - b.h[x].value()));
  }
  out.idempotence = finite_gap(convolve(b.a_inf, b.a_inf), b.a_inf);
  CostMatrix B = A.shifted(b.c);
  out.absorption = std::max(finite_gap(convolve(B, b.a_inf), b.a_inf),
                            finite_gap(convolve(b.a_inf, B), b.a_inf));
  out.conjugacy = sup_dist(b.psi0, backward_apply(b.a_inf, b.psi1));
  for (int z : b.aubry) {
    if (b.psi0[z] == b.psi1[z]) continue;
    if (!b.psi0[z].finite() || !b.psi1[z].finite()) {
      out.aubry_match = std::numeric_limits<double>::infinity();
      continue;
    }
    out.aubry_match =
        std::max(out.aubry_match, std::abs(b.psi0[z].value() - b.psi1[z].value()));
  }
  auto lp = mather_constant_lp(A);
  out.measure_in_D = lp.value.finite();
  if (out.measure_in_D) {
    std::vector<std::vector<bool>> in_d(A.n, std::vector<bool>(A.n, false));
    for (auto [x, y] : b.mather_pairs) in_d[x][y] = true;
    for (int x = 0; x < A.n; ++x)
      for (int y = 0; y < A.n; ++y)
        if (lp.pi.at(x, y) > 1e-9 && !in_d[x][y]) out.measure_in_D = false;
  }
  return out;
}

std::pair<Potential, Potential> weak_kam_ops(const WeakKamBundle& b, const Potential& f) {
  return {backward_apply(b.a_inf, f), forward_apply(b.a_inf, f)};
}

ConjugateCertificate conjugate_pair(const WeakKamBundle& b, const Potential& f) {
  ConjugateCertificate cert;
  cert.psi0 = backward_apply(b.a_inf, f);
  cert.psi1 = forward_apply(b.a_inf, cert.psi0);
  cert.cross = sup_dist(cert.psi0, backward_apply(b.a_inf, cert.psi1));

  // T+ T- f >= f, with equality not required; violations are one-sided.
  for (std::size_t x = 0; x < f.size(); ++x) {
    if (cert.psi1[x] >= f[x]) continue;
    cert.order_up = !cert.psi1[x].finite() || !f[x].finite()
                        ? std::numeric_limits<double>::infinity()
                        : std::max(cert.order_up, f[x].value() - cert.psi1[x].value());
  }
  Potential down = backward_apply(b.a_inf, forward_apply(b.a_inf, f));
  for (std::size_t x = 0; x < f.size(); ++x) {
    if (down[x] <= f[x]) continue;
    cert.order_down = !down[x].finite() || !f[x].finite()
                          ? std::numeric_limits<double>::infinity()
                          : std::max(cert.order_down, down[x].value() - f[x].value());
  }
  Potential triple = backward_apply(b.a_inf, forward_apply(b.a_inf, cert.psi0));
  cert.triple = sup_dist(triple, cert.psi0);
  for (int z : b.aubry) {
    if (cert.psi0[z] == cert.psi1[z]) continue;
    cert.aubry = !cert.psi0[z].finite() || !cert.psi1[z].finite()
                     ? std::numeric_limits<double>::infinity()
                     : std::max(cert.aubry, std::abs(cert.psi0[z].value() - cert.psi1[z].value()));
  }
  return cert;
}

SubsolutionResult subsolution_phi(const CostMatrix& A, double c, const Potential& g, int N) {
  SubsolutionResult out;
  const int n = A.n;
  Potential Tg = g;
  Potential phi(n, ExtReal::inf());
  std::vector<bool> below(n, false);
  for (int k = 1; k <= N; ++k) {
    Tg = backward_apply(A, Tg);
    for (int x = 0; x < n; ++x) {
      ExtReal shifted = Tg[x].finite() ? ExtReal(Tg[x].value() + k * c) : Tg[x];
      phi[x] = ext_min(phi[x], shifted);
      if (shifted < g[x]) below[x] = true;
    }
  }
  out.phi = phi;
  out.dichotomy = std::all_of(below.begin(), below.end(), [](bool b) { return b; });
  Potential Tphi = backward_apply(A, phi);
  for (int x = 0; x < n; ++x) {
    if (!phi[x].finite() || !Tphi[x].finite()) continue;
    out.residual = std::max(out.residual, Tphi[x].value() + c - phi[x].value());
  }
  out.residual = std::max(out.residual, 0.0);
  out.certified = out.dichotomy && out.residual <= 1e-9;
  return out;
}

PowerBoundedReport power_bounded_check(const CostMatrix& A, const Potential& g, int N,
                                       double c) {
  PowerBoundedReport rep;
  const int n = A.n;
  Potential Tg = g;
  std::vector<Potential> trail;  // T^k g + k c over the upper window
  for (int k = 1; k <= N; ++k) {
    Tg = backward_apply(A, Tg);
    Potential shifted(n, ExtReal::neg_inf());
    double sup = -std::numeric_limits<double>::infinity();
    for (int x = 0; x < n; ++x) {
      if (!Tg[x].finite()) continue;
      shifted[x] = ExtReal(Tg[x].value() + k * c);
      sup = std::max(sup, shifted[x].value());
    }
    rep.sup_seq.push_back(sup);
    if (k >= N / 2) trail.push_back(shifted);
  }
  auto [lo, hi] = std::minmax_element(rep.sup_seq.begin(), rep.sup_seq.end());
  rep.spread = *hi - *lo;
  rep.bounded = std::isfinite(rep.spread);
  if (rep.bounded && N >= 8) {
    // bounded orbits are eventually periodic, so two late windows (each wide
    // enough to hold a full period) share the same maximum; drift at the
    // wrong level separates them linearly in N
    int q = N / 4;
    double m1 = -std::numeric_limits<double>::infinity();
    double m2 = m1;
    for (int k = N / 2; k < N / 2 + q; ++k) m1 = std::max(m1, rep.sup_seq[k - 1]);
    for (int k = N - q + 1; k <= N; ++k) m2 = std::max(m2, rep.sup_seq[k - 1]);
    rep.bounded = std::abs(m2 - m1) <= 1e-9 * (1.0 + std::max(std::abs(m1), std::abs(m2)));
  }

  // Decreasing scheme: the window max approximates the limsup envelope; the
  // increasing T^k limit then lands on a fixed point.
  Potential h(n, ExtReal::neg_inf());
  for (const auto& s : trail)
    for (int x = 0; x < n; ++x) h[x] = ext_max(h[x], s[x]);
  for (int it = 0; it < 4 * n + 8; ++it) {
    Potential next = backward_apply(A, h).shifted(c);
    if (sup_dist(next, h) <= 1e-13) break;
    h = next;
  }
  rep.h = h;
  Potential Th = backward_apply(A, h).shifted(c);
  rep.residual = sup_dist(Th, h);
  return rep;
}

RecessionReport recession_envelope(const CostMatrix& A, const Potential& g) {
  RecessionReport rep;
  const int n = A.n;
  rep.t_r_g = Potential(n, ExtReal::neg_inf());
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (A.at(x, y).finite()) rep.t_r_g[x] = ext_max(rep.t_r_g[x], g[y]);

  Digraph fg = Digraph::from_edges(n, [&](int i, int j) { return A.at(i, j).finite(); });
  rep.ghat = Potential(n, ExtReal::neg_inf());
  std::vector<std::vector<bool>> reach(n);
  for (int x = 0; x < n; ++x) {
    reach[x] = fg.reachable_from(x);
    rep.ghat[x] = g[x];
    for (int y = 0; y < n; ++y)
      if (reach[x][y]) rep.ghat[x] = ext_max(rep.ghat[x], g[y]);
  }

  ExtReal infA = A.min_entry();
  rep.inequalities_ok = true;
  Potential Tg = backward_apply(A, g);
  for (int x = 0; x < n; ++x) {
    ExtReal lhs = (Tg[x].finite() && infA.finite()) ? ExtReal(Tg[x].value() + infA.value()) : Tg[x];
    if (lhs > rep.t_r_g[x] || rep.t_r_g[x] > rep.ghat[x]) rep.inequalities_ok = false;
  }
  // hat is a closure operator: applying it through the reach sets again is a no-op
  Potential hh(n, ExtReal::neg_inf());
  for (int x = 0; x < n; ++x) {
    hh[x] = rep.ghat[x];
    for (int y = 0; y < n; ++y)
      if (reach[x][y]) hh[x] = ext_max(hh[x], rep.ghat[y]);
  }
  rep.hat_idempotent = sup_dist(hh, rep.ghat) == 0.0;

  auto mm = mather_constant_cycle(A);
  if (mm.c.finite() && infA.finite() && std::abs(mm.c.value() - infA.value()) <= 1e-12) {
    rep.ran_weak_kam = true;
    const double c = mm.c.value();
    Potential h = rep.ghat;
    for (int it = 0; it < 2 * n + 6; ++it) {
      Potential next = backward_apply(A, h).shifted(c);
      bool stable = true;
      for (int x = 0; x < n; ++x) {
        if (next[x] == h[x]) continue;
        stable = false;
      }
      h = next;
      if (stable) break;
    }
    // entries still strictly decreasing are on their way to -inf
    Potential next = backward_apply(A, h).shifted(c);
    for (int x = 0; x < n; ++x)
      if (next[x] < h[x]) h[x] = ExtReal::neg_inf();
    rep.h = h;
    Potential Th = backward_apply(A, h).shifted(c);
    for (int x = 0; x < n; ++x) {
      if (!h[x].finite()) continue;
      rep.residual = std::max(rep.residual, std::abs(Th[x].finite()
                                                        ? Th[x].value() - h[x].value()
                                                        : std::numeric_limits<double>::infinity()));
    }
  }
  return rep;
}

}  // namespace kantor
