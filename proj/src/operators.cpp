#include "kantor/operators.hpp"

#include <algorithm>
#include <cmath>

#include "kantor/entropic.hpp"
#include "kantor/minplus.hpp"
#include "kantor/rng.hpp"

namespace kantor {

namespace {

void require_dim(const Potential& g, int n, const char* where) {
  if (g.size() != static_cast<std::size_t>(n)) throw DimensionMismatch(where, g.size(), n);
}

void require_finite(const Potential& g, const char* where) {
  if (!g.all_finite()) throw Error(std::string(where) + ": potential must be finite");
}

}  // namespace

KantorovichOp KantorovichOp::max_plus(CostMatrix A) {
  KantorovichOp op;
  op.dim_ = A.n;
  op.sense_ = Sense::Backward;
  op.standard_ = A.standard();
  op.kind_ = "max_plus";
  op.fn_ = [A = std::move(A)](const Potential& g) { return backward_apply(A, g); };
  return op;
}

KantorovichOp KantorovichOp::forward_cost(CostMatrix A) {
  KantorovichOp op;
  op.dim_ = A.n;
  op.sense_ = Sense::Forward;
  // standard in the forward sense: every column supports a finite entry
  op.standard_ = true;
  for (int y = 0; y < A.n; ++y) {
    bool any = false;
    for (int x = 0; x < A.n && !any; ++x) any = A.at(x, y).finite();
    op.standard_ = op.standard_ && any;
  }
  op.kind_ = "min_plus";
  op.fn_ = [A = std::move(A)](const Potential& f) { return forward_apply(A, f); };
  return op;
}

KantorovichOp KantorovichOp::entropic(CostMatrix C, ProbVector nu, double epsilon) {
  if (nu.size() != static_cast<std::size_t>(C.n))
    throw DimensionMismatch("entropic", nu.size(), C.n);
  if (epsilon <= 0) throw NonpositiveScale(epsilon);
  KantorovichOp op;
  op.dim_ = C.n;
  op.sense_ = Sense::Backward;
  op.kind_ = "entropic";
  op.fn_ = [C = std::move(C), nu = std::move(nu), epsilon](const Potential& g) {
    return entropic_apply(C, nu, epsilon, g);
  };
  return op;
}

KantorovichOp KantorovichOp::markov(StochasticMatrix P) {
  KantorovichOp op;
  op.dim_ = P.n;
  op.sense_ = Sense::Linear;
  op.kind_ = "markov";
  op.fn_ = [P = std::move(P)](const Potential& g) {
    require_dim(g, P.n, "markov");
    require_finite(g, "markov");
    std::vector<double> x(P.n);
    for (int i = 0; i < P.n; ++i) x[i] = g[i].value();
    auto y = P.apply(x);
    Potential out(P.n);
    for (int i = 0; i < P.n; ++i) out[i] = ExtReal(y[i]);
    return out;
  };
  return op;
}

KantorovichOp KantorovichOp::reduite_step(StochasticMatrix P) {
  KantorovichOp op;
  auto markov_op = markov(std::move(P));
  op.dim_ = markov_op.dim_;
  op.sense_ = Sense::Backward;
  op.kind_ = "reduite";
  op.fn_ = [markov_op](const Potential& g) {
    Potential pg = markov_op.apply(g);
    Potential out = g;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = ext_max(out[i], pg[i]);
    return out;
  };
  return op;
}

KantorovichOp KantorovichOp::filling_step(StochasticMatrix P) {
  KantorovichOp op;
  op.dim_ = P.n;
  op.sense_ = Sense::Backward;
  op.kantorovich_ = false;  // monotone and 1-homogeneous, but not affine on constants
  op.kind_ = "filling";
  op.fn_ = [P = std::move(P)](const Potential& g) {
    require_dim(g, P.n, "filling");
    require_finite(g, "filling");
    std::vector<double> pos(P.n);
    for (int i = 0; i < P.n; ++i) pos[i] = std::max(g[i].value(), 0.0);
    auto spos = P.apply(pos);
    Potential out(P.n);
    for (int i = 0; i < P.n; ++i) out[i] = ExtReal(spos[i] + std::min(g[i].value(), 0.0));
    return out;
  };
  return op;
}

KantorovichOp KantorovichOp::affine_shift(std::vector<int> sigma, std::vector<double> abar) {
  if (sigma.size() != abar.size())
    throw DimensionMismatch("affine_shift", abar.size(), sigma.size());
  KantorovichOp op;
  op.dim_ = static_cast<int>(sigma.size());
  op.sense_ = Sense::Linear;
  op.kind_ = "affine_shift";
  op.fn_ = [sigma = std::move(sigma), abar = std::move(abar)](const Potential& g) {
    require_dim(g, static_cast<int>(sigma.size()), "affine_shift");
    Potential out(sigma.size());
    for (std::size_t i = 0; i < sigma.size(); ++i) {
      ExtReal at = g[sigma[i]];
      out[i] = at.finite() ? ExtReal(at.value() - abar[i]) : at;
    }
    return out;
  };
  return op;
}

KantorovichOp KantorovichOp::convex_energy(ProbVector m, double offset) {
  KantorovichOp op;
  op.dim_ = static_cast<int>(m.size());
  op.sense_ = Sense::Backward;
  op.kind_ = "convex_energy";
  op.fn_ = [m = std::move(m), offset](const Potential& g) {
    require_dim(g, static_cast<int>(m.size()), "convex_energy");
    double value = log_dot_exp(m.w, g) + offset;
    return Potential(m.size(), ExtReal(value));
  };
  return op;
}

KantorovichOp KantorovichOp::recession(CostMatrix A) {
  KantorovichOp op;
  op.dim_ = A.n;
  op.sense_ = Sense::Backward;
  op.standard_ = A.standard();
  op.kind_ = "recession";
  op.fn_ = [A = std::move(A)](const Potential& g) {
    require_dim(g, A.n, "recession");
    Potential out(A.n, ExtReal::neg_inf());
    for (int x = 0; x < A.n; ++x)
      for (int y = 0; y < A.n; ++y)
        if (A.at(x, y).finite()) out[x] = ext_max(out[x], g[y]);
    return out;
  };
  return op;
}

KantorovichOp KantorovichOp::convex_combination(KantorovichOp a, KantorovichOp b,
                                                double lambda) {
  if (a.dim_ != b.dim_) throw DimensionMismatch("convex_combination", b.dim_, a.dim_);
  if (lambda < 0 || lambda > 1) throw Error("convex_combination: lambda outside [0,1]");
  KantorovichOp op;
  op.dim_ = a.dim_;
  op.sense_ = a.sense_ == b.sense_ ? a.sense_ : Sense::Backward;
  op.standard_ = a.standard_ && b.standard_;
  op.kantorovich_ = a.kantorovich_ && b.kantorovich_;
  op.kind_ = "mix(" + a.kind_ + "," + b.kind_ + ")";
  op.fn_ = [a = std::move(a), b = std::move(b), lambda](const Potential& g) {
    Potential x = a.apply(g), y = b.apply(g);
    Potential out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i].finite() && y[i].finite())
        out[i] = ExtReal(lambda * x[i].value() + (1 - lambda) * y[i].value());
      else if (lambda == 0.0)
        out[i] = y[i];
      else if (lambda == 1.0)
        out[i] = x[i];
      else
        out[i] = x[i] + y[i];  // throws IndeterminateSum on opposite infinities
    }
    return out;
  };
  return op;
}

KantorovichOp KantorovichOp::pointwise_max(KantorovichOp a, KantorovichOp b) {
  if (a.dim_ != b.dim_) throw DimensionMismatch("pointwise_max", b.dim_, a.dim_);
  KantorovichOp op;
  op.dim_ = a.dim_;
  op.sense_ = Sense::Backward;
  op.standard_ = a.standard_ || b.standard_;
  op.kantorovich_ = a.kantorovich_ && b.kantorovich_;
  op.kind_ = "max(" + a.kind_ + "," + b.kind_ + ")";
  op.fn_ = [a = std::move(a), b = std::move(b)](const Potential& g) {
    Potential x = a.apply(g), y = b.apply(g);
    Potential out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = ext_max(x[i], y[i]);
    return out;
  };
  return op;
}

KantorovichOp KantorovichOp::scaled(KantorovichOp a, double lambda) {
  if (lambda <= 0) throw NonpositiveScale(lambda);
  KantorovichOp op;
  op.dim_ = a.dim_;
  op.sense_ = a.sense_;
  op.standard_ = a.standard_;
  op.kantorovich_ = a.kantorovich_;
  op.kind_ = "scale(" + a.kind_ + ")";
  op.fn_ = [a = std::move(a), lambda](const Potential& g) {
    Potential lg(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
      lg[i] = g[i].finite() ? ExtReal(lambda * g[i].value()) : g[i];
    Potential tg = a.apply(lg);
    for (std::size_t i = 0; i < tg.size(); ++i)
      if (tg[i].finite()) tg[i] = ExtReal(tg[i].value() / lambda);
    return tg;
  };
  return op;
}

Potential KantorovichOp::apply(const Potential& g) const {
  require_dim(g, dim_, "KantorovichOp::apply");
  return fn_(g);
}

double AxiomReport::max_violation() const {
  double m = std::max({monotone, constant_affine, convexity});
  if (lipschitz_checked) m = std::max(m, lipschitz);
  return m;
}

bool AxiomReport::pass() const { return max_violation() <= tol; }

AxiomReport check_axioms(const KantorovichOp& op, long trials, std::uint64_t seed, double tol) {
  AxiomReport rep;
  rep.trials = trials;
  rep.seed = seed;
  rep.tol = tol;
  rep.lipschitz_checked = op.standard();
  Rng rng(seed);
  const int n = op.dim();
  const double lambdas[] = {0.0, 0.25, 0.5, 0.75, 1.0};

  auto sample = [&] {
    Potential g(n);
    for (int i = 0; i < n; ++i) g[i] = ExtReal(rng.dyadic(-10.0, 10.0));
    return g;
  };
  auto gap_above = [](const Potential& lo, const Potential& hi) {
    // max positive part of lo - hi; infinities of matching order count as 0
    double worst = 0;
    for (std::size_t i = 0; i < lo.size(); ++i) {
      if (lo[i] <= hi[i]) continue;
      if (!lo[i].finite() || !hi[i].finite())
        return std::numeric_limits<double>::infinity();
      worst = std::max(worst, lo[i].value() - hi[i].value());
    }
    return worst;
  };

  for (long t = 0; t < trials; ++t) {
    Potential g1 = sample(), g2 = sample();

    // monotonicity: g1 <= g1 + bump
    Potential bumped = g1;
    for (int i = 0; i < n; ++i)
      bumped[i] = ExtReal(bumped[i].value() + std::abs(rng.dyadic(0.0, 4.0)));
    rep.monotone = std::max(rep.monotone, gap_above(op.apply(g1), op.apply(bumped)));

    // affine on constants
    double cshift = rng.dyadic(-10.0, 10.0);
    Potential shifted(n);
    for (int i = 0; i < n; ++i) shifted[i] = ExtReal(g1[i].value() + cshift);
    rep.constant_affine = std::max(
        rep.constant_affine, sup_dist(op.apply(shifted), op.apply(g1).shifted(cshift)));

    // convexity (backward) / concavity (forward); linear kinds obey both
    double lam = (t % 7 == 6) ? rng.dyadic(0.0, 1.0) : lambdas[t % 5];
    Potential mix(n);
    for (int i = 0; i < n; ++i)
      mix[i] = ExtReal(lam * g1[i].value() + (1 - lam) * g2[i].value());
    Potential tmix = op.apply(mix);
    Potential t1 = op.apply(g1), t2 = op.apply(g2);
    Potential mixed(n);
    bool mixable = true;
    for (int i = 0; i < n; ++i) {
      if (!t1[i].finite() || !t2[i].finite()) {
        if (t1[i] == t2[i] || lam == 0.0 || lam == 1.0) {
          mixed[i] = lam == 0.0 ? t2[i] : (lam == 1.0 ? t1[i] : t1[i]);
        } else {
          mixable = false;
          break;
        }
      } else {
        mixed[i] = ExtReal(lam * t1[i].value() + (1 - lam) * t2[i].value());
      }
    }
    if (mixable) {
      double v = op.sense() == KantorovichOp::Sense::Forward ? gap_above(mixed, tmix)
                                                             : gap_above(tmix, mixed);
      rep.convexity = std::max(rep.convexity, v);
    }

    if (rep.lipschitz_checked) {
      double d = sup_dist(g1, g2);
      double dt = sup_dist(t1, t2);
      if (std::isfinite(dt)) rep.lipschitz = std::max(rep.lipschitz, dt - d);
    }
  }
  rep.monotone = std::max(rep.monotone, 0.0);
  return rep;
}

ReduiteResult reduite_fixed_point(const StochasticMatrix& P, const Potential& g, double tol,
                                  long max_iter) {
  require_finite(g, "reduite_fixed_point");
  auto step = KantorovichOp::reduite_step(P);
  ReduiteResult out;
  out.ghat = g;
  for (long k = 1; k <= max_iter; ++k) {
    Potential next = step.apply(out.ghat);
    out.residual = sup_dist(next, out.ghat);
    out.ghat = next;
    out.iterations = k;
    if (out.residual <= tol) return out;
  }
  throw NoConvergence("reduite_fixed_point", out.residual, max_iter);
}

FillingTrace filling_scheme_iterate(const StochasticMatrix& P, const Potential& g,
                                    const ProbVector& invariant_mu, int steps) {
  if (invariant_mu.size() != static_cast<std::size_t>(P.n))
    throw DimensionMismatch("filling_scheme_iterate", invariant_mu.size(), P.n);
  auto step = KantorovichOp::filling_step(P);
  FillingTrace trace;
  Potential cur = g;
  for (int k = 0; k < steps; ++k) {
    cur = step.apply(cur);
    trace.iterates.push_back(cur);
    double pairing = 0;
    for (int i = 0; i < P.n; ++i) pairing += invariant_mu[i] * cur[i].value();
    trace.invariant_pairing.push_back(pairing);
  }
  return trace;
}

}  // namespace kantor
