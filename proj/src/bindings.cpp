#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "kantor/entropic.hpp"
#include "kantor/ergopt.hpp"
#include "kantor/errors.hpp"
#include "kantor/mather.hpp"
#include "kantor/minplus.hpp"
#include "kantor/operators.hpp"
#include "kantor/transfers.hpp"
#include "kantor/weakkam.hpp"

namespace py = pybind11;
using namespace kantor;

namespace {

ExtReal ext_of(double x, const char* where) {
  if (std::isnan(x)) throw SchemaError(where, "NaN entry");
  return ExtReal(x);
}

CostMatrix to_cost(const std::vector<std::vector<double>>& rows) {
  int n = static_cast<int>(rows.size());
  std::vector<ExtReal> a;
  a.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != n) throw SchemaError("cost", "must be square");
    for (double x : r) a.push_back(ext_of(x, "cost"));
  }
  return CostMatrix(n, std::move(a));
}

std::vector<std::vector<double>> from_cost(const CostMatrix& A) {
  std::vector<std::vector<double>> rows(A.n, std::vector<double>(A.n));
  for (int i = 0; i < A.n; ++i)
    for (int j = 0; j < A.n; ++j) rows[i][j] = A.at(i, j).value();
  return rows;
}

Potential to_pot(const std::vector<double>& xs) {
  std::vector<ExtReal> v;
  v.reserve(xs.size());
  for (double x : xs) v.push_back(ext_of(x, "potential"));
  return Potential::from(std::move(v));
}

std::vector<double> from_pot(const Potential& p) {
  std::vector<double> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[i].value();
  return out;
}

std::vector<std::vector<double>> from_coupling(const Coupling& pi) {
  std::vector<std::vector<double>> rows(pi.n, std::vector<double>(pi.m));
  for (int i = 0; i < pi.n; ++i)
    for (int j = 0; j < pi.m; ++j) rows[i][j] = pi.at(i, j);
  return rows;
}

StochasticMatrix to_stochastic(const std::vector<std::vector<double>>& rows) {
  int n = static_cast<int>(rows.size());
  std::vector<double> p;
  p.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != n) throw SchemaError("transition_matrix", "must be square");
    p.insert(p.end(), r.begin(), r.end());
  }
  return StochasticMatrix(n, std::move(p));
}

std::function<double(const std::string&)> to_phi(const py::object& phi) {
  if (py::isinstance<py::dict>(phi)) {
    py::dict table = phi.cast<py::dict>();
    return [table](const std::string& w) {
      py::str key(w);
      if (!table.contains(key)) throw SchemaError("potential_table", "missing word " + w);
      return table[key].cast<double>();
    };
  }
  return [phi](const std::string& w) { return phi(w).cast<double>(); };
}

}  // namespace

PYBIND11_MODULE(_kantor, m) {
  m.doc() = "Finite-state Kantorovich operators and linear transfers";

  auto err = py::register_exception<Error>(m, "Error");
  py::register_exception<DimensionMismatch>(m, "DimensionMismatch", err);
  py::register_exception<SchemaError>(m, "SchemaError", err);
  py::register_exception<NoConvergence>(m, "NoConvergence", err);
  py::register_exception<NegativeCycle>(m, "NegativeCycle", err);
  py::register_exception<DeadState>(m, "DeadState", err);
  py::register_exception<PrimalInfinite>(m, "PrimalInfinite", err);
  py::register_exception<CertificateUnavailable>(m, "CertificateUnavailable", err);
  py::register_exception<AbsoluteContinuityViolated>(m, "AbsoluteContinuityViolated", err);

  m.def(
      "backward",
      [](const std::vector<std::vector<double>>& cost, const std::vector<double>& g) {
        return from_pot(backward_apply(to_cost(cost), to_pot(g)));
      },
      py::arg("cost"), py::arg("g"), "(T g)(x) = max_y { g(y) - cost(x,y) }");

  m.def(
      "forward",
      [](const std::vector<std::vector<double>>& cost, const std::vector<double>& f) {
        return from_pot(forward_apply(to_cost(cost), to_pot(f)));
      },
      py::arg("cost"), py::arg("f"), "(T+ f)(y) = min_x { f(x) + cost(x,y) }");

  m.def(
      "convolve",
      [](const std::vector<std::vector<double>>& a, const std::vector<std::vector<double>>& b) {
        return from_cost(convolve(to_cost(a), to_cost(b)));
      },
      py::arg("a"), py::arg("b"), "Inf-convolution (a * b)(x,y) = min_z a(x,z) + b(z,y)");

  m.def(
      "power",
      [](const std::vector<std::vector<double>>& a, long n) {
        return from_cost(minplus_power(to_cost(a), n));
      },
      py::arg("a"), py::arg("n"), "n-fold inf-convolution power");

  m.def(
      "mather",
      [](const std::vector<std::vector<double>>& cost) {
        CostMatrix A = to_cost(cost);
        MinMeanCycle mm = mather_constant_cycle(A);
        MatherLp lp = mather_constant_lp(A);
        py::dict out;
        out["c_cycle"] = mm.c.value();
        out["cycle"] = mm.cycle;
        out["c_lp"] = lp.value.value();
        out["coupling"] = from_coupling(lp.pi);
        out["route_gap"] = (mm.c.finite() && lp.value.finite())
                               ? std::abs(mm.c.value() - lp.value.value())
                               : (mm.c == lp.value ? 0.0 : std::numeric_limits<double>::infinity());
        return out;
      },
      py::arg("cost"), "Mather constant by min-mean cycle and by occupation-measure LP");

  m.def(
      "weak_kam",
      [](const std::vector<std::vector<double>>& cost, double tol) {
        CostMatrix A = to_cost(cost);
        WeakKamBundle b = make_weak_kam_bundle(A, tol);
        BundleChecks checks = verify_bundle(A, b);
        py::dict out;
        out["c"] = b.c;
        out["a_inf"] = from_cost(b.a_inf);
        out["aubry"] = b.aubry;
        out["mather_pairs"] = b.mather_pairs;
        out["h"] = from_pot(b.h);
        out["psi0"] = from_pot(b.psi0);
        out["psi1"] = from_pot(b.psi1);
        out["max_residual"] = checks.max_residual();
        out["measure_in_D"] = checks.measure_in_D;
        return out;
      },
      py::arg("cost"), py::arg("tol") = 1e-9,
      "Critical constant, Peierls barrier, Aubry set, and a verified solution bundle");

  m.def(
      "peierls",
      [](const std::vector<std::vector<double>>& cost, double c, int n_window, double tol) {
        PeierlsComparison cmp = compare_peierls(to_cost(cost), c, n_window, tol);
        py::dict out;
        out["formula"] = from_cost(cmp.formula);
        out["window"] = from_cost(cmp.window);
        out["flagged"] = cmp.flagged;
        out["max_gap"] = cmp.max_gap;
        return out;
      },
      py::arg("cost"), py::arg("c"), py::arg("n_window") = 200, py::arg("tol") = 1e-9,
      "Peierls barrier by the critical-node formula, cross-checked against a power window");

  m.def(
      "ot",
      [](const std::vector<std::vector<double>>& cost, const std::vector<double>& mu,
         const std::vector<double>& nu) {
        TransferProblem p = TransferProblem::cost_ot(to_cost(cost));
        ProbVector pm(mu), pn(nu);
        ExtReal primal = transfer_value(p, pm, pn);
        py::dict out;
        out["value"] = primal.value();
        if (primal.finite()) {
          DualResult d = dual_value(p, pm, pn);
          out["dual_value"] = d.value;
          out["gstar"] = from_pot(d.gstar);
          out["gap"] = d.gap;
        }
        return out;
      },
      py::arg("cost"), py::arg("mu"), py::arg("nu"),
      "Optimal transport value with the Kantorovich dual certificate when finite");

  m.def(
      "sinkhorn",
      [](const std::vector<std::vector<double>>& cost, const std::vector<double>& mu,
         const std::vector<double>& nu, double epsilon, double tol, long max_iter) {
        SinkhornResult r = sinkhorn_solve(to_cost(cost), ProbVector(mu), ProbVector(nu),
                                          epsilon, tol, max_iter);
        py::dict out;
        out["phi"] = from_pot(r.phi);
        out["psi"] = from_pot(r.psi);
        out["coupling"] = from_coupling(r.coupling);
        out["iterations"] = r.iterations;
        out["marginal_residual"] = r.marginal_residual;
        out["kappa_hat"] = r.kappa_hat;
        out["converged"] = r.converged;
        return out;
      },
      py::arg("cost"), py::arg("mu"), py::arg("nu"), py::arg("epsilon"), py::arg("tol") = 1e-9,
      py::arg("max_iter") = 1000000, "Log-domain Sinkhorn iteration");

  m.def(
      "entropic_apply",
      [](const std::vector<std::vector<double>>& cost, const std::vector<double>& nu,
         double epsilon, const std::vector<double>& g) {
        return from_pot(entropic_apply(to_cost(cost), ProbVector(nu), epsilon, to_pot(g)));
      },
      py::arg("cost"), py::arg("nu"), py::arg("epsilon"), py::arg("g"),
      "(T g)(x) = eps log sum_y nu(y) exp((g(y) - cost(x,y)) / eps)");

  m.def(
      "markov_apply",
      [](const std::vector<std::vector<double>>& transition, const std::vector<double>& f,
         long t) {
        MarkovSemigroup S = make_markov_semigroup(to_stochastic(transition));
        return from_pot(markov_semigroup_apply(S, to_pot(f), t));
      },
      py::arg("transition"), py::arg("f"), py::arg("t"), "T_t f = log(P^t e^f)");

  m.def(
      "schrodinger",
      [](const std::vector<std::vector<double>>& transition, const std::vector<double>& nu) {
        MarkovSemigroup S = make_markov_semigroup(to_stochastic(transition));
        SchrodingerResult r = schrodinger_duality(S, ProbVector(nu));
        py::dict out;
        out["lp_value"] = r.lp_value;
        out["kl_value"] = r.kl_value;
        out["fstar"] = from_pot(r.fstar);
        out["stationary"] = S.m;
        return out;
      },
      py::arg("transition"), py::arg("nu"),
      "KL(nu || m) against the variational value sup_f { <f, nu> - log <m, e^f> }");

  m.def(
      "sft_solve",
      [](const std::vector<std::vector<int>>& transition, int depth, const py::object& phi,
         bool maximize) {
        SftGraph g = build_sft(transition, depth, to_phi(phi));
        ErgodicValue ev = ergodic_value(g, maximize);
        HolonomicLp lp = holonomic_lp(g, maximize);
        Subaction sub = subaction(g, maximize);
        StochasticLp st = stochastic_holonomic_lp(g, maximize);
        py::dict out;
        out["words"] = g.words;
        out["value"] = ev.value.value();
        out["cycle_words"] = ev.cycle_words;
        out["lp_value"] = lp.value;
        out["lp_gap"] = lp.gap;
        out["h"] = from_pot(sub.h);
        out["h_tau"] = from_pot(sub.h_tau);
        out["calibration_exact"] = sub.exact;
        out["stochastic_value"] = st.value;
        out["stochastic_gap"] = st.gap;
        out["deterministic_value"] = st.deterministic_value;
        return out;
      },
      py::arg("transition"), py::arg("depth"), py::arg("phi"), py::arg("maximize") = false,
      "Ergodic optimization on a depth-k subshift truncation: extreme cycle, holonomic LP, "
      "subaction, and the stochastic relaxation.  phi is a dict over (depth+1)-words or a "
      "callable on them");

  m.def(
      "max_plus_axioms",
      [](const std::vector<std::vector<double>>& cost, long trials, std::uint64_t seed,
         double tol) {
        AxiomReport r = check_axioms(KantorovichOp::max_plus(to_cost(cost)), trials, seed, tol);
        py::dict out;
        out["monotone"] = r.monotone;
        out["constant_affine"] = r.constant_affine;
        out["convexity"] = r.convexity;
        out["lipschitz"] = r.lipschitz;
        out["max_violation"] = r.max_violation();
        out["pass"] = r.pass();
        return out;
      },
      py::arg("cost"), py::arg("trials") = 1000, py::arg("seed") = 1, py::arg("tol") = 1e-9,
      "Monotonicity, constant-affinity, convexity, and Lipschitz checks for the backward "
      "operator of a cost");
}
