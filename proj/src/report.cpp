#include "kantor/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "kantor/entropic.hpp"
#include "kantor/ergopt.hpp"
#include "kantor/errors.hpp"
#include "kantor/mather.hpp"
#include "kantor/minplus.hpp"
#include "kantor/operators.hpp"
#include "kantor/transfers.hpp"
#include "kantor/weakkam.hpp"

namespace kantor {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

ojson json_ext(ExtReal x) {
  if (x.pos_inf()) return "inf";
  if (x.neg_inf_p()) return "-inf";
  return x.value();
}

ojson json_potential(const Potential& g) {
  ojson a = ojson::array();
  for (auto x : g.v) a.push_back(json_ext(x));
  return a;
}

ojson json_matrix(const CostMatrix& A) {
  ojson rows = ojson::array();
  for (int i = 0; i < A.n; ++i) {
    ojson r = ojson::array();
    for (int j = 0; j < A.n; ++j) r.push_back(json_ext(A.at(i, j)));
    rows.push_back(std::move(r));
  }
  return rows;
}

ojson json_coupling(const Coupling& pi) {
  ojson rows = ojson::array();
  for (int i = 0; i < pi.n; ++i) {
    ojson r = ojson::array();
    for (int j = 0; j < pi.m; ++j) r.push_back(pi.at(i, j));
    rows.push_back(std::move(r));
  }
  return rows;
}

namespace {

ExtReal parse_ext(const json& v, const std::string& field) {
  if (v.is_number()) return ExtReal(v.get<double>());
  if (v.is_string()) {
    auto s = v.get<std::string>();
    if (s == "inf") return ExtReal::inf();
    if (s == "-inf") return ExtReal::neg_inf();
  }
  throw SchemaError(field, "expected a number, \"inf\" or \"-inf\"");
}

double parse_finite(const json& v, const std::string& field) {
  if (!v.is_number()) throw SchemaError(field, "expected a finite number");
  return v.get<double>();
}

CostMatrix parse_cost(const json& v, int n, const std::string& field) {
  if (!v.is_array() || static_cast<int>(v.size()) != n)
    throw SchemaError(field, "expected an array of " + std::to_string(n) + " rows");
  std::vector<ExtReal> a;
  a.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    const json& row = v[i];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw SchemaError(field, "row " + std::to_string(i) + " must have " + std::to_string(n) +
                                   " entries");
    for (int j = 0; j < n; ++j) a.push_back(parse_ext(row[j], field));
  }
  return CostMatrix(n, std::move(a));
}

Potential parse_potential(const json& v, int n, const std::string& field) {
  if (!v.is_array() || static_cast<int>(v.size()) != n)
    throw SchemaError(field, "expected an array of length " + std::to_string(n));
  std::vector<ExtReal> xs;
  for (int i = 0; i < n; ++i) xs.push_back(parse_ext(v[i], field));
  return Potential::from(std::move(xs));
}

ProbVector parse_measure(const json& v, int n, const std::string& field) {
  if (!v.is_array() || static_cast<int>(v.size()) != n)
    throw SchemaError(field, "expected an array of length " + std::to_string(n));
  std::vector<double> w;
  for (int i = 0; i < n; ++i) w.push_back(parse_finite(v[i], field));
  try {
    return ProbVector(std::move(w));
  } catch (const SchemaError& e) {
    throw SchemaError(field, e.what());
  }
}

}  // namespace

ProblemFile ProblemFile::parse(const json& j) {
  if (!j.is_object()) throw SchemaError("<root>", "problem file must be a JSON object");
  static const std::vector<std::string> known = {
      "kind",   "n",     "cost",  "potential",       "mu",      "nu",
      "epsilon", "transition_matrix", "depth", "potential_table", "options"};
  for (const auto& item : j.items())
    if (std::find(known.begin(), known.end(), item.key()) == known.end())
      throw SchemaError(item.key(), "unknown field");

  ProblemFile p;
  if (!j.contains("kind") || !j.at("kind").is_string())
    throw SchemaError("kind", "required string");
  p.kind = j.at("kind").get<std::string>();
  if (p.kind != "cost" && p.kind != "entropic" && p.kind != "markov" && p.kind != "sft")
    throw SchemaError("kind", "must be one of cost, entropic, markov, sft");

  if (j.contains("options")) {
    const json& o = j.at("options");
    if (!o.is_object()) throw SchemaError("options", "must be an object");
    for (const auto& item : o.items())
      if (item.key() != "tol" && item.key() != "max_iter" && item.key() != "seed")
        throw SchemaError("options." + item.key(), "unknown field");
    if (o.contains("tol")) {
      p.options.tol = parse_finite(o.at("tol"), "options.tol");
      if (p.options.tol <= 0) throw SchemaError("options.tol", "must be positive");
    }
    if (o.contains("max_iter")) {
      if (!o.at("max_iter").is_number_integer())
        throw SchemaError("options.max_iter", "must be an integer");
      p.options.max_iter = o.at("max_iter").get<long>();
      if (p.options.max_iter < 1) throw SchemaError("options.max_iter", "must be at least 1");
    }
    if (o.contains("seed")) {
      if (!o.at("seed").is_number_integer()) throw SchemaError("options.seed", "must be an integer");
      p.options.seed = o.at("seed").get<std::uint64_t>();
    }
  }

  if (p.kind == "sft") {
    if (!j.contains("transition_matrix")) throw SchemaError("transition_matrix", "required");
    const json& t = j.at("transition_matrix");
    if (!t.is_array() || t.empty()) throw SchemaError("transition_matrix", "expected a 0/1 matrix");
    int q = static_cast<int>(t.size());
    for (int i = 0; i < q; ++i) {
      const json& row = t[i];
      if (!row.is_array() || static_cast<int>(row.size()) != q)
        throw SchemaError("transition_matrix", "must be square");
      std::vector<int> r;
      for (int k = 0; k < q; ++k) {
        if (!row[k].is_number_integer() ||
            (row[k].get<int>() != 0 && row[k].get<int>() != 1))
          throw SchemaError("transition_matrix", "entries must be 0 or 1");
        r.push_back(row[k].get<int>());
      }
      p.transition01.push_back(std::move(r));
    }
    p.n = q;
    if (j.contains("depth")) {
      if (!j.at("depth").is_number_integer()) throw SchemaError("depth", "must be an integer");
      p.depth = j.at("depth").get<int>();
      if (p.depth < 1) throw SchemaError("depth", "must be at least 1");
    }
    if (!j.contains("potential_table") || !j.at("potential_table").is_object())
      throw SchemaError("potential_table", "required object mapping words to values");
    for (const auto& item : j.at("potential_table").items())
      p.potential_table[item.key()] = parse_finite(item.value(), "potential_table." + item.key());
    return p;
  }

  if (!j.contains("n") || !j.at("n").is_number_integer())
    throw SchemaError("n", "required integer");
  p.n = j.at("n").get<int>();
  if (p.n < 1) throw SchemaError("n", "must be at least 1");

  if (p.kind == "cost" || p.kind == "entropic") {
    if (!j.contains("cost")) throw SchemaError("cost", "required");
    p.cost = parse_cost(j.at("cost"), p.n, "cost");
  }
  if (p.kind == "markov") {
    if (!j.contains("transition_matrix")) throw SchemaError("transition_matrix", "required");
    const json& t = j.at("transition_matrix");
    std::vector<double> rows;
    if (!t.is_array() || static_cast<int>(t.size()) != p.n)
      throw SchemaError("transition_matrix", "expected " + std::to_string(p.n) + " rows");
    for (int i = 0; i < p.n; ++i) {
      if (!t[i].is_array() || static_cast<int>(t[i].size()) != p.n)
        throw SchemaError("transition_matrix", "must be square");
      for (int k = 0; k < p.n; ++k) rows.push_back(parse_finite(t[i][k], "transition_matrix"));
    }
    try {
      p.transition = StochasticMatrix(p.n, std::move(rows));
    } catch (const SchemaError& e) {
      throw SchemaError("transition_matrix", e.what());
    }
  }
  if (j.contains("potential")) p.potential = parse_potential(j.at("potential"), p.n, "potential");
  if (j.contains("mu")) p.mu = parse_measure(j.at("mu"), p.n, "mu");
  if (j.contains("nu")) p.nu = parse_measure(j.at("nu"), p.n, "nu");
  if (j.contains("epsilon")) {
    p.epsilon = parse_finite(j.at("epsilon"), "epsilon");
    if (*p.epsilon <= 0) throw SchemaError("epsilon", "must be positive");
  }
  if (p.kind == "entropic") {
    if (!p.mu) throw SchemaError("mu", "required for entropic problems");
    if (!p.nu) throw SchemaError("nu", "required for entropic problems");
    if (!p.epsilon) throw SchemaError("epsilon", "required for entropic problems");
    if (!p.cost.all_finite()) throw SchemaError("cost", "entropic problems need finite costs");
  }
  return p;
}

ojson ProblemFile::canonical() const {
  ojson j;
  j["kind"] = kind;
  j["n"] = n;
  if (kind == "cost" || kind == "entropic") j["cost"] = json_matrix(cost);
  if (potential) j["potential"] = json_potential(*potential);
  if (mu) j["mu"] = mu->w;
  if (nu) j["nu"] = nu->w;
  if (epsilon) j["epsilon"] = *epsilon;
  if (transition) j["transition_matrix"] = transition->p;  // flattened row-major
  if (kind == "sft") {
    j["transition_matrix"] = transition01;
    j["depth"] = depth;
    ojson t;
    for (const auto& [w, v] : potential_table) t[w] = v;  // std::map iterates sorted
    j["potential_table"] = std::move(t);
  }
  j["options"] = {{"tol", options.tol}, {"max_iter", options.max_iter}, {"seed", options.seed}};
  return j;
}

std::string ProblemFile::digest() const {
  std::string s = canonical().dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

struct Certs {
  ojson fixed_point = ojson::object();
  ojson gaps = ojson::object();
  ojson checks = ojson::array();
  bool all_pass = true;

  void residual(const std::string& key, double v) { fixed_point[key] = v; }
  void gap(const std::string& key, double v) { gaps[key] = v; }
  void check(const std::string& name, double magnitude, double threshold) {
    bool ok = magnitude <= threshold;
    checks.push_back(
        {{"name", name}, {"pass", ok}, {"magnitude", magnitude}, {"threshold", threshold}});
    all_pass = all_pass && ok;
  }
  void check_flag(const std::string& name, bool ok) {
    checks.push_back({{"name", name}, {"pass", ok}});
    all_pass = all_pass && ok;
  }
  void info(const std::string& name, bool ok, double magnitude) {
    checks.push_back({{"name", name}, {"pass", ok}, {"magnitude", magnitude}, {"gating", false}});
  }
};

void require_kind(const ProblemFile& p, const std::string& want, const std::string& command) {
  if (p.kind != want)
    throw SchemaError("kind", "command '" + command + "' needs kind \"" + want + "\"");
}

Potential zero_or(const std::optional<Potential>& g, int n) {
  return g ? *g : Potential(static_cast<std::size_t>(n));
}

void cmd_mather(const ProblemFile& p, ojson& results, Certs& certs) {
  require_kind(p, "cost", "mather");
  const CostMatrix& A = p.cost;
  double tol = p.options.tol;

  MinMeanCycle mm = mather_constant_cycle(A);
  MatherLp lp = mather_constant_lp(A);
  results["c_cycle"] = json_ext(mm.c);
  results["cycle"] = mm.cycle;
  results["c_lp"] = json_ext(lp.value);
  if (mm.c.finite() && lp.value.finite()) {
    double g = std::abs(mm.c.value() - lp.value.value());
    certs.gap("c_cycle_vs_c_lp", g);
    certs.check("mather_route_agreement", g, std::max(tol, 1e-7));
    results["pi"] = json_coupling(lp.pi);
  } else {
    certs.check_flag("mather_route_agreement", mm.c == lp.value);
  }

  Potential g0 = zero_or(p.potential, A.n);
  MatherDiagnostics diag = convergence_diagnostics(A, g0, 100);
  if (diag.applicable) {
    results["c_limit"] = diag.ratio.back();
    results["K"] = diag.K;
    certs.check("limit_envelope", std::abs(diag.ratio.back() - diag.c), diag.K / 100.0 + 1e-12);
  } else {
    results["c_limit"] = nullptr;
  }

  if (A.standard() && mm.c.finite()) {
    Potential h = dual_certificate(A);
    results["h"] = json_potential(h);
    Potential th = backward_apply(A, h);
    ExtReal lo = ExtReal::inf();
    for (int x = 0; x < A.n; ++x) lo = ext_min(lo, h.v[x] - th.v[x]);
    double r = std::abs(lo.value() - mm.c.value());
    certs.residual("dual_certificate", r);
    certs.check("dual_certificate_attains_c", r, tol);
  }
}

void cmd_weakkam(const ProblemFile& p, ojson& results, Certs& certs) {
  require_kind(p, "cost", "weakkam");
  double tol = p.options.tol;
  WeakKamBundle b = make_weak_kam_bundle(p.cost, tol);
  BundleChecks ck = verify_bundle(p.cost, b);

  results["c"] = b.c;
  results["a_inf"] = json_matrix(b.a_inf);
  results["aubry"] = b.aubry;
  ojson pairs = ojson::array();
  for (auto [x, y] : b.mather_pairs) pairs.push_back({x, y});
  results["mather_pairs"] = std::move(pairs);
  results["h"] = json_potential(b.h);
  results["psi0"] = json_potential(b.psi0);
  results["psi1"] = json_potential(b.psi1);

  certs.residual("fixed_point", ck.fixed_point);
  certs.residual("idempotence", ck.idempotence);
  certs.residual("absorption", ck.absorption);
  certs.residual("conjugacy", ck.conjugacy);
  certs.residual("aubry_match", ck.aubry_match);
  certs.check("weak_kam_fixed_point", ck.fixed_point, tol);
  certs.check("barrier_idempotent", ck.idempotence, tol);
  certs.check("barrier_absorption", ck.absorption, tol);
  certs.check("conjugate_pair", ck.conjugacy, tol);
  certs.check("psi0_eq_psi1_on_aubry", ck.aubry_match, tol);
  certs.check_flag("minimal_measure_in_mather_set", ck.measure_in_D);
}

void cmd_transfer(const ProblemFile& p, ojson& results, Certs& certs) {
  require_kind(p, "cost", "transfer");
  if (!p.mu) throw SchemaError("mu", "required for transfer");
  if (!p.nu) throw SchemaError("nu", "required for transfer");
  double tol = p.options.tol;

  TransferProblem tp = TransferProblem::cost_ot(p.cost);
  ExtReal v = transfer_value(tp, *p.mu, *p.nu);
  results["value"] = json_ext(v);
  if (v.finite()) {
    DualResult d = dual_value(tp, *p.mu, *p.nu);
    results["dual_value"] = d.value;
    results["gstar"] = json_potential(d.gstar);
    certs.gap("duality_gap", d.gap);
    certs.check("kantorovich_duality", d.gap, std::max(tol, 1e-7));
  }
}

void cmd_sinkhorn(const ProblemFile& p, ojson& results, Certs& certs) {
  require_kind(p, "entropic", "sinkhorn");
  double tol = p.options.tol;
  SinkhornResult r = sinkhorn_solve(p.cost, *p.mu, *p.nu, *p.epsilon, tol, p.options.max_iter);
  results["epsilon"] = *p.epsilon;
  results["iterations"] = r.iterations;
  results["phi"] = json_potential(r.phi);
  results["psi"] = json_potential(r.psi);
  results["coupling"] = json_coupling(r.coupling);
  results["marginal_residual"] = r.marginal_residual;
  results["kappa_hat"] = r.kappa_hat;
  certs.residual("marginal_residual", r.marginal_residual);
  certs.check("marginals_match", r.marginal_residual, std::max(tol, 1e-8));
  certs.check_flag("contraction_below_one", r.kappa_hat < 1.0);
}

void cmd_schrodinger(const ProblemFile& p, ojson& results, Certs& certs) {
  require_kind(p, "markov", "schrodinger");
  if (!p.nu) throw SchemaError("nu", "required for schrodinger");
  double tol = p.options.tol;
  MarkovSemigroup S = make_markov_semigroup(*p.transition, 1e-12, p.options.max_iter);
  SchrodingerResult sd = schrodinger_duality(S, *p.nu);
  results["m"] = S.m;
  results["lp_value"] = sd.lp_value;
  results["kl_value"] = sd.kl_value;
  results["fstar"] = json_potential(sd.fstar);
  double g = std::abs(sd.lp_value - sd.kl_value);
  certs.gap("lp_vs_kl", g);
  certs.check("schrodinger_duality", g, tol);

  Potential f = zero_or(p.potential, p.n);
  Potential lim = markov_semigroup_limit(S, f);
  long t = 1;
  double gap = sup_dist(markov_semigroup_apply(S, f, t), lim);
  while (gap > 1e-10 && t < (1L << 14)) {
    t *= 2;
    gap = sup_dist(markov_semigroup_apply(S, f, t), lim);
  }
  results["semigroup_t"] = t;
  results["semigroup_gap"] = gap;
  certs.check("semigroup_converges_to_limit", gap, 1e-10);
}

void cmd_ergopt(const ProblemFile& p, ojson& results, Certs& certs) {
  require_kind(p, "sft", "ergopt");
  double tol = p.options.tol;
  auto phi = [&p](const std::string& w) {
    auto it = p.potential_table.find(w);
    if (it == p.potential_table.end())
      throw SchemaError("potential_table", "missing word " + w);
    return it->second;
  };
  SftGraph g = build_sft(p.transition01, p.depth, phi);
  ErgodicValue ev = ergodic_value(g);
  HolonomicLp hl = holonomic_lp(g);
  Subaction sa = subaction(g);
  StochasticLp st = stochastic_holonomic_lp(g);

  results["words"] = g.words;
  results["value"] = json_ext(ev.value);
  results["cycle_words"] = ev.cycle_words;
  results["lp_value"] = hl.value;
  results["dual_value"] = hl.dual_value;
  results["h"] = json_potential(sa.h);
  results["h_tau"] = json_potential(sa.h_tau);
  results["calibration_exact"] = sa.exact;
  results["stochastic_value"] = st.value;
  results["stochastic_dual_value"] = st.dual_value;

  double cyc_lp = std::abs(ev.value.value() - hl.value);
  certs.gap("cycle_vs_holonomic_lp", cyc_lp);
  certs.gap("holonomic_lp_vs_dual", hl.gap);
  certs.gap("stochastic_lp_vs_dual", st.gap);
  certs.check("cycle_matches_lp", cyc_lp, std::max(tol, 1e-7));
  certs.check("lp_matches_dual", hl.gap, std::max(tol, 1e-7));
  certs.check("stochastic_lp_matches_dual", st.gap, std::max(tol, 1e-7));
  double caltol = sa.exact ? 0.0 : std::max(tol, 1e-9);
  certs.residual("subsolution", sa.subsolution_residual);
  certs.residual("calibration_sigma", sa.sigma_residual);
  certs.residual("calibration_tau", sa.tau_residual);
  certs.check("subsolution_inequality", sa.subsolution_residual, caltol);
  certs.check("calibration_sigma_form", sa.sigma_residual, caltol);
  certs.check("calibration_tau_form", sa.tau_residual, caltol);
  certs.check("stochastic_below_deterministic", st.value - st.deterministic_value, 1e-9);
}

void cmd_axioms(const ProblemFile& p, ojson& results, Certs& certs) {
  double tol = p.options.tol;
  const long trials = 200;
  std::vector<KantorovichOp> ops;
  if (p.kind == "cost") {
    ops.push_back(KantorovichOp::max_plus(p.cost));
    ops.push_back(KantorovichOp::forward_cost(p.cost));
    ops.push_back(KantorovichOp::recession(p.cost));
    ops.push_back(KantorovichOp::scaled(KantorovichOp::max_plus(p.cost), 2.0));
    ops.push_back(KantorovichOp::pointwise_max(KantorovichOp::max_plus(p.cost),
                                               KantorovichOp::recession(p.cost)));
    ops.push_back(KantorovichOp::convex_combination(KantorovichOp::max_plus(p.cost),
                                                    KantorovichOp::recession(p.cost), 0.5));
  } else if (p.kind == "markov") {
    ops.push_back(KantorovichOp::markov(*p.transition));
    ops.push_back(KantorovichOp::reduite_step(*p.transition));
    ops.push_back(KantorovichOp::filling_step(*p.transition));
    if (p.mu) ops.push_back(KantorovichOp::convex_energy(*p.mu, 0.0));
  } else if (p.kind == "entropic") {
    ops.push_back(KantorovichOp::entropic(p.cost, *p.nu, *p.epsilon));
  } else {
    throw SchemaError("kind", "command 'axioms' needs kind cost, markov or entropic");
  }

  ojson reports = ojson::array();
  for (const auto& op : ops) {
    AxiomReport r = check_axioms(op, trials, p.options.seed, tol);
    ojson o;
    o["kind"] = op.kind();
    o["kantorovich"] = op.kantorovich();
    o["trials"] = r.trials;
    o["monotone"] = r.monotone;
    o["constant_affine"] = r.constant_affine;
    o["convexity"] = r.convexity;
    o["lipschitz_checked"] = r.lipschitz_checked;
    o["lipschitz"] = r.lipschitz;
    reports.push_back(std::move(o));
    if (op.kantorovich())
      certs.check("axioms:" + op.kind(), r.max_violation(), tol);
    else
      certs.info("axioms:" + op.kind(), r.max_violation() <= tol, r.max_violation());
  }
  results["operators"] = std::move(reports);
}

}  // namespace

RunResult run_command(const std::string& command, const ProblemFile& p, bool timing) {
  auto t0 = std::chrono::steady_clock::now();
  ojson results = ojson::object();
  Certs certs;
  ojson error;

  try {
    if (command == "mather")
      cmd_mather(p, results, certs);
    else if (command == "weakkam")
      cmd_weakkam(p, results, certs);
    else if (command == "transfer")
      cmd_transfer(p, results, certs);
    else if (command == "sinkhorn")
      cmd_sinkhorn(p, results, certs);
    else if (command == "schrodinger")
      cmd_schrodinger(p, results, certs);
    else if (command == "ergopt")
      cmd_ergopt(p, results, certs);
    else if (command == "axioms")
      cmd_axioms(p, results, certs);
    else
      throw SchemaError("command", "unknown command '" + command + "'");
  } catch (const SchemaError&) {
    throw;
  } catch (const DeadState&) {
    throw;
  } catch (const NoConvergence& e) {
    error = {{"type", "NoConvergence"},
             {"message", e.what()},
             {"residual", e.residual},
             {"iterations", e.iterations}};
  } catch (const NegativeCycle& e) {
    error = {{"type", "NegativeCycle"}, {"message", e.what()}, {"cycle", e.cycle}};
  } catch (const Error& e) {
    error = {{"type", "Error"}, {"message", e.what()}};
  }

  RunResult out;
  out.report["command"] = command;
  out.report["input_digest"] = p.digest();
  out.report["results"] = std::move(results);
  out.report["certificates"] = {{"fixed_point_residuals", std::move(certs.fixed_point)},
                                {"duality_gaps", std::move(certs.gaps)},
                                {"invariant_checks", std::move(certs.checks)}};
  if (!error.is_null()) out.report["error"] = std::move(error);
  if (timing) {
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
    out.report["timing"] = {{"milliseconds", ms}};
  } else {
    out.report["timing"] = nullptr;
  }
  out.exit_code = !out.report.contains("error") ? (certs.all_pass ? 0 : 1) : 3;
  return out;
}

namespace {

bool flat_scalar_array(const ojson& v) {
  if (!v.is_array()) return false;
  for (const auto& x : v)
    if (x.is_object() || (x.is_array() && !flat_scalar_array(x))) return false;
  return true;
}

std::string csv_scalar(const ojson& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    if (s.find_first_of(",\"\n") != std::string::npos) {
      std::string q = "\"";
      for (char c : s) {
        if (c == '"') q += '"';
        q += c;
      }
      q += '"';
      return q;
    }
    return s;
  }
  return v.dump();
}

void csv_flatten(const ojson& v, std::string& line) {
  if (v.is_array()) {
    for (const auto& x : v) csv_flatten(x, line);
    return;
  }
  line += ',';
  line += csv_scalar(v);
}

void csv_walk(const ojson& v, const std::string& path, std::string& out) {
  if (v.is_object()) {
    for (const auto& item : v.items())
      csv_walk(item.value(), path.empty() ? item.key() : path + "." + item.key(), out);
    return;
  }
  if (v.is_array() && !flat_scalar_array(v)) {
    int i = 0;
    for (const auto& x : v) csv_walk(x, path + "[" + std::to_string(i++) + "]", out);
    return;
  }
  std::string line = path;
  csv_flatten(v, line);
  out += line;
  out += '\n';
}

}  // namespace

std::string report_to_csv(const ojson& report) {
  std::string out;
  csv_walk(report, "", out);
  return out;
}

}  // namespace kantor
