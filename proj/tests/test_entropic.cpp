#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kantor/entropic.hpp"
#include "kantor/minplus.hpp"
#include "kantor/rng.hpp"
#include "testing_util.hpp"

using namespace kantor;
using namespace kantor::testing;

TEST_CASE("log-sum-exp pairing") {
  ProbVector m({0.5, 0.5});
  CHECK(log_dot_exp(m.w, Potential{0.0, 0.0}) == 0.0);
  CHECK(log_dot_exp(m.w, Potential{std::log(2.0), 0.0}) ==
        doctest::Approx(std::log(1.5)).epsilon(1e-15));
  // -inf entries contribute nothing
  Potential half = Potential::from({ExtReal(std::log(2.0)), ExtReal::neg_inf()});
  CHECK(log_dot_exp(m.w, half) == doctest::Approx(0.0).epsilon(1e-15));
  // huge entries survive the max shift
  CHECK(log_dot_exp(m.w, Potential{800.0, 800.0}) == doctest::Approx(800.0));
}

TEST_CASE("entropic operator closed forms on zero cost") {
  CostMatrix C(2, ExtReal(0.0));
  ProbVector nu({0.5, 0.5});
  Potential g{std::log(2.0), 0.0};
  Potential Tg = entropic_apply(C, nu, 1.0, g);
  CHECK(Tg[0].value() == doctest::Approx(std::log(1.5)).epsilon(1e-15));
  CHECK(Tg[1].value() == doctest::Approx(std::log(1.5)).epsilon(1e-15));
  Potential zero = entropic_apply(C, nu, 1.0, Potential(2, ExtReal(0.0)));
  CHECK(zero[0].value() == 0.0);
  CHECK(zero[1].value() == 0.0);

  CHECK_THROWS_AS(entropic_apply(C, nu, 0.0, g), NonpositiveScale);
  CHECK_THROWS_AS(entropic_apply(C, nu, 1.0, Potential(3, ExtReal(0.0))),
                  DimensionMismatch);
}

TEST_CASE("epsilon sandwich around the max-plus limit") {
  Rng rng(15);
  for (int trial = 0; trial < 20; ++trial) {
    int n = rng.uniform_int(2, 8);
    CostMatrix C = random_cost(rng, n, 1.0, false, 0, 6);
    ProbVector nu = random_prob(rng, n);
    Potential g = random_potential(rng, n);
    Potential limit = backward_apply(C, g);
    double log_min_nu = std::log(*std::min_element(nu.w.begin(), nu.w.end()));
    for (double eps : {1.0, 0.1, 0.01}) {
      Potential Tg = entropic_apply(C, nu, eps, g);
      for (int x = 0; x < n; ++x) {
        CHECK(Tg[x].value() <= limit[x].value() + 1e-12);
        CHECK(Tg[x].value() >= limit[x].value() + eps * log_min_nu - 1e-12);
        // two-sided bound gives the convergence rate as eps -> 0
        CHECK(std::abs(Tg[x].value() - limit[x].value()) <=
              eps * std::log(1.0 / *std::min_element(nu.w.begin(), nu.w.end())) + 1e-12);
      }
    }
  }
}

TEST_CASE("sinkhorn on zero cost converges immediately to the product") {
  CostMatrix C(3, ExtReal(0.0));
  Rng rng(21);
  ProbVector mu = random_prob(rng, 3), nu = random_prob(rng, 3);
  auto res = sinkhorn_solve(C, mu, nu, 1.0, 1e-10);
  CHECK(res.converged);
  CHECK(res.iterations == 1);
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      CHECK(res.coupling.at(x, y) == doctest::Approx(mu[x] * nu[y]).epsilon(1e-12));
}

TEST_CASE("symmetric two-point instance has the known gibbs coupling") {
  CostMatrix C(2, ExtReal(0.0));
  C.at(0, 1) = ExtReal(1.0);
  C.at(1, 0) = ExtReal(1.0);
  ProbVector u({0.5, 0.5});
  auto res = sinkhorn_solve(C, u, u, 1.0, 1e-12);
  REQUIRE(res.converged);
  double diag = 0.5 / (1.0 + std::exp(-1.0));
  double off = 0.5 * std::exp(-1.0) / (1.0 + std::exp(-1.0));
  CHECK(res.coupling.at(0, 0) == doctest::Approx(diag).epsilon(1e-9));
  CHECK(res.coupling.at(1, 1) == doctest::Approx(diag).epsilon(1e-9));
  CHECK(res.coupling.at(0, 1) == doctest::Approx(off).epsilon(1e-9));
  CHECK(res.marginal_residual <= 1e-12);
  CHECK(res.kappa_hat < 1.0);
}

TEST_CASE("sinkhorn random instances: marginals, contraction, duality of potentials") {
  Rng rng(33);
  for (int trial = 0; trial < 10; ++trial) {
    int n = rng.uniform_int(2, 8);
    CostMatrix C = random_cost(rng, n, 1.0, false, 0, 4);
    ProbVector mu = random_prob(rng, n), nu = random_prob(rng, n);
    auto res = sinkhorn_solve(C, mu, nu, 0.5, 1e-9);
    CHECK(res.converged);
    CHECK(res.marginal_residual <= 1e-9);
    CHECK(res.kappa_hat < 1.0);
    // the coupling really is the gibbs kernel of the reported potentials
    double mass = 0.0;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) mass += res.coupling.at(x, y);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
  }
  CHECK_THROWS_AS(sinkhorn_solve(CostMatrix(2, ExtReal(0.0)), ProbVector({1.0, 0.0}),
                                 ProbVector({0.5, 0.5}), 1.0),
                  Error);  // full support required
}

TEST_CASE("measured contraction factors compose submultiplicatively") {
  Rng rng(55);
  int n = 5;
  CostMatrix C1 = random_cost(rng, n, 1.0, false, 0, 3);
  CostMatrix C2 = random_cost(rng, n, 1.0, false, 0, 3);
  ProbVector nu1 = random_prob(rng, n), nu2 = random_prob(rng, n);
  for (int trial = 0; trial < 20; ++trial) {
    Potential g1 = random_potential(rng, n), g2 = random_potential(rng, n);
    Potential d(n);
    for (int i = 0; i < n; ++i) d[i] = ExtReal(g1[i].value() - g2[i].value());
    double base = osc_seminorm(d);
    if (base < 1e-9) continue;

    auto osc_of = [&](const Potential& a, const Potential& b) {
      Potential diff(n);
      for (int i = 0; i < n; ++i) diff[i] = ExtReal(a[i].value() - b[i].value());
      return osc_seminorm(diff);
    };
    Potential h1 = entropic_apply(C1, nu1, 1.0, g1), h2 = entropic_apply(C1, nu1, 1.0, g2);
    double stage1 = osc_of(h1, h2) / base;
    CHECK(stage1 < 1.0);  // strict contraction on full support
    if (osc_of(h1, h2) <= 1e-13) continue;
    Potential k1 = entropic_apply(C2, nu2, 1.0, h1), k2 = entropic_apply(C2, nu2, 1.0, h2);
    double stage2 = osc_of(k1, k2) / osc_of(h1, h2);
    CHECK(stage2 < 1.0);
    double total = osc_of(k1, k2) / base;
    CHECK(total <= stage1 * stage2 + 1e-9);
  }
}

TEST_CASE("markov semigroup on the lazy two-chain") {
  StochasticMatrix P(2, {0.5, 0.5, 0.5, 0.5});
  auto S = make_markov_semigroup(P);
  CHECK(S.m[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(S.m[1] == doctest::Approx(0.5).epsilon(1e-12));

  Potential f{std::log(3.0), 0.0};
  Potential T1 = markov_semigroup_apply(S, f, 1);
  CHECK(T1[0].value() == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(T1[1].value() == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  Potential lim = markov_semigroup_limit(S, f);
  CHECK(lim[0].value() == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(markov_semigroup_apply(S, f, 0)[0].value() == f[0].value());

  // the semigroup law T_{s+t} = T_s T_t
  Rng rng(8);
  StochasticMatrix Q = random_stochastic(rng, 4);
  auto SQ = make_markov_semigroup(Q);
  Potential g = random_potential(rng, 4, -2.0, 2.0);
  Potential two_then_three = markov_semigroup_apply(SQ, markov_semigroup_apply(SQ, g, 2), 3);
  Potential five = markov_semigroup_apply(SQ, g, 5);
  CHECK(sup_dist(two_then_three, five) <= 1e-12);
}

TEST_CASE("limit operator is idempotent and absorbs finite times") {
  Rng rng(13);
  StochasticMatrix P = random_stochastic(rng, 5);
  auto S = make_markov_semigroup(P);
  Potential f = random_potential(rng, 5, -3.0, 3.0);
  Potential lim = markov_semigroup_limit(S, f);
  CHECK(sup_dist(markov_semigroup_limit(S, lim), lim) <= 1e-12);
  CHECK(sup_dist(markov_semigroup_apply(S, lim, 7), lim) <= 1e-12);

  // T_t f approaches the constant limit
  Potential far = markov_semigroup_apply(S, f, 256);
  CHECK(sup_dist(far, lim) <= 1e-10);
}

TEST_CASE("periodic or reducible chains are rejected") {
  CHECK_THROWS_AS(make_markov_semigroup(StochasticMatrix(2, {0.0, 1.0, 1.0, 0.0})), Error);
  CHECK_THROWS_AS(make_markov_semigroup(StochasticMatrix(2, {1.0, 0.0, 0.0, 1.0})), Error);
}

TEST_CASE("schrodinger duality closed forms") {
  StochasticMatrix P(2, {0.5, 0.5, 0.5, 0.5});
  auto S = make_markov_semigroup(P);

  SUBCASE("nu equals the stationary law") {
    auto res = schrodinger_duality(S, ProbVector({0.5, 0.5}));
    CHECK(std::abs(res.kl_value) <= 1e-12);
    CHECK(std::abs(res.lp_value) <= 1e-12);
  }
  SUBCASE("point mass against the uniform chain") {
    auto res = schrodinger_duality(S, ProbVector({1.0, 0.0}));
    CHECK(res.kl_value == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(res.lp_value == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(res.fstar[0].value() == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(res.fstar[1].neg_inf_p());
  }
  SUBCASE("uniform pair on a four-state chain") {
    StochasticMatrix P4(4, std::vector<double>(16, 0.25));
    auto S4 = make_markov_semigroup(P4);
    auto res = schrodinger_duality(S4, ProbVector({0.5, 0.5, 0.0, 0.0}));
    CHECK(res.kl_value == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(res.lp_value == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  }
}

TEST_CASE("starving the iteration budget raises a diagnosable failure") {
  CostMatrix C(3, ExtReal(0.0));
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) C.at(x, y) = ExtReal(double((x * 2 + y * 5) % 7));
  Rng rng(91);
  ProbVector mu = random_prob(rng, 3), nu = random_prob(rng, 3);
  try {
    sinkhorn_solve(C, mu, nu, 0.1, 1e-12, 1);
    FAIL("expected NoConvergence");
  } catch (const NoConvergence& e) {
    CHECK(e.iterations == 1);
    CHECK(e.residual > 1e-12);
  }
}

TEST_CASE("mass escaping the reference support is flagged with its site") {
  // hand-built semigroup with a defective stationary entry
  MarkovSemigroup S{StochasticMatrix(2, {0.5, 0.5, 0.5, 0.5}), {1.0, 0.0}};
  try {
    schrodinger_duality(S, ProbVector({0.5, 0.5}));
    FAIL("expected AbsoluteContinuityViolated");
  } catch (const AbsoluteContinuityViolated& e) {
    CHECK(e.index == 1);
  }
}

TEST_CASE("duality gap vanishes on random pairs") {
  Rng rng(70);
  for (int trial = 0; trial < 25; ++trial) {
    int n = rng.uniform_int(2, 8);
    StochasticMatrix P = random_stochastic(rng, n);
    auto S = make_markov_semigroup(P);
    ProbVector nu = random_prob(rng, n);
    auto res = schrodinger_duality(S, nu);
    CHECK(std::abs(res.lp_value - res.kl_value) <= 1e-9);
    CHECK(res.kl_value >= -1e-12);
  }
}
