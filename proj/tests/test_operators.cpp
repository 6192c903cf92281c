#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kantor/operators.hpp"
#include "kantor/rng.hpp"
#include "kantor/simplex.hpp"
#include "testing_util.hpp"

using namespace kantor;
using namespace kantor::testing;

namespace {

CostMatrix three_node() {
  CostMatrix A(3);
  A.at(0, 0) = ExtReal(5.0);
  A.at(0, 1) = ExtReal(1.0);
  A.at(1, 0) = ExtReal(3.0);
  A.at(1, 2) = ExtReal(1.0);
  A.at(2, 0) = ExtReal(1.0);
  return A;
}

StochasticMatrix swap() { return StochasticMatrix(2, {0.0, 1.0, 1.0, 0.0}); }

}  // namespace

TEST_CASE("max-plus kinds satisfy the axioms with zero violation") {
  Rng rng(1);
  for (int trial = 0; trial < 6; ++trial) {
    int n = rng.uniform_int(2, 7);
    CostMatrix A = random_cost(rng, n, 0.7, false);
    auto rep = check_axioms(KantorovichOp::max_plus(A), 300, 1000 + trial);
    CHECK(rep.max_violation() == 0.0);
    CHECK(rep.pass());
  }
  // non-standard rows lose the Lipschitz probe but keep the axioms
  CostMatrix B(2);
  B.at(0, 1) = ExtReal(0.5);
  auto op = KantorovichOp::max_plus(B);
  CHECK(!op.standard());
  auto rep = check_axioms(op, 200, 7);
  CHECK(!rep.lipschitz_checked);
  CHECK(rep.max_violation() == 0.0);
}

TEST_CASE("every kantorovich kind passes the axiom suite") {
  Rng rng(2);
  int n = 4;
  CostMatrix A = random_cost(rng, n, 0.8, false);
  StochasticMatrix P = random_stochastic(rng, n);
  ProbVector m = random_prob(rng, n);

  std::vector<KantorovichOp> ops;
  ops.push_back(KantorovichOp::max_plus(A));
  ops.push_back(KantorovichOp::forward_cost(A));
  ops.push_back(KantorovichOp::entropic(random_cost(rng, n, 1.0, false), m, 0.5));
  ops.push_back(KantorovichOp::markov(P));
  ops.push_back(KantorovichOp::reduite_step(P));
  ops.push_back(KantorovichOp::affine_shift({1, 2, 3, 0}, {0.5, -1.0, 0.0, 2.0}));
  ops.push_back(KantorovichOp::convex_energy(m, 0.25));
  ops.push_back(KantorovichOp::recession(A));
  ops.push_back(KantorovichOp::scaled(KantorovichOp::max_plus(A), 2.0));
  ops.push_back(KantorovichOp::pointwise_max(KantorovichOp::max_plus(A),
                                             KantorovichOp::recession(A)));
  ops.push_back(KantorovichOp::convex_combination(KantorovichOp::max_plus(A),
                                                  KantorovichOp::recession(A), 0.5));
  for (const auto& op : ops) {
    CAPTURE(op.kind());
    CHECK(op.kantorovich());
    auto rep = check_axioms(op, 250, 42);
    CHECK(rep.max_violation() <= 1e-9);
    CHECK(rep.pass());
  }
}

TEST_CASE("the filling scheme is not affine on constants") {
  auto op = KantorovichOp::filling_step(swap());
  CHECK(!op.kantorovich());

  Potential g{1.0, -1.0};
  Potential Tg = op.apply(g);
  CHECK(Tg[0].value() == 0.0);  // P g+ - g- = (0,1) - (0,1) at the sign split
  CHECK(Tg[1].value() == 0.0);

  // the constant-affinity counterexample: shift by 1 and compare
  Potential shifted{2.0, 0.0};
  Potential Tshift = op.apply(shifted);
  CHECK(Tshift[0].value() == 0.0);
  CHECK(Tshift[1].value() == 2.0);  // != Tg + 1 = (1, 1)

  // it is monotone and positively 1-homogeneous
  Potential Tg2 = op.apply(Potential{2.0, -2.0});
  CHECK(Tg2[0].value() == 2.0 * Tg[0].value());
  CHECK(Tg2[1].value() == 2.0 * Tg[1].value());
  auto rep = check_axioms(op, 300, 9);
  CHECK(rep.monotone == 0.0);
  CHECK(rep.constant_affine > 0.1);  // genuinely violated, not a rounding artifact
}

TEST_CASE("filling iterates conserve the invariant pairing") {
  Rng rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    int n = rng.uniform_int(2, 6);
    // build a doubly stochastic P so the uniform measure is invariant
    std::vector<double> p(static_cast<std::size_t>(n) * n, 0.0);
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int r = 0; r < 3; ++r) {  // average of three permutation matrices
      for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.uniform_int(0, i)]);
      for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i) * n + perm[i]] += 1.0 / 3;
    }
    StochasticMatrix P(n, p);
    ProbVector mu(std::vector<double>(n, 1.0 / n));
    Potential g = random_potential(rng, n);
    double expect = 0.0;
    for (int i = 0; i < n; ++i) expect += mu[i] * g[i].value();
    auto trace = filling_scheme_iterate(P, g, mu, 12);
    REQUIRE(trace.invariant_pairing.size() == 12);
    for (double v : trace.invariant_pairing) CHECK(std::abs(v - expect) <= 1e-12);
  }
}

TEST_CASE("reduite reaches the least fixed point above g") {
  auto res = reduite_fixed_point(swap(), Potential{0.0, 1.0});
  CHECK(res.ghat[0].value() == 1.0);
  CHECK(res.ghat[1].value() == 1.0);
  CHECK(res.residual == 0.0);

  // LP oracle: minimize sum h subject to h >= g and h >= P h, h free
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    int n = rng.uniform_int(2, 5);
    StochasticMatrix P = random_stochastic(rng, n);
    Potential g = random_potential(rng, n, -2.0, 2.0);
    auto fixed = reduite_fixed_point(P, g, 1e-12, 200000);

    // variables: h+ (n), h- (n), slack for h >= g (n), slack for h >= Ph (n)
    LpProblem lp;
    lp.nvars = 4 * n;
    lp.c.assign(4 * n, 0.0);
    for (int i = 0; i < n; ++i) {
      lp.c[i] = 1.0;
      lp.c[n + i] = -1.0;
    }
    for (int i = 0; i < n; ++i) {
      std::vector<double> row(4 * n, 0.0);
      row[i] = 1.0;
      row[n + i] = -1.0;
      row[2 * n + i] = -1.0;
      lp.add_row(row, g[i].value());
    }
    for (int i = 0; i < n; ++i) {
      std::vector<double> row(4 * n, 0.0);
      for (int j = 0; j < n; ++j) {
        row[j] -= P.at(i, j);
        row[n + j] += P.at(i, j);
      }
      row[i] += 1.0;
      row[n + i] -= 1.0;
      row[3 * n + i] = -1.0;
      lp.add_row(row, 0.0);
    }
    auto sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    for (int i = 0; i < n; ++i) {
      double h = sol.x[i] - sol.x[n + i];
      CHECK(std::abs(h - fixed.ghat[i].value()) <= 1e-7);
    }
  }
}

TEST_CASE("combinators reduce to known operators") {
  Rng rng(4);
  int n = 5;
  CostMatrix A = random_cost(rng, n, 0.7, false);
  CostMatrix B = random_cost(rng, n, 0.7, false);

  auto maxAB = KantorovichOp::pointwise_max(KantorovichOp::max_plus(A),
                                            KantorovichOp::max_plus(B));
  auto minCost = KantorovichOp::max_plus(entrywise_min(A, B));
  auto scaled2 = KantorovichOp::scaled(KantorovichOp::max_plus(A), 2.0);
  auto halfCost = KantorovichOp::max_plus(A.scaled(0.5));
  auto mixTT = KantorovichOp::convex_combination(KantorovichOp::max_plus(A),
                                                 KantorovichOp::max_plus(A), 0.5);
  auto s6 = KantorovichOp::scaled(KantorovichOp::scaled(KantorovichOp::max_plus(A), 2.0), 3.0);
  auto s6_direct = KantorovichOp::scaled(KantorovichOp::max_plus(A), 6.0);

  for (int trial = 0; trial < 40; ++trial) {
    Potential g = random_potential(rng, n);
    // max of two max-plus operators is the max-plus operator of the min cost
    CHECK(sup_dist(maxAB.apply(g), minCost.apply(g)) == 0.0);
    // scaling by 2 equals halving the cost, exactly on dyadic data
    CHECK(sup_dist(scaled2.apply(g), halfCost.apply(g)) == 0.0);
    // mixing an operator with itself changes nothing
    CHECK(sup_dist(mixTT.apply(g), KantorovichOp::max_plus(A).apply(g)) == 0.0);
    // scaling composes multiplicatively
    CHECK(sup_dist(s6.apply(g), s6_direct.apply(g)) <= 1e-12);
  }

  StochasticMatrix P = random_stochastic(rng, n);
  auto markov2 = KantorovichOp::scaled(KantorovichOp::markov(P), 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    Potential g = random_potential(rng, n);
    // Markov operators are their own scalings (1-homogeneous + additive)
    CHECK(sup_dist(markov2.apply(g), KantorovichOp::markov(P).apply(g)) == 0.0);
  }
}

TEST_CASE("forward and backward senses take the declared shapes") {
  CostMatrix A = three_node();
  auto bwd = KantorovichOp::max_plus(A);
  auto fwd = KantorovichOp::forward_cost(A);
  CHECK(bwd.sense() == KantorovichOp::Sense::Backward);
  CHECK(fwd.sense() == KantorovichOp::Sense::Forward);
  Potential g{0.0, 2.0, 1.0};
  CHECK(bwd.apply(g)[0].value() == 1.0);
  CHECK(fwd.apply(g)[0].value() == 2.0);
  CHECK_THROWS_AS(bwd.apply(Potential(2, ExtReal(0.0))), DimensionMismatch);
}

TEST_CASE("construction rejects bad arguments") {
  CHECK_THROWS_AS(KantorovichOp::scaled(KantorovichOp::max_plus(three_node()), 0.0),
                  NonpositiveScale);
  CHECK_THROWS_AS(KantorovichOp::scaled(KantorovichOp::max_plus(three_node()), -1.0),
                  NonpositiveScale);
  CHECK_THROWS_AS(KantorovichOp::convex_combination(KantorovichOp::max_plus(three_node()),
                                                    KantorovichOp::max_plus(three_node()), 1.5),
                  Error);
  CHECK_THROWS_AS(KantorovichOp::entropic(three_node(), ProbVector({0.5, 0.5}), 1.0),
                  DimensionMismatch);
  CHECK_THROWS_AS(KantorovichOp::entropic(CostMatrix(2, ExtReal(0.0)),
                                          ProbVector({0.5, 0.5}), 0.0),
                  NonpositiveScale);
}
