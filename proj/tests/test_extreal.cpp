#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kantor/cost_matrix.hpp"
#include "kantor/extreal.hpp"
#include "kantor/types.hpp"

using namespace kantor;

TEST_CASE("extended real arithmetic") {
  ExtReal a(2.0), b(-3.5);
  CHECK((a + b).value() == -1.5);
  CHECK((a - b).value() == 5.5);
  CHECK((-b).value() == 3.5);

  CHECK(ExtReal::inf().pos_inf());
  CHECK(ExtReal::neg_inf().neg_inf_p());
  CHECK((ExtReal::inf() + a).pos_inf());
  CHECK((ExtReal::neg_inf() + a).neg_inf_p());
  CHECK((ExtReal::inf() + ExtReal::inf()).pos_inf());

  CHECK_THROWS_AS(ExtReal::inf() + ExtReal::neg_inf(), IndeterminateSum);
  CHECK_THROWS_AS(ExtReal::inf() - ExtReal::inf(), IndeterminateSum);
  CHECK_THROWS_AS(ExtReal::neg_inf() - ExtReal::neg_inf(), IndeterminateSum);

  CHECK(ExtReal::neg_inf() < b);
  CHECK(b < a);
  CHECK(a < ExtReal::inf());
  CHECK(ext_min(a, b) == b);
  CHECK(ext_max(a, ExtReal::inf()) == ExtReal::inf());
  CHECK(ExtReal(1.0).str() == "1.000000");
  CHECK(ExtReal::inf().str() == "inf");
  CHECK(ExtReal::neg_inf().str() == "-inf");
}

TEST_CASE("reduction pairings treat infinite cost as neutral") {
  // backward max-reduction: an infinite cost contributes -inf even against
  // g = +inf, so no indeterminate sum can arise inside a reduction
  CHECK(backward_term(ExtReal::inf(), ExtReal::inf()).neg_inf_p());
  CHECK(backward_term(ExtReal(3.0), ExtReal::inf()).neg_inf_p());
  CHECK(backward_term(ExtReal::neg_inf(), ExtReal(1.0)).neg_inf_p());
  CHECK(backward_term(ExtReal(3.0), ExtReal(1.0)).value() == 2.0);
  CHECK(backward_term(ExtReal::inf(), ExtReal(1.0)).pos_inf());

  CHECK(forward_term(ExtReal::neg_inf(), ExtReal::inf()).pos_inf());
  CHECK(forward_term(ExtReal(3.0), ExtReal::inf()).pos_inf());
  CHECK(forward_term(ExtReal::inf(), ExtReal(1.0)).pos_inf());
  CHECK(forward_term(ExtReal(3.0), ExtReal(1.0)).value() == 4.0);
  CHECK(forward_term(ExtReal::neg_inf(), ExtReal(1.0)).neg_inf_p());

  CHECK(path_sum(ExtReal::inf(), ExtReal(5.0)).pos_inf());
  CHECK(path_sum(ExtReal(5.0), ExtReal::inf()).pos_inf());
  CHECK(path_sum(ExtReal(2.0), ExtReal(3.0)).value() == 5.0);
}

TEST_CASE("potential helpers") {
  Potential g{1.0, -2.0, 0.5};
  CHECK(g.size() == 3);
  CHECK(g.proper());
  CHECK(g.all_finite());
  CHECK(g.bounded_above());
  CHECK(g.max().value() == 1.0);
  CHECK(g.min().value() == -2.0);
  CHECK(g.shifted(2.0)[1].value() == 0.0);

  Potential h(2, ExtReal::neg_inf());
  CHECK(!h.proper());
  h[0] = ExtReal(4.0);
  CHECK(h.proper());
  CHECK(!h.all_finite());
  CHECK(h.shifted(1.0)[1].neg_inf_p());  // shift acts on finite entries only

  Potential top(1, ExtReal::inf());
  CHECK(!top.bounded_above());
}

TEST_CASE("sup distance and oscillation") {
  Potential a{0.0, 1.0}, b{0.5, 1.0};
  CHECK(sup_dist(a, b) == 0.5);
  CHECK_THROWS_AS(sup_dist(a, Potential{1.0}), DimensionMismatch);

  Potential c = Potential::from({ExtReal::neg_inf(), ExtReal(1.0)});
  Potential d = Potential::from({ExtReal::neg_inf(), ExtReal(3.0)});
  CHECK(sup_dist(c, d) == 2.0);  // matching -inf entries contribute no gap
  Potential e = Potential::from({ExtReal(0.0), ExtReal(1.0)});
  CHECK(sup_dist(c, e) == std::numeric_limits<double>::infinity());

  CHECK(osc_seminorm(Potential{3.0, 3.0, 3.0}) == 0.0);
  CHECK(osc_seminorm(Potential{-1.0, 3.0}) == 2.0);
  CHECK(osc_seminorm(c) == 0.0);  // only finite entries count
}

TEST_CASE("probability vectors and stochastic matrices validate") {
  CHECK_NOTHROW(ProbVector({0.25, 0.75}));
  CHECK_THROWS_AS(ProbVector({0.5, 0.4}), SchemaError);
  CHECK_THROWS_AS(ProbVector({1.5, -0.5}), SchemaError);

  CHECK_NOTHROW(StochasticMatrix(2, {0.5, 0.5, 1.0, 0.0}));
  CHECK_THROWS_AS(StochasticMatrix(2, {0.5, 0.6, 1.0, 0.0}), SchemaError);
  CHECK_THROWS_AS(StochasticMatrix(2, {0.5, 0.5, 1.0}), DimensionMismatch);

  StochasticMatrix P(2, {0.25, 0.75, 0.5, 0.5});
  auto y = P.apply({4.0, 0.0});
  CHECK(y[0] == 1.0);
  CHECK(y[1] == 2.0);
  auto mu = P.apply_left({1.0, 0.0});
  CHECK(mu[0] == 0.25);
  CHECK(mu[1] == 0.75);
}

TEST_CASE("coupling marginals") {
  Coupling pi(2, 2);
  pi.at(0, 0) = 0.25;
  pi.at(0, 1) = 0.25;
  pi.at(1, 1) = 0.5;
  auto r = pi.row_sums(), c = pi.col_sums();
  CHECK(r[0] == 0.5);
  CHECK(r[1] == 0.5);
  CHECK(c[0] == 0.25);
  CHECK(c[1] == 0.75);
}

TEST_CASE("cost matrices reject -inf and report structure") {
  CHECK_THROWS_AS(CostMatrix(1, std::vector<ExtReal>{ExtReal::neg_inf()}), SchemaError);
  CHECK_THROWS_AS(CostMatrix(2, std::vector<ExtReal>{ExtReal(0.0)}), DimensionMismatch);
  CHECK_THROWS_AS(CostMatrix(1, ExtReal::neg_inf()), SchemaError);  // fill form too

  CostMatrix A(2);
  CHECK(!A.standard());
  CHECK((A.infinite_rows() == std::vector<int>{0, 1}));
  A.at(0, 1) = ExtReal(2.0);
  CHECK(!A.standard());
  CHECK((A.infinite_rows() == std::vector<int>{1}));
  A.at(1, 0) = ExtReal(-3.0);
  CHECK(A.standard());
  CHECK(A.infinite_rows().empty());
  CHECK(!A.all_finite());
  CHECK(A.integer_valued());
  CHECK(A.min_entry().value() == -3.0);
  CHECK(A.max_finite_entry().value() == 2.0);

  CostMatrix S = A.shifted(1.0);
  CHECK(S.at(0, 1).value() == 1.0);
  CHECK(S.at(0, 0).pos_inf());
  CostMatrix Sc = A.scaled(2.0);
  CHECK(Sc.at(1, 0).value() == -6.0);
  CHECK(Sc.at(1, 1).pos_inf());

  CostMatrix B(2, ExtReal(0.0));
  CHECK(entrywise_min(A, B).at(0, 1).value() == 0.0);
  CHECK(entrywise_min(A, B).at(1, 0).value() == -3.0);
  A.at(0, 0) = ExtReal(0.5);
  CHECK(!A.integer_valued());
}

TEST_CASE("power costs on a grid") {
  CostMatrix A = power_cost({0.0, 0.5, 1.0}, 2.0);
  CHECK(A.at(0, 2).value() == 1.0);
  CHECK(A.at(0, 1).value() == 0.25);
  CHECK(A.at(1, 1).value() == 0.0);
  CostMatrix B = power_cost({0.0, 0.25}, 1.0);
  CHECK(B.at(0, 1).value() == 0.25);
  CHECK(B.at(1, 0).value() == 0.25);
}

TEST_CASE("finite space metric validation") {
  FiniteSpace X;
  X.n = 2;
  X.labels = {"a", "b"};
  X.metric = std::vector<double>{0.0, 1.0, 1.0, 0.0};
  CHECK_NOTHROW(X.validate());
  X.metric = std::vector<double>{0.0, 1.0, 2.0, 0.0};  // asymmetric
  CHECK_THROWS_AS(X.validate(), SchemaError);
  X.metric = std::vector<double>{0.0, 5.0, 1.0, 5.0, 0.0, 1.0, 1.0, 1.0, 0.0};
  X.n = 3;
  X.labels.clear();
  CHECK_THROWS_AS(X.validate(), SchemaError);  // triangle inequality fails
}
