#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kantor/mather.hpp"
#include "kantor/minplus.hpp"
#include "kantor/rng.hpp"
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

double cycle_mean(const CostMatrix& A, const std::vector<int>& cyc) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < cyc.size(); ++i) s += A.at(cyc[i], cyc[i + 1]).value();
  return s / static_cast<double>(cyc.size() - 1);
}

}  // namespace

TEST_CASE("minimum cycle mean on the three-node example") {
  auto mm = mather_constant_cycle(three_node());
  CHECK(mm.c.value() == 1.0);
  REQUIRE(mm.cycle.size() >= 2);
  CHECK(mm.cycle.front() == mm.cycle.back());
  CHECK(cycle_mean(three_node(), mm.cycle) == 1.0);
}

TEST_CASE("diagonal cost picks the cheapest self-loop") {
  CostMatrix A(3);
  A.at(0, 0) = ExtReal(3.0);
  A.at(1, 1) = ExtReal(1.0);
  A.at(2, 2) = ExtReal(2.0);
  auto mm = mather_constant_cycle(A);
  CHECK(mm.c.value() == 1.0);
  CHECK((mm.cycle == std::vector<int>{1, 1}));
}

TEST_CASE("acyclic graphs give c = +inf without errors") {
  CostMatrix A(2);
  A.at(0, 1) = ExtReal(1.0);
  auto mm = mather_constant_cycle(A);
  CHECK(mm.c.pos_inf());
  CHECK(mm.cycle.empty());
  CHECK(mather_constant_lp(A).value.pos_inf());
  CHECK_THROWS_AS(dual_certificate(A), CertificateUnavailable);
}

TEST_CASE("LP route with uniform coupling on the optimal cycle") {
  auto lp = mather_constant_lp(three_node());
  CHECK(lp.value.value() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(lp.pi.at(0, 1) == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(lp.pi.at(1, 2) == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(lp.pi.at(2, 0) == doctest::Approx(1.0 / 3).epsilon(1e-12));
  // equal marginals
  auto r = lp.pi.row_sums(), c = lp.pi.col_sums();
  for (int i = 0; i < 3; ++i) CHECK(r[i] == doctest::Approx(c[i]).epsilon(1e-12));
}

TEST_CASE("karp equals the exhaustive simple-cycle oracle exactly") {
  Rng rng(2024);
  int done = 0;
  while (done < 40) {
    int n = rng.uniform_int(2, 8);
    CostMatrix A = random_cost(rng, n, rng.uniform(0.3, 0.9), true);
    auto mm = mather_constant_cycle(A);
    ExtReal oracle = exhaustive_min_mean(A);
    CHECK(mm.c == oracle);  // exact, including the +inf case
    if (mm.c.finite()) {
      CHECK(std::abs(cycle_mean(A, mm.cycle) - mm.c.value()) <= 1e-9);
      ++done;
    }
  }
}

TEST_CASE("shifting the cost shifts the constant") {
  CostMatrix A = three_node();
  auto lp0 = mather_constant_lp(A);
  auto lp3 = mather_constant_lp(A.shifted(-3.0));  // A + 3
  CHECK(lp3.value.value() == doctest::Approx(lp0.value.value() + 3.0).epsilon(1e-12));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(lp3.pi.at(i, j) == doctest::Approx(lp0.pi.at(i, j)).epsilon(1e-9));
  auto mm = mather_constant_cycle(A.shifted(-3.0));
  CHECK(mm.c.value() == 4.0);
}

TEST_CASE("cycle and LP routes agree on random strongly connected instances") {
  Rng rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    int n = rng.uniform_int(2, 12);
    CostMatrix A = random_strongly_connected(rng, n, 0.4, trial % 2 == 0);
    auto mm = mather_constant_cycle(A);
    auto lp = mather_constant_lp(A);
    REQUIRE(mm.c.finite());
    REQUIRE(lp.value.finite());
    CHECK(std::abs(mm.c.value() - lp.value.value()) <= 1e-7);
  }
}

TEST_CASE("dual certificate attains the sup-inf value") {
  Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    int n = rng.uniform_int(2, 10);
    CostMatrix A = random_strongly_connected(rng, n, 0.5, true);
    auto mm = mather_constant_cycle(A);
    Potential h = dual_certificate(A);
    REQUIRE(h.all_finite());
    Potential Th = backward_apply(A, h);
    double lower = std::numeric_limits<double>::infinity();
    for (int x = 0; x < n; ++x) lower = std::min(lower, h[x].value() - Th[x].value());
    CHECK(std::abs(lower - mm.c.value()) <= 1e-9);
  }
  // three-node example: h = 0 works and min_x (h - Th) = 1 = c
  Potential h = dual_certificate(three_node());
  for (int x = 0; x < 3; ++x) CHECK(h[x].value() == 0.0);
}

TEST_CASE("convergence diagnostics obey the envelope") {
  MatherDiagnostics d = convergence_diagnostics(three_node(), Potential(3, ExtReal(0.0)), 60);
  REQUIRE(d.applicable);
  CHECK(d.c == 1.0);
  CHECK(d.envelope_ok);
  CHECK(std::abs(d.m_n.back() / 60.0 - d.c) <= d.K / 60.0 + 1e-12);
  // Cesaro averages <T^n g, mu> / n approach -c
  CHECK(d.cesaro_gap <= 0.2);

  // not applicable without strong connectivity
  CostMatrix B(2);
  B.at(0, 0) = ExtReal(1.0);
  B.at(0, 1) = ExtReal(1.0);
  B.at(1, 1) = ExtReal(2.0);
  CHECK(!convergence_diagnostics(B, Potential(2, ExtReal(0.0)), 10).applicable);
}

TEST_CASE("assembled certificate cross-checks every route") {
  Rng rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    int n = rng.uniform_int(3, 10);
    CostMatrix A = random_strongly_connected(rng, n, 0.5, true);
    auto cert = make_mather_certificate(A, random_potential(rng, n), 50);
    CHECK(cert.route_gap <= 1e-7);
    CHECK(std::abs(cycle_mean(A, cert.cycle) - cert.c) <= 1e-9);
    Potential Th = backward_apply(A, cert.h);
    double lower = std::numeric_limits<double>::infinity();
    for (int x = 0; x < n; ++x) lower = std::min(lower, cert.h[x].value() - Th[x].value());
    CHECK(std::abs(lower - cert.c) <= 1e-9);
  }
  CostMatrix acyclic(2);
  acyclic.at(0, 1) = ExtReal(0.0);
  CHECK_THROWS_AS(make_mather_certificate(acyclic, Potential(2, ExtReal(0.0)), 10),
                  PrimalInfinite);
}
