#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "gmpsos/sdp.hpp"
#include "oracles.hpp"

using namespace gmpsos;
using namespace testing_support;

namespace {

// min z1 over the degree-2 relaxation of the ball [-1,1]: moment block, scalar localizing block, z0 = 1.
SdpProblem ball_pop() {
  SdpProblem p;
  const auto z0 = static_cast<int>(p.add_variable(0.0, "z0"));
  const auto z1 = static_cast<int>(p.add_variable(1.0, "z1"));
  const auto z2 = static_cast<int>(p.add_variable(0.0, "z2"));
  const auto m = p.add_block(BlockKind::psd, 2, "moment");
  p.add_entry(m, z0, 0, 0, 1);
  p.add_entry(m, z1, 0, 1, 1);
  p.add_entry(m, z2, 1, 1, 1);
  const auto g = p.add_block(BlockKind::psd, 1, "ball");
  p.add_entry(g, z0, 0, 0, 1);
  p.add_entry(g, z2, 0, 0, -1);
  p.add_equality({{0, 1.0}}, 1.0, "mass");
  return p;
}

}  // namespace

TEST_CASE("ball relaxation of min x reaches -1 with multiplier -1") {
  const auto sol = solve_sdp(ball_pop());
  CHECK(sol.status == SolveStatus::optimal);
  CHECK(std::abs(sol.primal_objective + 1.0) <= 1e-8);
  CHECK(std::abs(sol.dual_objective + 1.0) <= 1e-8);
  REQUIRE(sol.multipliers.size() == 1);
  CHECK(std::abs(sol.multipliers[0] + 1.0) <= 1e-7);
  CHECK(sol.errors.relative_gap <= 1e-8);
  for (const auto& b : sol.primal_blocks) CHECK(b.min_eigenvalue() >= -1e-8);
  for (const auto& b : sol.dual_blocks) CHECK(b.min_eigenvalue() >= -1e-8);
}

TEST_CASE("random diagonal programs match vertex enumeration") {
  std::mt19937 rng(20261015);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 2;
    const Lp lp = random_lp(rng, n, 1 + trial % 4, trial % 3 == 0);
    const double expected = vertex_oracle(lp);
    const auto sol = solve_sdp(to_sdp(lp));
    INFO("trial " << trial);
    REQUIRE(sol.status == SolveStatus::optimal);
    CHECK(std::abs(sol.primal_objective - expected) <= 1e-8 * (1 + std::abs(expected)));
    // The dual side carries the residual of the stopping test.
    CHECK(std::abs(sol.dual_objective - expected) <= 1e-7 * (1 + std::abs(expected)));
  }
}

TEST_CASE("largest eigenvalue as an SDP") {
  std::mt19937 rng(7);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 3 + trial % 4;
    Eigen::MatrixXd A(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) A(i, j) = A(j, i) = nd(rng);
    // min s  s.t.  s I - A >= 0
    SdpProblem p;
    p.add_variable(1.0, "s");
    const auto b = p.add_block(BlockKind::psd, n);
    for (int i = 0; i < n; ++i) {
      p.add_entry(b, 0, i, i, 1.0);
      for (int j = i; j < n; ++j) p.add_entry(b, BlockEntry::kConstant, i, j, -A(i, j));
    }
    const double lmax = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(A).eigenvalues().maxCoeff();
    const auto sol = solve_sdp(p);
    REQUIRE(sol.status == SolveStatus::optimal);
    CHECK(std::abs(sol.primal_objective - lmax) <= 1e-7);
  }
}

TEST_CASE("weak duality holds at the returned point") {
  const auto sol = solve_sdp(ball_pop());
  CHECK(sol.dual_objective <= sol.primal_objective + 10 * 1e-8);
}

TEST_CASE("infeasibility and unboundedness") {
  SUBCASE("empty polyhedron") {
    SdpProblem p;
    p.add_variable(1.0);
    const auto b = p.add_block(BlockKind::diagonal, 2);
    p.add_entry(b, 0, 0, 0, 1.0);  // y - 1 >= 0
    p.add_entry(b, BlockEntry::kConstant, 0, 0, -1.0);
    p.add_entry(b, 0, 1, 1, -1.0);  // -y >= 0
    CHECK(solve_sdp(p).status == SolveStatus::primal_infeasible);
  }
  SUBCASE("inconsistent equalities") {
    SdpProblem p;
    p.add_variable(0.0);
    p.add_variable(1.0);
    const auto b = p.add_block(BlockKind::psd, 1);
    p.add_entry(b, 1, 0, 0, 1.0);
    p.add_equality({{0, 1.0}}, 1.0);
    p.add_equality({{0, 2.0}}, 3.0);
    const auto sol = solve_sdp(p);
    CHECK(sol.status == SolveStatus::primal_infeasible);
    CHECK(sol.message.find("inconsistent") != std::string::npos);
  }
  SUBCASE("psd infeasible") {
    // [[y, 1], [1, -y]] >= 0 has no solution.
    SdpProblem p;
    p.add_variable(0.0);
    const auto b = p.add_block(BlockKind::psd, 2);
    p.add_entry(b, 0, 0, 0, 1.0);
    p.add_entry(b, 0, 1, 1, -1.0);
    p.add_entry(b, BlockEntry::kConstant, 0, 1, 1.0);
    CHECK(solve_sdp(p).status == SolveStatus::primal_infeasible);
  }
  SUBCASE("unbounded below") {
    SdpProblem p;
    p.add_variable(-1.0);
    const auto b = p.add_block(BlockKind::diagonal, 1);
    p.add_entry(b, 0, 0, 0, 1.0);
    CHECK(solve_sdp(p).status == SolveStatus::dual_infeasible);
  }
}

TEST_CASE("redundant equalities are dropped") {
  auto p = ball_pop();
  p.add_equality({{0, 2.0}}, 2.0, "mass twice");
  const auto sol = solve_sdp(p);
  REQUIRE(sol.status == SolveStatus::optimal);
  CHECK(std::abs(sol.primal_objective + 1.0) <= 1e-8);
  CHECK(std::abs(sol.multipliers[0] + 2 * sol.multipliers[1] + 1.0) <= 1e-7);
}

TEST_CASE("iteration cap reports the best iterate") {
  SolverOptions opts;
  opts.max_iters = 2;
  const auto sol = solve_sdp(ball_pop(), opts);
  CHECK(sol.status == SolveStatus::max_iterations);
  CHECK(sol.y.size() == 3);
}

TEST_CASE("sparse SDPA export") {
  const std::string expected =
      "* gmpsos sparse SDPA export\n"
      "* objective offset 0\n"
      "3\n3\n2 1 -2\n0 1 0\n"
      "0 3 1 1 1\n0 3 2 2 -1\n"
      "1 1 1 1 1\n1 2 1 1 1\n1 3 1 1 1\n1 3 2 2 -1\n"
      "2 1 1 2 1\n"
      "3 1 2 2 1\n3 2 1 1 -1\n";
  CHECK(to_sdpa(ball_pop()) == expected);
}

TEST_CASE("malformed problems are rejected") {
  SdpProblem p;
  p.add_variable(0.0);
  const auto b = p.add_block(BlockKind::diagonal, 2);
  CHECK_THROWS_AS(p.add_entry(b, 0, 0, 1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(p.add_entry(b, 3, 0, 0, 1.0), std::out_of_range);
  CHECK_THROWS_AS(p.add_entry(b, 0, 2, 2, 1.0), std::out_of_range);
  CHECK_THROWS_AS(p.add_equality({{4, 1.0}}, 0.0), std::out_of_range);
}
