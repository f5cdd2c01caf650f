#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "gmpsos/applications.hpp"
#include "gmpsos/errors.hpp"
#include "gmpsos/relaxation.hpp"
#include "support.hpp"

using namespace gmpsos;
using testing_support::poly;

namespace {

// Moments of the Dirac at c on N^1_{2t}.
Eigen::VectorXd dirac(double c, int t) {
  Eigen::VectorXd z(2 * t + 1);
  for (int k = 0; k <= 2 * t; ++k) z[k] = std::pow(c, k);
  return z;
}

std::vector<double> row_values(const LinearRow& r, std::size_t nvars) {
  std::vector<double> v(nvars, 0.0);
  for (const auto& [k, c] : r.terms) v[k] += c;
  return v;
}

GmpInstance linear_on_interval() {
  GmpInstance inst;
  inst.name = "shifted";
  inst.variables = {"x"};
  inst.objective = poly(1, {{{1}, 1}, {{0}, 1}});
  inst.constraints.push_back({Polynomial::constant(1, 1), 1.0, "mass"});
  return add_ball_constraint(inst, Rational(1));
}

GeneralTensor random_tensor(std::mt19937& rng, std::vector<std::size_t> dims) {
  std::normal_distribution<double> nd;
  std::size_t total = 1;
  for (auto d : dims) total *= d;
  std::vector<double> data(total);
  for (auto& v : data) v = nd(rng);
  return GeneralTensor(std::move(dims), std::move(data));
}

}  // namespace

TEST_CASE("moment matrices") {
  const Eigen::MatrixXd m = moment_matrix(dirac(0.7, 1), 1, 1);
  CHECK(m(0, 0) == 1.0);
  CHECK(m(0, 1) == doctest::Approx(0.7));
  CHECK(m(1, 1) == doctest::Approx(0.49));
  CHECK(Eigen::FullPivLU<Eigen::MatrixXd>(m).rank() == 1);

  Eigen::VectorXd leb(3);
  leb << 1.0, 0.5, 1.0 / 3.0;
  Eigen::Matrix2d expected;
  expected << 1.0, 0.5, 0.5, 1.0 / 3.0;
  CHECK((moment_matrix(leb, 1, 1) - expected).norm() < 1e-15);

  CHECK(moment_matrix(Eigen::VectorXd::Zero(15), 2, 2).isZero());
  CHECK_THROWS_AS(moment_matrix(Eigen::VectorXd::Zero(4), 1, 2), DegreeError);
}

TEST_CASE("localizing matrices") {
  const Eigen::VectorXd z = dirac(0.5, 2);
  CHECK((localizing_matrix(Polynomial::constant(1, 1), z, 2) - moment_matrix(z, 1, 2)).norm() < 1e-15);

  const Polynomial g = poly(1, {{{1}, 1}, {{2}, -1}});
  CHECK((localizing_matrix(g, z, 2) - 0.25 * moment_matrix(z, 1, 1)).norm() < 1e-15);

  const Polynomial ball = poly(1, {{{0}, 2}, {{2}, -1}});
  const Eigen::VectorXd z0 = dirac(0.0, 2);
  CHECK((localizing_matrix(ball, z0, 2) - 2.0 * moment_matrix(z0, 1, 1)).norm() < 1e-15);

  CHECK_THROWS_AS(localizing_matrix(poly(1, {{{5}, 1}}), z, 2), DegreeError);
}

TEST_CASE("first counterexample at t = 2") {
  const auto rel = build_moment_relaxation(counterexample_instance(1), 2);
  CHECK(rel.tmin == 2);
  REQUIRE(rel.index.size() == 5);
  REQUIRE(rel.sdp.equalities().size() == 2);
  CHECK(row_values(rel.sdp.equalities()[0], 5) == std::vector<double>{1, 0, 0, 0, 0});
  CHECK(rel.sdp.equalities()[0].rhs == 1.0);
  CHECK(row_values(rel.sdp.equalities()[1], 5) == std::vector<double>{0, 0, 1, -1, 0});
  CHECK(rel.sdp.equalities()[1].rhs == 0.0);
  REQUIRE(rel.sdp.blocks().size() == 3);
  CHECK(rel.sdp.blocks()[0].size == 3);
  CHECK(rel.sdp.blocks()[1].size == 2);
  CHECK(rel.sdp.blocks()[2].size == 2);
  CHECK(rel.sdp.objective() == std::vector<double>{0, -1, 1, 0, 0});

  CHECK_THROWS_AS(build_moment_relaxation(counterexample_instance(1), 1), DegreeError);
  CHECK(build_relaxation(counterexample_instance(1), 2).mode == RelaxationMode::full);
}

TEST_CASE("second counterexample at t = 2") {
  const auto rel = build_moment_relaxation(counterexample_instance(2), 2);
  REQUIRE(rel.sdp.equalities().size() == 2);
  CHECK(row_values(rel.sdp.equalities()[0], 5) == std::vector<double>{1, 0, 0, 0, 0});
  CHECK(row_values(rel.sdp.equalities()[1], 5) == std::vector<double>{0, 0, 1, 0, 0});
  CHECK(rel.sdp.equalities()[1].rhs == 0.0);
  // x^3(1-x) has order 0 at t = 2.
  CHECK(rel.sdp.blocks()[2].size == 1);
}

TEST_CASE("the degree-2 SOS variant forces the second multiplier to zero") {
  RelaxationOptions opts;
  opts.allow_below_tmin = true;
  const auto rel = build_sos_strengthening(counterexample_instance(1), 1, opts);
  CHECK(rel.side == RelaxationSide::sos);
  const auto sol = solve_sdp(rel.sdp);
  REQUIRE(sol.status == SolveStatus::optimal);
  CHECK(sol.dual_objective == doctest::Approx(-0.25).epsilon(1e-7));
  CHECK(std::abs(sol.multipliers[0] + 0.25) < 1e-6);
  CHECK(std::abs(sol.multipliers[1]) < 1e-6);
}

TEST_CASE("x + 1 on [-1, 1] has a degree-1 certificate") {
  const auto rel = build_sos_strengthening(linear_on_interval(), 1);
  const auto sol = solve_sdp(rel.sdp);
  REQUIRE(sol.status == SolveStatus::optimal);
  CHECK(std::abs(sol.dual_objective) < 1e-7);
  // sigma_0 = (x+1)^2 / 2 and the ball multiplier 1/2.
  Eigen::Matrix2d g0;
  g0 << 0.5, 0.5, 0.5, 0.5;
  CHECK((sol.dual_blocks[0].dense - g0).norm() < 1e-5);
  CHECK(sol.dual_blocks[1].dense(0, 0) == doctest::Approx(0.5).epsilon(1e-5));
}

TEST_CASE("hierarchy values are monotone and weakly dual") {
  const SolverOptions opts;
  for (int k = 1; k <= 3; ++k) {
    double prev = -1e300;
    for (int t = 2; t <= 4; ++t) {
      const auto sol = solve_sdp(build_moment_relaxation(counterexample_instance(k), t).sdp, opts);
      CAPTURE(k);
      CAPTURE(t);
      CHECK(sol.dual_objective <= sol.primal_objective + 10 * opts.tol);
      CHECK(std::abs(sol.primal_objective) < 1e-6);
      CHECK(sol.primal_objective >= prev - 1e-6);
      prev = sol.primal_objective;
    }
  }
  std::mt19937 rng(11);
  for (int r = 0; r < 3; ++r) {
    const auto inst = rank_one_gmp(random_tensor(rng, {2, 2, 2}));
    const double p2 = solve_sdp(build_reduced_relaxation(inst, 2).sdp).primal_objective;
    const double p3 = solve_sdp(build_reduced_relaxation(inst, 3).sdp).primal_objective;
    CHECK(p2 <= p3 + 1e-6);
  }
}

TEST_CASE("reduced structure over two circles") {
  const auto inst = rank_one_gmp(GeneralTensor({2, 2}, {1, 0, 0, 2}));
  const auto rel = build_reduced_relaxation(inst, 1);
  CHECK(rel.quotient->rank(2) == 13);
  REQUIRE(rel.sdp.blocks().size() == 1);
  CHECK(rel.sdp.blocks()[0].size == 5);
  CHECK(build_moment_relaxation(inst, 1).sdp.blocks()[0].size == 5);
  CHECK(build_moment_relaxation(inst, 1).index.size() == 15);
  CHECK(build_relaxation(inst, 1).mode == RelaxationMode::reduced);
}

TEST_CASE("reduced objective equals the full Riesz functional of the extended sequence") {
  std::mt19937 rng(5);
  std::normal_distribution<double> nd;
  const auto inst = rank_one_gmp(random_tensor(rng, {2, 2}));
  const auto rel = build_reduced_relaxation(inst, 2);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd zhat(static_cast<Eigen::Index>(rel.index.size()));
    for (auto& v : zhat) v = nd(rng);
    const Eigen::VectorXd z = rel.full_sequence(zhat);
    const auto all = monomials_up_to(inst.nvars(), 4);
    double full = 0.0;
    for (const auto& [m, c] : inst.objective.terms())
      full += c.get_d() * z[std::find(all.begin(), all.end(), m) - all.begin()];
    double reduced = 0.0;
    for (std::size_t k = 0; k < rel.index.size(); ++k) reduced += rel.sdp.objective()[k] * zhat[static_cast<Eigen::Index>(k)];
    CHECK(std::abs(full - reduced) < 1e-12);
  }
}

TEST_CASE("full and reduced relaxations agree on a product of circles") {
  std::mt19937 rng(17);
  for (int r = 0; r < 3; ++r) {
    const GeneralTensor A = random_tensor(rng, {2, 2});
    const auto inst = rank_one_gmp(A);
    const auto full = solve_sdp(build_moment_relaxation(inst, 2).sdp);
    const auto red = solve_sdp(build_reduced_relaxation(inst, 2).sdp);
    REQUIRE(full.status == SolveStatus::optimal);
    REQUIRE(red.status == SolveStatus::optimal);
    CHECK(std::abs(full.dual_objective - red.dual_objective) < 1e-6);
    CHECK(std::abs(full.primal_objective - red.primal_objective) < 1e-6);
    // min x'Ay over two circles is minus the largest singular value.
    Eigen::Matrix2d M;
    M << A.data()[0], A.data()[1], A.data()[2], A.data()[3];
    const double smax = Eigen::JacobiSVD<Eigen::Matrix2d>(M).singularValues()[0];
    CHECK(std::abs(red.primal_objective + smax) < 1e-6);
  }
}
