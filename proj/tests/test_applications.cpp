#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <chrono>
#include <cmath>
#include <random>

#include "gmpsos/applications.hpp"
#include "gmpsos/errors.hpp"
#include "support.hpp"

using namespace gmpsos;
using testing_support::poly;

namespace {

std::vector<double> gaussian(std::mt19937& rng, std::size_t n) {
  std::normal_distribution<double> nd;
  std::vector<double> v(n);
  for (auto& x : v) x = nd(rng);
  return v;
}

Eigen::VectorXd unit(std::initializer_list<double> v) {
  Eigen::VectorXd u(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) u[i++] = x;
  return u.normalized();
}

ComplexMatrix random_state(std::mt19937& rng, std::size_t n) {
  std::normal_distribution<double> nd;
  ComplexMatrix g(n, n);
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = {nd(rng), nd(rng)};
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return (rho + rho.adjoint()) / 2.0;
}

// Product of the spectral decompositions: a feasible transport plan.
double product_plan_cost(const ComplexMatrix& tau, const ComplexMatrix& omega) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> et(tau), eo(omega);
  double cost = 0.0;
  for (Eigen::Index i = 0; i < tau.rows(); ++i)
    for (Eigen::Index j = 0; j < omega.rows(); ++j)
      cost += std::max(0.0, et.eigenvalues()[i]) * std::max(0.0, eo.eigenvalues()[j]) *
              wasserstein_plan_cost(et.eigenvectors().col(i), eo.eigenvectors().col(j));
  return cost;
}

ComplexMatrix pure(std::size_t n, std::size_t k) {
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  m(k, k) = 1.0;
  return m;
}

}  // namespace

TEST_CASE("apolar product") {
  const Polynomial one = Polynomial::constant(1, 1);
  const Polynomial x = poly(1, {{{1}, 1}});
  const Polynomial x2 = poly(1, {{{2}, 1}});
  CHECK(apolar_product(x, x, 2) == 0.5);
  CHECK(apolar_product(x, x2, 2) == 0.0);
  for (int a = 0; a <= 5; ++a) CHECK(apolar_product(one, one, a) == 1.0);
  CHECK_THROWS_AS(apolar_product(x2, x, 1), DegreeError);

  std::mt19937 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = testing_support::random_polynomial(rng, 2, 3, 5);
    const auto g = testing_support::random_polynomial(rng, 2, 3, 5);
    const auto h = testing_support::random_polynomial(rng, 2, 3, 5);
    CHECK(apolar_product(f, g, 3) == doctest::Approx(apolar_product(g, f, 3)));
    CHECK(apolar_product(f * Rational(3) + h, g, 3) ==
          doctest::Approx(3 * apolar_product(f, g, 3) + apolar_product(h, g, 3)));
  }
}

TEST_CASE("symmetric tensors") {
  CHECK_THROWS_AS(SymmetricTensor(2, 2, {1, 2, 3, 4}), InputError);
  const auto v = unit({1, 2, 2});
  const auto S = SymmetricTensor::from_vector_power(v, 3);
  std::mt19937 rng(9);
  std::uniform_int_distribution<std::size_t> pick(0, 2);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<std::size_t> idx{pick(rng), pick(rng), pick(rng)};
    auto perm = idx;
    std::shuffle(perm.begin(), perm.end(), rng);
    CHECK(S.at(idx) == S.at(perm));
    CHECK(S.at(idx) == doctest::Approx(v[idx[0]] * v[idx[1]] * v[idx[2]]));
  }
}

TEST_CASE("rank-one instances") {
  const SymmetricTensor D(2, 2, {2, 0, 0, 1});
  const auto sol = solve_sdp(build_relaxation(rank_one_gmp(D), 1).sdp);
  REQUIRE(sol.status == SolveStatus::optimal);
  CHECK(sol.primal_objective == doctest::Approx(1.0).epsilon(1e-7));

  const auto zero = solve_sdp(build_relaxation(rank_one_gmp(GeneralTensor::zeros({2, 3})), 1).sdp);
  CHECK(std::abs(zero.primal_objective) < 1e-7);

  CHECK_THROWS_AS(rank_one_gmp(GeneralTensor::zeros({1, 2})), InputError);
}

TEST_CASE("quadratic forms on the sphere: t = 1 gives the smallest eigenvalue") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = gaussian(rng, 9);
    Eigen::Matrix3d M;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) M(i, j) = (g[3 * i + j] + g[3 * j + i]) / 2;
    std::vector<double> data(M.data(), M.data() + 9);
    const auto sol = solve_sdp(build_relaxation(rank_one_gmp(SymmetricTensor(2, 3, data)), 1).sdp);
    REQUIRE(sol.status == SolveStatus::optimal);
    CHECK(std::abs(sol.primal_objective - Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(M).eigenvalues()[0]) < 1e-6);
  }
}

TEST_CASE("rank-one recovery") {
  const GeneralTensor D({2, 2}, {2, 0, 0, 1});
  const auto e1 = unit({1, 0});
  const auto r = recover_rank_one(D, {e1, e1});
  CHECK(r.q == 2.0);
  CHECK(r.error_squared == doctest::Approx(1.0));

  const auto u = unit({1, -2}), v = unit({3, 1, 1});
  GeneralTensor R = GeneralTensor::zeros({2, 3});
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j) R.at({i, j}) = 3 * u[static_cast<Eigen::Index>(i)] * v[static_cast<Eigen::Index>(j)];
  const auto exact = recover_rank_one(R, {u, v});
  CHECK(exact.q == doctest::Approx(3.0));
  CHECK(std::abs(exact.error_squared) < 1e-12);

  CHECK_THROWS_AS(recover_rank_one(D, {Eigen::Vector2d(1, 1), e1}), InputError);

  std::mt19937 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const GeneralTensor A({2, 2, 2}, gaussian(rng, 8));
    const auto g = refine_minimum(A, grid_minimum(A, 5.0).point);
    CHECK(recover_rank_one(A, g.point).identity_error <= 1e-10);
  }
}

TEST_CASE("2 x 2 x 2 tensors: t = 2 matches the 1 degree grid") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 2; ++trial) {
    const GeneralTensor A({2, 2, 2}, gaussian(rng, 8));
    const auto grid = grid_minimum(A, 1.0);
    const auto sol = solve_sdp(build_relaxation(rank_one_gmp(A), 2).sdp);
    REQUIRE(sol.status == SolveStatus::optimal);
    CHECK(std::abs(sol.primal_objective - grid.value) <= 1e-3);
    CHECK(sol.primal_objective <= grid.value + 1e-8);
  }
}

TEST_CASE("tensor decomposition instances") {
  const auto e2 = SymmetricTensor::from_vector_power(unit({0, 1}), 2);
  CHECK(dehomogenize(e2) == Polynomial::constant(1, 1));
  const auto inst = tensor_decomposition_gmp(e2, default_psi(1, 2));
  REQUIRE(inst.constraints.size() == 3);
  CHECK(inst.constraints[0].b == 1.0);
  CHECK(inst.constraints[1].b == 0.0);
  CHECK(inst.constraints[2].b == 0.0);

  // Normalizing entry 3 is divided out of b_0.
  const SymmetricTensor scaled(2, 2, {1, 0, 0, 3});
  CHECK(tensor_decomposition_gmp(scaled, default_psi(1, 2)).constraints[0].b == 1.0);

  // Identity: A~ = x^2 + 1, b = (1, 0, 1), so mu = (delta_{-1} + delta_1)/2 and int (1+x^2)^2 = 4.
  const SymmetricTensor I(2, 2, {1, 0, 0, 1});
  CHECK(dehomogenize(I) == poly(1, {{{2}, 1}, {{0}, 1}}));
  const auto id = tensor_decomposition_gmp(I, default_psi(1, 2));
  CHECK(id.constraints[2].b == 1.0);
  const auto sol = solve_sdp(build_relaxation(id, 2).sdp);
  CHECK(std::isfinite(sol.primal_objective));
  CHECK(sol.primal_objective == doctest::Approx(4.0).epsilon(1e-5));

  CHECK_THROWS_AS(tensor_decomposition_gmp(SymmetricTensor(2, 2, {1, 0, 0, 0}), default_psi(1, 2)), InputError);
  CHECK(default_psi(2, 3).degree() == 4);
  CHECK(default_psi(2, 3, 7) != default_psi(2, 3));
}

TEST_CASE("state validation") {
  ComplexMatrix m = pure(2, 0);
  m(0, 1) = {0.0, 1.0};
  CHECK_THROWS_AS(HermitianState::checked(m, false), InputError);
  CHECK_THROWS_AS(HermitianState::checked(2.0 * pure(2, 0), true), InputError);
  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK_THROWS_AS(HermitianState::checked(neg, true), InputError);
  CHECK_NOTHROW(HermitianState::checked(neg, false));
}

TEST_CASE("Wasserstein relaxation bounds") {
  const auto t1 = HermitianState::checked(pure(2, 0), true);
  const auto t2 = HermitianState::checked(pure(2, 1), true);
  const auto same = solve_sdp(build_relaxation(wasserstein_gmp(t1, t1), 2).sdp);
  REQUIRE(same.status == SolveStatus::optimal);
  CHECK(std::abs(same.primal_objective) < 1e-6);
  const auto diff = solve_sdp(build_relaxation(wasserstein_gmp(t1, t2), 2).sdp);
  REQUIRE(diff.status == SolveStatus::optimal);
  CHECK(diff.primal_objective >= -1e-6);
  CHECK(diff.primal_objective <= 2.0 + 1e-6);
  CHECK(wasserstein_plan_cost(Eigen::Vector2cd(1, 0), Eigen::Vector2cd(0, 1)) == 2.0);

  std::mt19937 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const auto tau = random_state(rng, 2), omega = random_state(rng, 2);
    const auto sol = solve_sdp(build_relaxation(wasserstein_gmp(HermitianState::checked(tau, true),
                                                                HermitianState::checked(omega, true)), 2).sdp);
    CAPTURE(trial);
    // Degenerate optima occasionally stall just short of the dual tolerance; the bound needs only P.
    REQUIRE(sol.errors.primal_residual <= 1e-8);
    REQUIRE(sol.errors.relative_gap <= 1e-6);
    CHECK(sol.primal_objective >= -1e-6);
    CHECK(sol.primal_objective <= product_plan_cost(tau, omega) + 1e-6);
  }
  CHECK_THROWS_AS(wasserstein_gmp(t1, HermitianState::checked(pure(3, 0), true)), DimensionError);
}

TEST_CASE("DPS feasibility") {
  const ComplexMatrix mixed = ComplexMatrix::Identity(4, 4) / 4.0;
  const auto sol = solve_sdp(build_relaxation(dps_gmp(HermitianState::checked(mixed, true), 2), 2).sdp);
  REQUIRE(sol.status == SolveStatus::optimal);
  CHECK(sol.primal_objective == doctest::Approx(1.0).epsilon(1e-6));

  const auto prod = solve_sdp(build_relaxation(dps_gmp(HermitianState::checked(pure(4, 0), true), 2), 2).sdp);
  CHECK(prod.status == SolveStatus::optimal);
  CHECK(prod.primal_objective == doctest::Approx(1.0).epsilon(1e-6));

  ComplexMatrix bad = mixed;
  bad(0, 0) = 0.55;
  bad(3, 3) = -0.05;
  const auto inf = solve_sdp(build_relaxation(dps_gmp(HermitianState::checked(bad, false), 2), 2).sdp);
  CHECK(inf.status == SolveStatus::primal_infeasible);

  CHECK_THROWS_AS(dps_gmp(HermitianState::checked(ComplexMatrix::Identity(9, 9) / 9.0, true), 3), InputError);
}

TEST_CASE("counterexample suite") {
  const auto start = std::chrono::steady_clock::now();
  const auto rep = counterexample_suite();
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(seconds < 5.0);
  REQUIRE(rep.rows.size() == 3);
  CHECK(rep.matches_expected());
  for (const auto& r : rep.rows) CHECK(std::abs(r.primal_value) < 1e-6);
  CHECK(rep.rows[0].has_variant);
  CHECK(rep.rows[0].variant_value == doctest::Approx(-0.25).epsilon(1e-6));
  CHECK(rep.rows[0].variant_residual <= 1e-8);
  CHECK(rep.table().find("pinned_max") != std::string::npos);
}
