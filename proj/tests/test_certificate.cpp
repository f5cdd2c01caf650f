#include <doctest.h>

#include <cmath>
#include <random>

#include "gmpsos/applications.hpp"
#include "gmpsos/certificate.hpp"
#include "gmpsos/errors.hpp"

using namespace gmpsos;

namespace {

Relaxation degree_two_variant() {
  RelaxationOptions opts;
  opts.allow_below_tmin = true;
  return build_sos_strengthening(counterexample_instance(1), 1, opts);
}

// lambda = (-1/4, 0), sigma_0 = (x - 1/2)^2, no localizer weight.
Certificate closed_form(const Relaxation& rel) {
  Certificate c;
  c.mode = rel.mode;
  c.level = rel.level;
  c.lambda = {-0.25, 0.0};
  c.blocks = rel.blocks;
  for (const auto& b : rel.blocks) c.gram.push_back(Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(b.basis.size()), static_cast<Eigen::Index>(b.basis.size())));
  c.gram[0] << 0.25, -0.5, -0.5, 1.0;
  return c;
}

}  // namespace

TEST_CASE("closed-form certificate of the first counterexample is exact") {
  const auto rel = degree_two_variant();
  REQUIRE(rel.blocks.size() == 3);
  REQUIRE(rel.blocks[0].basis.size() == 2);
  auto cert = closed_form(rel);
  const auto rep = verify_certificate(cert, rel.instance, 1e-12);
  CHECK(rep.residual == 0.0);
  CHECK(rep.residual_polynomial.is_zero());
  CHECK(rep.passed);
  CHECK(cert.value(rel.instance) == -0.25);

  cert.lambda[0] += 1e-3;
  const auto bad = verify_certificate(cert, rel.instance, 1e-6);
  CHECK(bad.residual == doctest::Approx(1e-3).epsilon(1e-9));
  CHECK_FALSE(bad.passed);
}

TEST_CASE("indefinite Gram matrices fail verification") {
  const auto rel = degree_two_variant();
  auto cert = closed_form(rel);
  cert.gram[1](0, 0) = -1e-3;
  const auto rep = verify_certificate(cert, rel.instance, 1e-6);
  CHECK(rep.min_gram_eigenvalue == doctest::Approx(-1e-3));
  CHECK_FALSE(rep.passed);
}

TEST_CASE("extracted certificate of the degree-2 variant") {
  const auto rel = degree_two_variant();
  const auto sol = solve_sdp(rel.sdp);
  REQUIRE(sol.status == SolveStatus::optimal);
  const auto cert = extract_certificate(sol, rel);
  const auto rep = verify_certificate(cert, rel.instance, 1e-8);
  CHECK(rep.passed);
  CHECK(rep.residual <= 1e-8);
  CHECK(std::abs(cert.residual - rep.residual) < 1e-12);
  CHECK(cert.value(rel.instance) == doctest::Approx(-0.25).epsilon(1e-6));
  CHECK(std::abs(cert.lambda[1]) < 1e-6);
}

TEST_CASE("reduced certificates verify through normal forms") {
  std::mt19937 rng(23);
  std::normal_distribution<double> nd;
  for (int r = 0; r < 3; ++r) {
    std::vector<double> d(8);
    for (auto& v : d) v = nd(rng);
    const auto inst = rank_one_gmp(GeneralTensor({2, 2, 2}, d));
    const auto rel = build_reduced_relaxation(inst, 2);
    const auto sol = solve_sdp(rel.sdp);
    REQUIRE(sol.status == SolveStatus::optimal);
    const auto cert = extract_certificate(sol, rel);
    CHECK(cert.mode == RelaxationMode::reduced);
    const auto rep = verify_certificate(cert, inst, 1e-8);
    CHECK(rep.passed);
    // Interior optimum: clipping removes almost nothing.
    CHECK(cert.clipped_mass < 1e-6);
    CHECK(std::abs(cert.value(inst) - sol.dual_objective) < 1e-6);
  }
}

TEST_CASE("full-mode certificates with ideal multipliers") {
  const auto inst = rank_one_gmp(GeneralTensor({2, 2}, {1, 2, 0, -1}));
  const auto rel = build_moment_relaxation(inst, 1);
  const auto sol = solve_sdp(rel.sdp);
  REQUIRE(sol.status == SolveStatus::optimal);
  const auto cert = extract_certificate(sol, rel);
  CHECK(cert.ideal_multipliers.size() == inst.support.equalities.size());
  CHECK(verify_certificate(cert, inst, 1e-8).passed);
}

TEST_CASE("extraction requires an optimal solve") {
  const auto rel = degree_two_variant();
  SolverOptions opts;
  opts.max_iters = 2;
  const auto sol = solve_sdp(rel.sdp, opts);
  REQUIRE(sol.status == SolveStatus::max_iterations);
  CHECK_THROWS_AS(extract_certificate(sol, rel), SolverError);
}
