#include <doctest.h>

#include <cmath>

#include "gmpsos/applications.hpp"
#include "gmpsos/diagnostics.hpp"
#include "gmpsos/errors.hpp"

using namespace gmpsos;

namespace {

const std::vector<double> kSchedule{1e-2, 1e-4, 1e-6};

AttainmentDiagnosis synthetic(std::vector<double> norms) {
  AttainmentDiagnosis d;
  double gap = 1e-2;
  for (double n : norms) {
    d.points.push_back({gap, n, SolveStatus::optimal, true});
    gap *= 1e-2;
  }
  return d;
}

}  // namespace

TEST_CASE("schedule validation") {
  const auto inst = counterexample_instance(2);
  CHECK_THROWS_AS(attainment_diagnostic(inst, 2, {1e-2, 1e-4}), std::invalid_argument);
  CHECK_THROWS_AS(attainment_diagnostic(inst, 2, {1e-2, 1e-2, 1e-4}), std::invalid_argument);
  CHECK_THROWS_AS(attainment_diagnostic(inst, 2, {1e-4, 1e-2, 1e-6}), std::invalid_argument);
  CHECK_THROWS_AS(attainment_diagnostic(inst, 2, {1e-2, 0.0, -1.0}), std::invalid_argument);
}

TEST_CASE("classification thresholds") {
  auto grow = synthetic({25, 2500, 250000});
  classify(grow);
  CHECK(grow.verdict == "diverging");
  CHECK(grow.slope == doctest::Approx(1.0));

  auto flat = synthetic({0.25, 0.2501, 0.2501});
  classify(flat);
  CHECK(flat.verdict == "bounded");

  // Slope 0.2: growing but too slowly to call.
  auto slow = synthetic({1.0, 2.51189, 6.30957});
  classify(slow);
  CHECK(slow.verdict == "inconclusive");

  auto zeros = synthetic({0.0, 0.0, 0.0});
  classify(zeros);
  CHECK(zeros.verdict == "bounded");

  auto broken = synthetic({1.0, 1.0, 1.0});
  broken.points[1].usable = broken.points[2].usable = false;
  classify(broken);
  CHECK(broken.verdict == "inconclusive");
}

TEST_CASE("second counterexample: the finite dual diverges like 1/(4 gap)") {
  for (int t = 2; t <= 3; ++t) {
    const auto d = attainment_diagnostic(counterexample_instance(2), t, kSchedule);
    CAPTURE(t);
    CHECK(d.verdict == "diverging");
    CHECK_FALSE(d.partial);
    CHECK(std::abs(d.reference_value) < 1e-6);
    REQUIRE(d.points.size() == 3);
    CHECK(d.points[2].lambda_norm >= 10 * d.points[1].lambda_norm);
    // Same order as the explicit sequence; the constant depends on t.
    for (const auto& p : d.points) {
      CHECK(p.lambda_norm * 4 * p.gap > 0.5);
      CHECK(p.lambda_norm * 4 * p.gap < 2.0);
    }
  }
}

TEST_CASE("degree-2 variant of the first counterexample is bounded") {
  RelaxationOptions opts;
  opts.allow_below_tmin = true;
  const auto d = attainment_diagnostic(build_sos_strengthening(counterexample_instance(1), 1, opts), kSchedule);
  CHECK(d.verdict == "bounded");
  CHECK(d.reference_value == doctest::Approx(-0.25).epsilon(1e-6));
  CHECK(d.points.back().lambda_norm == doctest::Approx(0.25).epsilon(1e-3));
}

TEST_CASE("grid proxy of the infinite dual") {
  const auto grid = support_grid(counterexample_instance(1));
  // Geometric nodes 0.1, 0.01, 0.001 (and mirrors) already lie on the uniform grid.
  CHECK(grid.size() == 2001 + 2 * 48 - 6);
  for (const auto& x : grid) {
    CHECK(x[0] >= 0.0);
    CHECK(x[0] <= 1.0);
  }
  CHECK(infinite_dual_proxy(counterexample_instance(1), kSchedule).verdict == "diverging");
  CHECK(infinite_dual_proxy(counterexample_instance(2), kSchedule).verdict == "bounded");
  CHECK(infinite_dual_proxy(counterexample_instance(3), kSchedule).verdict == "diverging");

  GmpInstance no_box = counterexample_instance(1);
  no_box.box.reset();
  CHECK_THROWS_AS(support_grid(no_box), InputError);
}

TEST_CASE("min-norm auxiliary problem shape") {
  const auto rel = build_moment_relaxation(counterexample_instance(2), 2);
  const auto aux = min_norm_dual_problem(rel.sdp, {0, 1}, 0.0, 1e-4);
  CHECK(aux.num_variables() == rel.sdp.num_variables() + 5);
  CHECK(aux.equalities().size() == rel.sdp.equalities().size() + 1);
  CHECK(aux.blocks().size() == rel.sdp.blocks().size() + 1);
  CHECK(aux.blocks().back().size == 5);
  CHECK_THROWS_AS(min_norm_dual_problem(rel.sdp, {7}, 0.0, 1e-4), std::out_of_range);
}
