#include <cmath>
#include <iomanip>
#include <sstream>

#include "gmpsos/applications.hpp"
#include "gmpsos/certificate.hpp"
#include "gmpsos/errors.hpp"

namespace gmpsos {

namespace {

Polynomial x_pow(int k, Rational c = 1) { return Polynomial::term(Monomial(std::vector<int>{k}), c); }

}  // namespace

GmpInstance counterexample_instance(int k) {
  GmpInstance inst;
  inst.variables = {"x"};
  inst.box = Box{{0.0}, {1.0}};
  inst.constraints.push_back({Polynomial::constant(1, 1), 1.0, "mass"});
  switch (k) {
    case 1:
      inst.name = "quadratic_slack";
      inst.objective = x_pow(2) - x_pow(1);
      inst.constraints.push_back({x_pow(2) - x_pow(3), 0.0, "h2"});
      inst.support.inequalities.push_back(x_pow(1) - x_pow(2));
      break;
    case 2:
    case 3:
      inst.name = k == 2 ? "pinned_min" : "pinned_max";
      inst.objective = x_pow(1, k == 2 ? 1 : -1);
      inst.constraints.push_back({x_pow(2), 0.0, "h2"});
      inst.support.inequalities.push_back(x_pow(3) - x_pow(4));
      break;
    default:
      throw std::invalid_argument("counterexample index must be 1, 2 or 3");
  }
  return add_ball_constraint(inst, Rational(2));
}

bool SuiteReport::matches_expected() const {
  for (const auto& r : rows) {
    const bool inf_ok = (r.infinite.verdict == "bounded") == r.expect_infinite_attained &&
                        r.infinite.verdict != "inconclusive";
    const bool fin_ok =
        (r.finite.verdict == "bounded") == r.expect_finite_attained && r.finite.verdict != "inconclusive";
    if (!inf_ok || !fin_ok) return false;
  }
  return true;
}

std::string SuiteReport::table() const {
  std::ostringstream os;
  os << std::left << std::setw(17) << "name" << std::setw(4) << "t" << std::setw(16) << "P_t" << std::setw(16)
     << "D_t" << std::setw(26) << "infinite (expected)" << std::setw(26) << "finite (expected)" << "\n";
  auto cell = [](const AttainmentDiagnosis& d, bool expect) {
    return d.verdict + " (" + (expect ? "attained" : "not attained") + ")";
  };
  for (const auto& r : rows) {
    std::ostringstream p, d;
    p << std::setprecision(8) << std::fixed << r.primal_value;
    d << std::setprecision(8) << std::fixed << r.dual_value;
    os << std::setw(17) << r.name << std::setw(4) << r.level << std::setw(16) << p.str() << std::setw(16) << d.str()
       << std::setw(26) << cell(r.infinite, r.expect_infinite_attained) << std::setw(26)
       << cell(r.finite, r.expect_finite_attained) << "\n";
    if (r.has_variant) {
      std::ostringstream v;
      v << std::setprecision(8) << std::fixed << r.variant_value;
      os << "                 degree-2 SOS variant: value " << v.str() << ", certificate residual " << std::scientific
         << std::setprecision(2) << r.variant_residual << "\n";
    }
  }
  return os.str();
}

SuiteReport counterexample_suite(const SolverOptions& opts, const std::vector<double>& schedule) {
  SuiteReport rep;
  rep.schedule = schedule;
  const bool infinite_attained[] = {false, true, false};
  const bool finite_attained[] = {true, false, false};
  for (int k = 1; k <= 3; ++k) {
    const GmpInstance inst = counterexample_instance(k);
    SuiteRow row;
    row.name = inst.name;
    row.level = compute_tmin(inst);
    row.expect_infinite_attained = infinite_attained[k - 1];
    row.expect_finite_attained = finite_attained[k - 1];
    const Relaxation rel = build_moment_relaxation(inst, row.level);
    const auto sol = solve_sdp(rel.sdp, opts);
    row.primal_value = sol.primal_objective;
    row.dual_value = sol.dual_objective;
    row.infinite = infinite_dual_proxy(inst, schedule, opts);
    if (k == 1) {
      // The finite dual that is attained here is the degree-2 SOS form below t_min.
      RelaxationOptions ro;
      ro.allow_below_tmin = true;
      const Relaxation variant = build_sos_strengthening(inst, 1, ro);
      const auto vs = solve_sdp(variant.sdp, opts);
      row.has_variant = true;
      row.variant_value = vs.dual_objective;
      if (vs.status == SolveStatus::optimal) {
        const auto cert = extract_certificate(vs, variant);
        row.variant_residual = verify_certificate(cert, inst, 1e-8).residual;
      } else {
        row.variant_residual = INFINITY;
      }
      row.finite = attainment_diagnostic(variant, schedule, opts);
    } else {
      row.finite = attainment_diagnostic(rel, schedule, opts);
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace gmpsos
