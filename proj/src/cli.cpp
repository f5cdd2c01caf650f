#include "gmpsos/cli.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "gmpsos/certificate.hpp"
#include "gmpsos/diagnostics.hpp"
#include "gmpsos/entropy.hpp"
#include "gmpsos/errors.hpp"
#include "gmpsos/problem_io.hpp"

namespace gmpsos {

using nlohmann::json;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shortest round-trip decimal: deterministic and lossless.
std::string num(double v) {
  char buf[40];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::vector<double> read_numbers(std::istream& in) {
  std::vector<double> v;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      try {
        std::size_t used = 0;
        v.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::logic_error&) {
        throw InputError("not a number: '" + tok + "'");
      }
    }
  }
  return v;
}

std::size_t as_count(double v, const char* what) {
  if (!(v >= 1) || v != std::floor(v) || v > 1e6) throw InputError(std::string("invalid ") + what);
  return static_cast<std::size_t>(v);
}

class Session {
 public:
  Session(const RunConfig& cfg, std::ostream& out, std::ostream& err) : cfg_(cfg), out_(out), err_(err) {
    report_["command"] = cfg.command + (cfg.subcommand.empty() ? "" : " " + cfg.subcommand);
    report_["options"] = {{"tol", cfg.solver.tol},
                          {"max_iters", cfg.solver.max_iters},
                          {"step_fraction", cfg.solver.step_fraction},
                          {"mode", cfg.mode},
                          {"schedule", cfg.schedule},
                          {"psi_seed", cfg.psi_seed},
                          {"below_tmin", cfg.below_tmin}};
    out_ << "command   " << report_["command"].get<std::string>() << "\n";
    out_ << "options   tol=" << num(cfg.solver.tol) << " max_iters=" << cfg.solver.max_iters
         << " step_fraction=" << num(cfg.solver.step_fraction) << " mode=" << cfg.mode << " schedule=";
    for (std::size_t i = 0; i < cfg.schedule.size(); ++i) out_ << (i ? "," : "") << num(cfg.schedule[i]);
    out_ << "\n";
  }

  int dispatch() {
    const auto& c = cfg_.command;
    if (c == "validate") return validate();
    if (c == "solve") return solve();
    if (c == "reduce") return reduce();
    if (c == "witness") return witness();
    if (c == "diagnose") return diagnose();
    if (c == "examples") return examples();
    if (c == "tensor") return tensor();
    if (c == "quantum") return quantum();
    throw UsageError("unknown command '" + c + "'");
  }

  int finish(int code) {
    report_["exit_code"] = code;
    if (!cfg_.out.empty()) {
      std::ofstream f(cfg_.out);
      if (!f) throw InputError("cannot write " + cfg_.out);
      f << report_.dump(2) << "\n";
    }
    return code;
  }

 private:
  const std::string& input(std::size_t k) const {
    if (cfg_.inputs.size() <= k) throw UsageError(cfg_.command + ": missing input file");
    return cfg_.inputs[k];
  }

  GmpInstance load(std::size_t k = 0) {
    auto inst = load_problem(input(k));
    return inst;
  }

  void describe(const GmpInstance& inst) {
    report_["instance"] = {{"name", inst.name}, {"hash", instance_hash(inst)}, {"nvars", inst.nvars()}};
    out_ << "instance  " << inst.name << "  hash " << instance_hash(inst) << "  nvars " << inst.nvars() << "\n";
  }

  int level_for(const GmpInstance& inst) {
    const int tmin = compute_tmin(inst);
    int t = cfg_.level.value_or(tmin);
    if (t < 0) throw UsageError("level must be nonnegative");
    if (t < tmin) {
      if (cfg_.below_tmin) {
        err_ << "warning: level " << t << " is below t_min = " << tmin << "; assembling the below-t_min relaxation\n";
      } else {
        err_ << "warning: level " << t << " raised to t_min = " << tmin << "\n";
        t = tmin;
      }
    }
    report_["level"] = t;
    report_["tmin"] = tmin;
    return t;
  }

  std::optional<RelaxationMode> mode() const {
    if (cfg_.mode == "auto") return std::nullopt;
    if (cfg_.mode == "full") return RelaxationMode::full;
    if (cfg_.mode == "reduced") return RelaxationMode::reduced;
    throw UsageError("mode must be auto, full or reduced");
  }

  Relaxation relax(const GmpInstance& inst, int t) {
    RelaxationOptions o;
    o.allow_below_tmin = cfg_.below_tmin;
    auto rel = build_relaxation(inst, t, mode(), o);
    report_["mode"] = to_string(rel.mode);
    out_ << "level     " << t << "  (t_min " << rel.tmin << ")  mode " << to_string(rel.mode) << "  variables "
         << rel.sdp.num_variables() << "  rows " << rel.sdp.equalities().size() << "\n";
    return rel;
  }

  static bool usable(const SdpSolution& sol) {
    return sol.status == SolveStatus::optimal ||
           (sol.status == SolveStatus::max_iterations && sol.errors.primal_residual <= kUsableResidual &&
            sol.errors.relative_gap <= kUsableResidual && sol.errors.dual_residual_scaled <= kUsableResidual);
  }

  // Solve and report; returns the exit code for the solve alone.
  int report_solution(const SdpSolution& sol, const char* value_name) {
    json s = {{"status", to_string(sol.status)},
              {"iterations", sol.iterations},
              {"primal_objective", sol.primal_objective},
              {"dual_objective", sol.dual_objective},
              {"primal_residual", sol.errors.primal_residual},
              {"dual_residual", sol.errors.dual_residual},
              {"relative_gap", sol.errors.relative_gap}};
    report_["solution"] = s;
    out_ << "status    " << to_string(sol.status) << " after " << sol.iterations << " iterations\n";
    if (!sol.message.empty()) out_ << "message   " << sol.message << "\n";
    switch (sol.status) {
      case SolveStatus::primal_infeasible:
        out_ << value_name << "  infeasible: the targets admit no pseudo-moment sequence at this level\n";
        return exit_ok;
      case SolveStatus::dual_infeasible:
        out_ << value_name << "  unbounded below\n";
        return exit_ok;
      default:
        break;
    }
    out_ << "P_t       " << num(sol.primal_objective) << "\n";
    out_ << "D_t       " << num(sol.dual_objective) << "\n";
    out_ << "residuals primal " << num(sol.errors.primal_residual) << "  dual " << num(sol.errors.dual_residual)
         << "  gap " << num(sol.errors.relative_gap) << "\n";
    if (usable(sol)) return exit_ok;
    err_ << "error: solver did not reach the requested accuracy\n";
    return exit_solver;
  }

  int validate() {
    const auto inst = load();
    describe(inst);
    const auto rep = validate_instance(inst);
    json errors = json::array();
    for (const auto& e : rep.errors) {
      out_ << "error     " << e.code << ": " << e.message << (e.hint.empty() ? "" : " (" + e.hint + ")") << "\n";
      errors.push_back({{"code", e.code}, {"message", e.message}, {"hint", e.hint}});
    }
    for (const auto& n : rep.notes) out_ << "note      " << n << "\n";
    out_ << "groebner  " << (rep.groebner_verified ? "verified" : "not verified") << "\n";
    out_ << "radical   " << to_string(rep.real_radical) << "\n";
    out_ << "reduced   " << (reduced_mode_eligible(inst) ? "eligible" : "not eligible") << "\n";
    report_["validation"] = {{"ok", rep.ok()},
                             {"errors", errors},
                             {"notes", rep.notes},
                             {"groebner_verified", rep.groebner_verified},
                             {"real_radical", to_string(rep.real_radical)}};
    if (rep.ok()) {
      out_ << "t_min     " << compute_tmin(inst) << "\nvalid\n";
      return exit_ok;
    }
    out_ << "invalid\n";
    return exit_validation;
  }

  int solve() {
    const auto inst = load();
    describe(inst);
    require_valid(inst);
    const int t = level_for(inst);
    const auto rel = relax(inst, t);
    const auto sol = solve_sdp(rel.sdp, cfg_.solver);
    const int code = report_solution(sol, "P_t     ");
    if (sol.status != SolveStatus::optimal) return code;
    const auto cert = extract_certificate(sol, rel);
    const auto check = verify_certificate(cert, rel.instance, 1e-6);
    out_ << "certificate value " << num(cert.value(rel.instance)) << "  residual " << num(check.residual)
         << "  min Gram eigenvalue " << num(check.min_gram_eigenvalue) << "  clipped " << num(cert.clipped_mass)
         << "  " << (check.passed ? "verified" : "not verified") << "\n";
    out_ << "lambda   ";
    for (double l : cert.lambda) out_ << " " << num(l);
    out_ << "\n";
    json grams = json::array();
    for (std::size_t k = 0; k < cert.gram.size(); ++k) {
      json g = json::array();
      for (Eigen::Index i = 0; i < cert.gram[k].rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < cert.gram[k].cols(); ++j) row.push_back(cert.gram[k](i, j));
        g.push_back(row);
      }
      grams.push_back({{"label", cert.blocks[k].label}, {"gram", g}});
    }
    report_["certificate"] = {{"lambda", cert.lambda},
                              {"value", cert.value(rel.instance)},
                              {"residual", check.residual},
                              {"min_gram_eigenvalue", check.min_gram_eigenvalue},
                              {"clipped_mass", cert.clipped_mass},
                              {"verified", check.passed},
                              {"blocks", grams}};
    return code;
  }

  int reduce() {
    const auto inst = load();
    describe(inst);
    require_valid(inst);
    if (!reduced_mode_eligible(inst))
      throw ValidationError("reduce needs a verified Groebner basis of a real radical ideal");
    const int t = level_for(inst);
    const QuotientBasis qb(inst.support.equalities, inst.nvars(), 2 * t);
    out_ << "level     " << t << "  quotient degree " << 2 * t << "\n";
    out_ << "ranks    ";
    json ranks = json::array();
    for (int d = 0; d <= 2 * t; ++d) {
      out_ << " r_" << d << "=" << qb.rank(d);
      ranks.push_back(qb.rank(d));
    }
    out_ << "\n" << qb.dump();
    json basis = json::array();
    for (const auto& m : qb.basis()) basis.push_back(m.to_string());
    const Eigen::MatrixXd U = qb.U(2 * t);
    json rows = json::array();
    for (Eigen::Index i = 0; i < U.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index j = 0; j < U.cols(); ++j) row.push_back(U(i, j));
      rows.push_back(row);
    }
    report_["reduction"] = {{"ranks", ranks}, {"basis", basis}, {"U", rows}};
    return exit_ok;
  }

  int witness() {
    const auto inst = load();
    describe(inst);
    require_valid(inst);
    const int t = level_for(inst);
    FitOptions fo;
    const auto rep = strict_feasibility_witness(inst, t, fo);
    out_ << "level     " << t << "  mode " << to_string(rep.mode) << "\n";
    out_ << "fit       " << (rep.fit.converged ? "converged" : "failed") << " after " << rep.fit.iterations
         << " Newton steps, residual " << num(rep.fit.residual) << "\n";
    if (!rep.fit.diagnostic.empty()) out_ << "diagnostic " << rep.fit.diagnostic << "\n";
    out_ << std::left << std::setw(12) << "constraint" << std::setw(26) << "kappa" << "target\n";
    json kappa = json::array();
    for (std::size_t i = 0; i < inst.constraints.size(); ++i) {
      const auto& c = inst.constraints[i];
      out_ << std::setw(12) << c.label << std::setw(26) << num(rep.fit.density.kappa[i]) << num(c.b) << "\n";
      kappa.push_back({{"label", c.label}, {"kappa", rep.fit.density.kappa[i]}, {"target", c.b}});
    }
    out_ << "log normalizer " << num(rep.fit.density.log_normalizer) << "\n";
    json blocks = json::array();
    if (!rep.blocks.empty()) {
      out_ << std::setw(24) << "block" << std::setw(6) << "size" << "min eigenvalue\n";
      for (const auto& b : rep.blocks) {
        out_ << std::setw(24) << b.label << std::setw(6) << b.size << num(b.min_eigenvalue) << "\n";
        blocks.push_back({{"label", b.label}, {"size", b.size}, {"min_eigenvalue", b.min_eigenvalue}});
      }
      out_ << "constraint residual " << num(rep.constraint_residual) << "  quadrature error "
           << num(rep.quadrature_error) << "\n";
    }
    out_ << std::right << "witness   " << (rep.success ? "" : "failed: ") << rep.message << "\n";
    report_["mode"] = to_string(rep.mode);
    report_["witness"] = {{"success", rep.success},
                          {"message", rep.message},
                          {"kappa", kappa},
                          {"log_normalizer", rep.fit.density.log_normalizer},
                          {"fit_residual", rep.fit.residual},
                          {"blocks", blocks},
                          {"constraint_residual", rep.constraint_residual},
                          {"quadrature_error", rep.quadrature_error}};
    return rep.success ? exit_ok : exit_solver;
  }

  json diagnosis_json(const AttainmentDiagnosis& d) {
    json pts = json::array();
    for (const auto& p : d.points)
      pts.push_back({{"gap", p.gap}, {"lambda_norm", p.lambda_norm}, {"status", to_string(p.status)}, {"usable", p.usable}});
    return {{"verdict", d.verdict}, {"slope", d.slope}, {"reference_value", d.reference_value},
            {"partial", d.partial}, {"note", d.note}, {"points", pts}};
  }

  void print_diagnosis(const char* title, const AttainmentDiagnosis& d) {
    out_ << title << "  reference P " << num(d.reference_value) << "\n";
    out_ << "  " << std::left << std::setw(12) << "gap" << std::setw(26) << "|lambda|" << "status\n";
    for (const auto& p : d.points)
      out_ << "  " << std::setw(12) << num(p.gap) << std::setw(26) << num(p.lambda_norm) << to_string(p.status)
           << (p.usable ? "" : " (unusable)") << "\n";
    out_ << std::right << "  slope " << num(d.slope) << "  verdict " << d.verdict << "\n";
    if (!d.note.empty()) out_ << "  note " << d.note << "\n";
  }

  int diagnose() {
    const auto inst = load();
    describe(inst);
    require_valid(inst);
    const int t = level_for(inst);
    const auto rel = relax(inst, t);
    const auto finite = attainment_diagnostic(rel, cfg_.schedule, cfg_.solver);
    print_diagnosis("finite dual", finite);
    report_["finite"] = diagnosis_json(finite);
    bool diverging = finite.verdict == "diverging";
    if (inst.box && inst.nvars() <= 2) {
      const auto proxy = infinite_dual_proxy(inst, cfg_.schedule, cfg_.solver);
      print_diagnosis("grid proxy of the infinite dual", proxy);
      report_["infinite_proxy"] = diagnosis_json(proxy);
    }
    if (cfg_.expect_attained && diverging) {
      err_ << "error: multipliers diverge but attainment was expected\n";
      return exit_diverging;
    }
    return exit_ok;
  }

  int examples() {
    const auto suite = counterexample_suite(cfg_.solver, cfg_.schedule);
    out_ << suite.table();
    json rows = json::array();
    bool diverging = false;
    for (const auto& r : suite.rows) {
      json row = {{"name", r.name},
                  {"level", r.level},
                  {"primal_value", r.primal_value},
                  {"dual_value", r.dual_value},
                  {"infinite", diagnosis_json(r.infinite)},
                  {"finite", diagnosis_json(r.finite)}};
      if (r.has_variant) row["variant"] = {{"value", r.variant_value}, {"residual", r.variant_residual}};
      rows.push_back(row);
      diverging = diverging || r.infinite.verdict == "diverging" || r.finite.verdict == "diverging";
    }
    report_["rows"] = rows;
    report_["matches_expected"] = suite.matches_expected();
    out_ << "pattern   " << (suite.matches_expected() ? "matches" : "DOES NOT MATCH") << " the expected attainment grid\n";
    if (cfg_.expect_attained && diverging) return exit_diverging;
    return suite.matches_expected() ? exit_ok : exit_solver;
  }

  GeneralTensor tensor_file(std::size_t k) {
    std::ifstream in(input(k));
    if (!in) throw InputError("cannot open tensor file " + input(k));
    return read_tensor(in);
  }

  HermitianState state_file(std::size_t k, bool require_state) {
    std::ifstream in(input(k));
    if (!in) throw InputError("cannot open state file " + input(k));
    return read_state(in, require_state);
  }

  // Local search for a minimizer: a grid for 2 x ... x 2, deterministic random starts otherwise.
  GridSearchResult local_minimum(const GeneralTensor& A) {
    const bool small = A.order() <= 3 && std::all_of(A.dims().begin(), A.dims().end(), [](auto d) { return d == 2; });
    if (small) return refine_minimum(A, grid_minimum(A, 1.0).point);
    std::mt19937 rng(cfg_.psi_seed);
    std::normal_distribution<double> nd;
    GridSearchResult best;
    best.value = INFINITY;
    for (int start = 0; start < 32; ++start) {
      std::vector<Eigen::VectorXd> u;
      for (auto d : A.dims()) {
        Eigen::VectorXd v(static_cast<Eigen::Index>(d));
        for (auto& x : v) x = nd(rng);
        u.push_back(v.normalized());
      }
      auto r = refine_minimum(A, u);
      if (r.value < best.value) best = std::move(r);
    }
    return best;
  }

  int tensor() {
    if (cfg_.subcommand == "rank1") {
      const auto A = tensor_file(0);
      const auto inst = rank_one_gmp(A);
      describe(inst);
      const int t = level_for(inst);
      const auto rel = relax(inst, t);
      const auto sol = solve_sdp(rel.sdp, cfg_.solver);
      const int code = report_solution(sol, "value   ");
      if (code != exit_ok || sol.status != SolveStatus::optimal) return code;
      const auto local = local_minimum(A);
      const auto rec = recover_rank_one(A, local.point);
      out_ << "local minimum " << num(local.value) << "  relaxation gap " << num(local.value - sol.primal_objective)
           << "\n";
      out_ << "q " << num(rec.q) << "  |A - q u|^2 " << num(rec.error_squared) << "  identity error "
           << num(rec.identity_error) << "\n";
      json factors = json::array();
      for (const auto& u : rec.factors) factors.push_back(std::vector<double>(u.data(), u.data() + u.size()));
      report_["rank_one"] = {{"relaxation_value", sol.primal_objective}, {"local_value", local.value},
                             {"q", rec.q}, {"factors", factors}, {"error_squared", rec.error_squared},
                             {"identity_error", rec.identity_error}};
      return exit_ok;
    }
    if (cfg_.subcommand == "decompose") {
      const auto G = tensor_file(0);
      const auto n = G.dims().front();
      const SymmetricTensor A(G.order(), n, G.data());
      const auto psi = default_psi(n - 1, static_cast<int>(A.order()), cfg_.psi_seed);
      const auto inst = tensor_decomposition_gmp(A, psi);
      describe(inst);
      const int t = level_for(inst);
      const auto rel = relax(inst, t);
      const auto sol = solve_sdp(rel.sdp, cfg_.solver);
      report_["psi_degree"] = psi.degree();
      return report_solution(sol, "value   ");
    }
    throw UsageError("tensor needs rank1 or decompose");
  }

  int quantum() {
    GmpInstance inst;
    if (cfg_.subcommand == "wasserstein") {
      const auto tau = state_file(0, true);
      const auto omega = state_file(1, true);
      inst = wasserstein_gmp(tau, omega);
    } else if (cfg_.subcommand == "dps") {
      // Hermitian but not necessarily a state: a non-PSD input is reported infeasible.
      inst = dps_gmp(state_file(0, false), kDpsMaxDimension);
    } else {
      throw UsageError("quantum needs wasserstein or dps");
    }
    describe(inst);
    const int t = level_for(inst);
    const auto rel = relax(inst, t);
    const auto sol = solve_sdp(rel.sdp, cfg_.solver);
    const int code = report_solution(sol, "value   ");
    if (cfg_.subcommand == "dps") {
      const bool sep = sol.status != SolveStatus::primal_infeasible;
      out_ << "separability " << (sep ? "not excluded at this level" : "excluded: the state is not separable") << "\n";
      report_["separable_relaxation_feasible"] = sep;
    }
    return code;
  }

  const RunConfig& cfg_;
  std::ostream& out_;
  std::ostream& err_;
  json report_;
};

}  // namespace

GeneralTensor read_tensor(std::istream& in) {
  const auto v = read_numbers(in);
  if (v.empty()) throw InputError("empty tensor file");
  const std::size_t order = as_count(v[0], "tensor order");
  if (v.size() < 1 + order) throw InputError("tensor file ends inside the dimension header");
  std::vector<std::size_t> dims;
  std::size_t total = 1;
  for (std::size_t k = 0; k < order; ++k) {
    dims.push_back(as_count(v[1 + k], "tensor dimension"));
    total *= dims.back();
  }
  if (v.size() != 1 + order + total)
    throw InputError("tensor file has " + std::to_string(v.size() - 1 - order) + " entries, expected " +
                     std::to_string(total));
  return GeneralTensor(std::move(dims), std::vector<double>(v.begin() + 1 + static_cast<std::ptrdiff_t>(order), v.end()));
}

HermitianState read_state(std::istream& in, bool require_state) {
  const auto v = read_numbers(in);
  if (v.empty()) throw InputError("empty state file");
  const std::size_t n = as_count(v[0], "state dimension");
  if (v.size() != 1 + 2 * n * n)
    throw InputError("state file needs " + std::to_string(2 * n * n) + " numbers after the dimension");
  ComplexMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t k = 1 + 2 * (i * n + j);
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = {v[k], v[k + 1]};
    }
  return HermitianState::checked(std::move(m), require_state);
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    Session s(config, out, err);
    return s.finish(s.dispatch());
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return exit_usage;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return exit_validation;
  } catch (const ValidationError& e) {
    err << "validation failed: " << e.what() << "\n";
    return exit_validation;
  } catch (const DimensionError& e) {
    err << "input error: " << e.what() << "\n";
    return exit_validation;
  } catch (const DegreeError& e) {
    err << "input error: " << e.what() << "\n";
    return exit_validation;
  } catch (const SolverError& e) {
    err << "solver failure: " << e.what() << "\n";
    return exit_solver;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return exit_usage;
  }
}

}  // namespace gmpsos
