#include "gmpsos/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gmpsos/errors.hpp"

namespace gmpsos {

SdpProblem min_norm_dual_problem(const SdpProblem& base, const std::vector<std::size_t>& bounded_rows,
                                 double reference_value, double eps) {
  base.check();
  const std::size_t m = base.num_variables();
  const std::size_t K = base.equalities().size();
  const std::size_t q = bounded_rows.size();
  SdpProblem aux;
  for (std::size_t i = 0; i < m; ++i) aux.add_variable(base.objective()[i], base.variable_labels()[i]);
  // u_j, v_j dualize s - lambda_j >= 0 and s + lambda_j >= 0; w the eps-optimality row.
  std::vector<std::size_t> u(q), v(q);
  for (std::size_t j = 0; j < q; ++j) u[j] = aux.add_variable(0.0, "u" + std::to_string(j));
  for (std::size_t j = 0; j < q; ++j) v[j] = aux.add_variable(0.0, "v" + std::to_string(j));
  const std::size_t w = aux.add_variable(-(reference_value - base.objective_offset - eps), "w");

  for (const auto& b : base.blocks()) {
    const auto k = aux.add_block(b.kind, b.size, b.label);
    for (const auto& e : b.entries)
      aux.add_entry(k, e.var == BlockEntry::kConstant ? static_cast<int>(w) : e.var, e.row, e.col, e.value);
  }
  const auto slack = aux.add_block(BlockKind::diagonal, 2 * q + 1, "norm");
  for (std::size_t j = 0; j < q; ++j) {
    aux.add_entry(slack, static_cast<int>(u[j]), j, j, 1.0);
    aux.add_entry(slack, static_cast<int>(v[j]), q + j, q + j, 1.0);
  }
  aux.add_entry(slack, static_cast<int>(w), 2 * q, 2 * q, 1.0);

  std::vector<int> bounded_pos(K, -1);
  for (std::size_t j = 0; j < q; ++j) {
    if (bounded_rows[j] >= K) throw std::out_of_range("bounded row out of range");
    bounded_pos[bounded_rows[j]] = static_cast<int>(j);
  }
  for (std::size_t k = 0; k < K; ++k) {
    const auto& row = base.equalities()[k];
    auto terms = row.terms;
    if (bounded_pos[k] >= 0) {
      terms.push_back({u[static_cast<std::size_t>(bounded_pos[k])], 1.0});
      terms.push_back({v[static_cast<std::size_t>(bounded_pos[k])], -1.0});
    }
    if (row.rhs != 0.0) terms.push_back({w, -row.rhs});
    aux.add_equality(std::move(terms), 0.0, row.label);
  }
  std::vector<std::pair<std::size_t, double>> srow;
  for (std::size_t j = 0; j < q; ++j) {
    srow.push_back({u[j], -1.0});
    srow.push_back({v[j], -1.0});
  }
  aux.add_equality(std::move(srow), -1.0, "s");
  return aux;
}

void classify(AttainmentDiagnosis& d) {
  std::vector<double> xs, ys;
  for (const auto& p : d.points)
    if (p.usable && p.gap > 0) {
      xs.push_back(-std::log(p.gap));
      ys.push_back(std::log(std::max(p.lambda_norm, kNormFloor)));
    }
  d.slope = 0.0;
  if (xs.size() < 2) {
    d.verdict = "inconclusive";
    d.note = "fewer than two solved points";
    return;
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i] / n;
    my += ys[i] / n;
  }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  d.slope = sxx > 0 ? sxy / sxx : 0.0;
  const double last = std::exp(ys.back()), prev = std::exp(ys[ys.size() - 2]);
  std::ostringstream note;
  if (d.slope >= kDivergingSlope) {
    d.verdict = "diverging";
    note << "log-log slope " << d.slope << " >= " << kDivergingSlope;
  } else if (last <= kBoundedRatio * prev + kNormFloor) {
    d.verdict = "bounded";
    note << "last two norms within " << (kBoundedRatio - 1) * 100 << "%";
  } else {
    d.verdict = "inconclusive";
    note << "slope " << d.slope << " below threshold but norms still growing";
  }
  if (d.partial) note << "; partial: some solves failed";
  d.note = note.str();
}

namespace {

bool usable(const SdpSolution& sol) {
  return sol.status == SolveStatus::optimal ||
         (sol.errors.primal_residual <= kUsableResidual && sol.errors.relative_gap <= kUsableResidual &&
          sol.errors.dual_residual_scaled <= kUsableResidual);
}

void check_schedule(const std::vector<double>& schedule) {
  if (schedule.size() < 3) throw std::invalid_argument("schedule needs at least three tolerances");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (!(schedule[i] > 0)) throw std::invalid_argument("schedule entries must be positive");
    if (i && !(schedule[i] < schedule[i - 1])) throw std::invalid_argument("schedule must be strictly decreasing");
  }
}

AttainmentDiagnosis run_schedule(const SdpProblem& base, const std::vector<std::size_t>& bounded,
                                 const std::vector<double>& schedule, const SolverOptions& opts) {
  check_schedule(schedule);
  AttainmentDiagnosis d;
  d.schedule = schedule;
  const auto ref = solve_sdp(base, opts);
  if (!usable(ref)) {
    d.partial = true;
    d.verdict = "inconclusive";
    d.note = "reference solve ended with " + to_string(ref.status);
    return d;
  }
  d.reference_value = ref.primal_objective;
  for (double gap : schedule) {
    const double eps = gap * (1.0 + std::abs(d.reference_value));
    const auto sol = solve_sdp(min_norm_dual_problem(base, bounded, d.reference_value, eps), opts);
    AttainmentPoint p;
    p.gap = gap;
    p.status = sol.status;
    for (std::size_t r : bounded)
      p.lambda_norm = std::max(p.lambda_norm, std::abs(sol.multipliers[static_cast<Eigen::Index>(r)]));
    p.usable = usable(sol);
    if (!p.usable) d.partial = true;
    d.points.push_back(p);
  }
  classify(d);
  return d;
}

}  // namespace

AttainmentDiagnosis attainment_diagnostic(const Relaxation& rel, const std::vector<double>& schedule,
                                          const SolverOptions& opts) {
  std::vector<std::size_t> bounded;
  for (std::size_t r = 0; r < rel.rows.size(); ++r)
    if (rel.rows[r].kind == RowInfo::Kind::moment) bounded.push_back(r);
  return run_schedule(rel.sdp, bounded, schedule, opts);
}

AttainmentDiagnosis attainment_diagnostic(const GmpInstance& inst, int t, const std::vector<double>& schedule,
                                          const SolverOptions& opts) {
  return attainment_diagnostic(build_relaxation(inst, t), schedule, opts);
}

std::vector<std::vector<double>> support_grid(const GmpInstance& inst, const GridOptions& opts) {
  if (!inst.box) throw InputError("the grid proxy needs a bounding box");
  const auto& box = *inst.box;
  const std::size_t n = inst.nvars();
  if (box.lower.size() != n || box.upper.size() != n) throw DimensionError("box dimension mismatch");
  std::vector<std::vector<double>> axes(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = box.lower[i], hi = box.upper[i];
    const int N = n == 1 ? opts.uniform_points : opts.points_per_axis;
    for (int k = 0; k < N; ++k) axes[i].push_back(lo + (hi - lo) * k / (N - 1));
    for (int k = 1; k <= opts.geometric_levels; ++k) {
      const double h = (hi - lo) * std::pow(10.0, -k / 4.0);
      axes[i].push_back(lo + h);
      axes[i].push_back(hi - h);
    }
    std::sort(axes[i].begin(), axes[i].end());
    axes[i].erase(std::unique(axes[i].begin(), axes[i].end()), axes[i].end());
  }
  std::vector<PolynomialEvaluator> ineq, eq;
  for (const auto& g : inst.support.inequalities) ineq.emplace_back(g);
  for (const auto& p : inst.support.equalities) eq.emplace_back(p);
  std::vector<std::vector<double>> out;
  std::vector<std::size_t> pos(n, 0);
  std::vector<double> x(n);
  while (true) {
    for (std::size_t i = 0; i < n; ++i) x[i] = axes[i][pos[i]];
    bool inside = true;
    for (const auto& g : ineq) inside = inside && g(x) >= -1e-14;
    for (const auto& p : eq) inside = inside && std::abs(p(x)) <= 1e-12;
    if (inside) out.push_back(x);
    std::size_t i = 0;
    while (i < n && ++pos[i] == axes[i].size()) pos[i++] = 0;
    if (i == n) break;
  }
  return out;
}

AttainmentDiagnosis infinite_dual_proxy(const GmpInstance& inst, const std::vector<double>& schedule,
                                        const SolverOptions& opts, const GridOptions& grid) {
  check_schedule(schedule);
  const auto pts = support_grid(inst, grid);
  if (pts.empty()) throw InputError("no grid point satisfies the support constraints");
  const std::size_t m = inst.constraints.size();
  const PolynomialEvaluator f(inst.objective);
  std::vector<PolynomialEvaluator> h;
  for (const auto& c : inst.constraints) h.emplace_back(c.h);

  // f(x_k) - sum_i lambda_i h_i(x_k) >= 0 on every grid point, as one diagonal block.
  auto base = [&](SdpProblem& lp, std::size_t extra) {
    for (std::size_t i = 0; i < m; ++i) lp.add_variable(0.0, "lambda" + std::to_string(i + 1));
    const auto blk = lp.add_block(BlockKind::diagonal, pts.size() + extra, "grid");
    for (std::size_t k = 0; k < pts.size(); ++k) {
      lp.add_entry(blk, BlockEntry::kConstant, k, k, f(pts[k]));
      for (std::size_t i = 0; i < m; ++i) lp.add_entry(blk, static_cast<int>(i), k, k, -h[i](pts[k]));
    }
    return blk;
  };

  AttainmentDiagnosis d;
  d.schedule = schedule;
  {
    // Reference value with a generous box, since optimal multipliers may form an unbounded face.
    SdpProblem lp;
    const auto blk = base(lp, 2 * m);
    for (std::size_t i = 0; i < m; ++i) {
      lp.objective()[i] = -inst.constraints[i].b;
      lp.add_entry(blk, BlockEntry::kConstant, pts.size() + 2 * i, pts.size() + 2 * i, kProxyBox);
      lp.add_entry(blk, static_cast<int>(i), pts.size() + 2 * i, pts.size() + 2 * i, -1.0);
      lp.add_entry(blk, BlockEntry::kConstant, pts.size() + 2 * i + 1, pts.size() + 2 * i + 1, kProxyBox);
      lp.add_entry(blk, static_cast<int>(i), pts.size() + 2 * i + 1, pts.size() + 2 * i + 1, 1.0);
    }
    const auto ref = solve_sdp(lp, opts);
    if (!usable(ref)) {
      d.partial = true;
      d.verdict = "inconclusive";
      d.note = "grid reference solve ended with " + to_string(ref.status);
      return d;
    }
    d.reference_value = -ref.primal_objective;
  }
  for (double gap : schedule) {
    const double eps = gap * (1.0 + std::abs(d.reference_value));
    SdpProblem lp;
    const auto blk = base(lp, 1 + 2 * m);
    const std::size_t s = lp.add_variable(1.0, "s");
    const std::size_t row = pts.size();
    lp.add_entry(blk, BlockEntry::kConstant, row, row, eps - d.reference_value);
    for (std::size_t i = 0; i < m; ++i) {
      lp.add_entry(blk, static_cast<int>(i), row, row, inst.constraints[i].b);
      lp.add_entry(blk, static_cast<int>(s), row + 1 + 2 * i, row + 1 + 2 * i, 1.0);
      lp.add_entry(blk, static_cast<int>(i), row + 1 + 2 * i, row + 1 + 2 * i, -1.0);
      lp.add_entry(blk, static_cast<int>(s), row + 2 + 2 * i, row + 2 + 2 * i, 1.0);
      lp.add_entry(blk, static_cast<int>(i), row + 2 + 2 * i, row + 2 + 2 * i, 1.0);
    }
    const auto sol = solve_sdp(lp, opts);
    AttainmentPoint p;
    p.gap = gap;
    p.status = sol.status;
    p.usable = usable(sol);
    for (std::size_t i = 0; i < m; ++i)
      p.lambda_norm = std::max(p.lambda_norm, std::abs(sol.y[static_cast<Eigen::Index>(i)]));
    if (!p.usable) d.partial = true;
    d.points.push_back(p);
  }
  classify(d);
  d.note += "; grid of " + std::to_string(pts.size()) + " points";
  return d;
}

}  // namespace gmpsos
