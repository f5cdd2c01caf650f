#include "gmpsos/relaxation.hpp"

#include <algorithm>
#include <unordered_map>

#include "gmpsos/errors.hpp"

namespace gmpsos {

namespace {

Eigen::Index position(const std::unordered_map<Monomial, std::size_t, MonomialHash>& idx, const Monomial& m) {
  const auto it = idx.find(m);
  if (it == idx.end()) throw DegreeError("monomial " + m.to_string() + " outside the moment sequence");
  return static_cast<Eigen::Index>(it->second);
}

std::unordered_map<Monomial, std::size_t, MonomialHash> index_map(const std::vector<Monomial>& ms) {
  std::unordered_map<Monomial, std::size_t, MonomialHash> idx;
  for (std::size_t i = 0; i < ms.size(); ++i) idx.emplace(ms[i], i);
  return idx;
}

}  // namespace

Eigen::MatrixXd moment_matrix(const Eigen::VectorXd& z, std::size_t nvars, int t) {
  return localizing_matrix(Polynomial::constant(nvars, 1), z, t);
}

Eigen::MatrixXd localizing_matrix(const Polynomial& g, const Eigen::VectorXd& z, int t) {
  if (t < 0) throw DegreeError("negative relaxation order");
  const int dg = g.degree_or_minus_one();
  if (dg > 2 * t) throw DegreeError("localizer degree exceeds 2t");
  const auto all = monomials_up_to(g.nvars(), 2 * t);
  if (z.size() < static_cast<Eigen::Index>(all.size()))
    throw DegreeError("moment sequence shorter than |N^n_2t|");
  const auto idx = index_map(all);
  const auto basis = monomials_up_to(g.nvars(), t - half_degree(g));
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) {
      double s = 0.0;
      for (const auto& [gamma, c] : g.terms()) s += c.get_d() * z[position(idx, basis[i] * basis[j] * gamma)];
      M(i, j) = M(j, i) = s;
    }
  return M;
}

std::string to_string(RelaxationMode m) { return m == RelaxationMode::full ? "full" : "reduced"; }

Eigen::VectorXd Relaxation::full_sequence(const Eigen::VectorXd& y) const {
  if (mode == RelaxationMode::full) return y;
  return extend_sequence(y, quotient->U(domain_degree));
}

namespace {

void check_level(const GmpInstance& inst, int t, bool allow_below) {
  const int tmin = compute_tmin(inst);
  if (t < 1) throw DegreeError("relaxation order must be at least 1");
  if (t < tmin && !allow_below)
    throw DegreeError("relaxation order " + std::to_string(t) + " is below t_min = " + std::to_string(tmin));
}

// Shared: objective and moment constraints given a linear map polynomial -> sparse coefficients.
template <class Linear>
void add_objective_and_constraints(Relaxation& rel, Linear&& lin) {
  for (const auto& [k, v] : lin(rel.instance.objective)) rel.sdp.objective()[k] += v;
  for (std::size_t i = 0; i < rel.instance.constraints.size(); ++i) {
    const auto& c = rel.instance.constraints[i];
    rel.sdp.add_equality(lin(c.h), c.b, c.label.empty() ? "h" + std::to_string(i + 1) : c.label);
    rel.rows.push_back({RowInfo::Kind::moment, i, Monomial(rel.nvars())});
  }
}

Relaxation build_full(const GmpInstance& inst, int t, const RelaxationOptions& opts, RelaxationSide side) {
  require_valid(inst);
  check_level(inst, t, opts.allow_below_tmin);
  Relaxation rel;
  rel.mode = RelaxationMode::full;
  rel.side = side;
  rel.level = t;
  rel.tmin = compute_tmin(inst);
  rel.instance = inst;
  const std::size_t n = inst.nvars();
  int D = 2 * t;
  if (opts.allow_below_tmin) {
    D = std::max(D, inst.objective.degree_or_minus_one());
    for (const auto& c : inst.constraints) D = std::max(D, c.h.degree_or_minus_one());
  }
  rel.domain_degree = D;
  rel.index = monomials_up_to(n, D);
  const auto idx = index_map(rel.index);
  for (const auto& m : rel.index) rel.sdp.add_variable(0.0, "z" + m.to_string());

  auto lin = [&](const Polynomial& p) {
    std::vector<std::pair<std::size_t, double>> out;
    for (const auto& [m, c] : p.terms()) out.push_back({static_cast<std::size_t>(position(idx, m)), c.get_d()});
    return out;
  };
  add_objective_and_constraints(rel, lin);

  auto add_localizer = [&](const Polynomial& g, const std::string& label) {
    const int order = t - half_degree(g);
    if (order < 0) return;  // only in the below-t_min variant
    BlockInfo info{label, g, monomials_up_to(n, order)};
    const std::size_t b = rel.sdp.add_block(BlockKind::psd, info.basis.size(), label);
    for (std::size_t i = 0; i < info.basis.size(); ++i)
      for (std::size_t j = i; j < info.basis.size(); ++j) {
        const Monomial vij = info.basis[i] * info.basis[j];
        for (const auto& [gamma, c] : g.terms())
          rel.sdp.add_entry(b, static_cast<int>(position(idx, vij * gamma)), i, j, c.get_d());
      }
    rel.blocks.push_back(std::move(info));
  };
  add_localizer(Polynomial::constant(n, 1), "moment");
  for (std::size_t j = 0; j < inst.support.inequalities.size(); ++j)
    add_localizer(inst.support.inequalities[j], "g" + std::to_string(j + 1));

  // Truncated ideal: L(p x^gamma) = 0 whenever deg(p x^gamma) <= D.
  for (std::size_t l = 0; l < inst.support.equalities.size(); ++l) {
    const Polynomial& p = inst.support.equalities[l];
    if (p.is_zero()) continue;
    for (const auto& gamma : monomials_up_to(n, D - p.degree())) {
      rel.sdp.add_equality(lin(p.times_term(gamma, Rational(1))), 0.0, "p" + std::to_string(l + 1) + "*" + gamma.to_string());
      rel.rows.push_back({RowInfo::Kind::ideal, l, gamma});
    }
  }
  return rel;
}

}  // namespace

Relaxation build_moment_relaxation(const GmpInstance& inst, int t, const RelaxationOptions& opts) {
  return build_full(inst, t, opts, RelaxationSide::moment);
}

Relaxation build_sos_strengthening(const GmpInstance& inst, int t, const RelaxationOptions& opts) {
  return build_full(inst, t, opts, RelaxationSide::sos);
}

Relaxation build_reduced_relaxation(const GmpInstance& inst, int t) {
  require_valid(inst);
  check_level(inst, t, false);
  if (!reduced_mode_eligible(inst))
    throw ValidationError("reduced mode needs a verified Groebner basis with a real radical ideal");
  Relaxation rel;
  rel.mode = RelaxationMode::reduced;
  rel.level = t;
  rel.tmin = compute_tmin(inst);
  rel.domain_degree = 2 * t;
  rel.instance = inst;
  const std::size_t n = inst.nvars();
  auto qb = std::make_shared<QuotientBasis>(inst.support.equalities, n, 2 * t);
  rel.quotient = qb;
  rel.index = qb->basis();
  for (const auto& m : rel.index) rel.sdp.add_variable(0.0, "zhat" + m.to_string());

  auto lin = [&](const Polynomial& p) {
    const auto c = qb->normal_form_coeffs(p);
    std::vector<std::pair<std::size_t, double>> out;
    for (std::size_t k = 0; k < c.size(); ++k)
      if (sgn(c[k]) != 0) out.push_back({k, c[k].get_d()});
    return out;
  };
  add_objective_and_constraints(rel, lin);

  auto add_localizer = [&](const Polynomial& g, const std::string& label) {
    std::size_t size = 0;
    const auto pattern = reduced_localizing_pattern(g, *qb, t, &size);
    const std::size_t b = rel.sdp.add_block(BlockKind::psd, size, label);
    for (const auto& e : pattern) rel.sdp.add_entry(b, static_cast<int>(e.var), e.row, e.col, e.value);
    rel.blocks.push_back({label, g, std::vector<Monomial>(qb->basis().begin(), qb->basis().begin() + static_cast<std::ptrdiff_t>(size))});
  };
  add_localizer(Polynomial::constant(n, 1), "moment");
  for (std::size_t j = 0; j < inst.support.inequalities.size(); ++j)
    add_localizer(inst.support.inequalities[j], "g" + std::to_string(j + 1));
  return rel;
}

Relaxation build_relaxation(const GmpInstance& inst, int t, std::optional<RelaxationMode> mode,
                            const RelaxationOptions& opts) {
  const RelaxationMode m =
      mode.value_or(reduced_mode_eligible(inst) && !opts.allow_below_tmin && !inst.support.equalities.empty()
                        ? RelaxationMode::reduced
                        : RelaxationMode::full);
  return m == RelaxationMode::reduced ? build_reduced_relaxation(inst, t) : build_moment_relaxation(inst, t, opts);
}

}  // namespace gmpsos
