#include "gmpsos/entropy.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "gmpsos/errors.hpp"

namespace gmpsos {

namespace {

constexpr std::size_t kMaxNodes = 2'000'000;

// Gauss-Legendre on [lo, hi], weights summing to 1.
void gauss_legendre(int points, double lo, double hi, std::vector<double>& x, std::vector<double>& w) {
  gauss_jacobi(points, 0.0, x, w);
  for (auto& v : x) v = lo + (hi - lo) * (v + 1.0) / 2.0;
}

struct Rule {
  std::vector<std::vector<double>> nodes;  // points in the block's own coordinates
  std::vector<double> weights;
};

Rule tensor(const Rule& a, const Rule& b) {
  if (a.nodes.size() * b.nodes.size() > kMaxNodes) throw DimensionError("quadrature rule too large");
  Rule r;
  for (std::size_t i = 0; i < a.nodes.size(); ++i)
    for (std::size_t j = 0; j < b.nodes.size(); ++j) {
      auto p = a.nodes[i];
      p.insert(p.end(), b.nodes[j].begin(), b.nodes[j].end());
      r.nodes.push_back(std::move(p));
      r.weights.push_back(a.weights[i] * b.weights[j]);
    }
  return r;
}

// Uniform probability on the unit sphere of R^d, exact up to `degree`.
Rule sphere_rule(std::size_t d, int degree) {
  Rule r;
  if (d == 1) {
    r.nodes = {{-1.0}, {1.0}};
    r.weights = {0.5, 0.5};
    return r;
  }
  if (d == 2) {
    const int N = degree + 1;
    for (int k = 0; k < N; ++k) {
      const double th = 2.0 * std::numbers::pi * (k + 0.5) / N;
      r.nodes.push_back({std::cos(th), std::sin(th)});
      r.weights.push_back(1.0 / N);
    }
    return r;
  }
  // x_1 = s, the rest sqrt(1 - s^2) u with u uniform on the lower sphere; s has weight (1 - s^2)^((d-3)/2).
  std::vector<double> s, w;
  gauss_jacobi(degree / 2 + 1, (static_cast<double>(d) - 3.0) / 2.0, s, w);
  const Rule sub = sphere_rule(d - 1, degree);
  if (s.size() * sub.nodes.size() > kMaxNodes) throw DimensionError("quadrature rule too large");
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double rad = std::sqrt(std::max(0.0, 1.0 - s[i] * s[i]));
    for (std::size_t j = 0; j < sub.nodes.size(); ++j) {
      std::vector<double> p{s[i]};
      for (double u : sub.nodes[j]) p.push_back(rad * u);
      r.nodes.push_back(std::move(p));
      r.weights.push_back(w[i] * sub.weights[j]);
    }
  }
  return r;
}

int max_constraint_degree(const GmpInstance& inst) {
  int d = 0;
  for (const auto& c : inst.constraints) d = std::max(d, c.h.degree_or_minus_one());
  return d;
}

double monomial_value(const Monomial& m, const std::vector<double>& x) {
  double v = 1.0;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i]) v *= std::pow(x[i], m[i]);
  return v;
}

// log of the unnormalized density exp(sum kappa_i h_i) at every node.
std::vector<double> exponents(const std::vector<PolynomialEvaluator>& h, const std::vector<double>& kappa,
                              const QuadratureScheme& q) {
  std::vector<double> s(q.nodes.size(), 0.0);
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (kappa[i] == 0.0) continue;
    for (std::size_t k = 0; k < q.nodes.size(); ++k) s[k] += kappa[i] * h[i](q.nodes[k]);
  }
  return s;
}

// Normalized weights p_k proportional to w_k exp(s_k); returns log sum w_k exp(s_k).
double softmax(const QuadratureScheme& q, const std::vector<double>& s, std::vector<double>& p) {
  double mx = -INFINITY;
  for (std::size_t k = 0; k < s.size(); ++k)
    if (q.weights[k] > 0) mx = std::max(mx, s[k]);
  p.assign(s.size(), 0.0);
  double total = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    p[k] = q.weights[k] * std::exp(s[k] - mx);
    total += p[k];
  }
  for (auto& v : p) v /= total;
  return mx + std::log(total);
}

void check_mass_constraint(const GmpInstance& inst) {
  if (inst.constraints.empty()) throw InputError("instance has no constraints");
  const auto& h1 = inst.constraints.front().h;
  if (h1 != Polynomial::constant(inst.nvars(), 1)) throw InputError("the first constraint must be h_1 = 1");
  if (!(inst.constraints.front().b > 0)) throw InputError("the mass b_1 must be positive");
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double halton(std::size_t index, unsigned base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

}  // namespace

void gauss_jacobi(int points, double alpha, std::vector<double>& nodes, std::vector<double>& weights) {
  if (points < 1) throw std::invalid_argument("a Gauss rule needs at least one point");
  if (!(alpha > -0.5)) throw std::invalid_argument("Gauss-Jacobi rule needs alpha > -1/2");
  const Eigen::Index n = points;
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n), off(std::max<Eigen::Index>(n - 1, 0));
  for (Eigen::Index k = 1; k < n; ++k) {
    const double kk = static_cast<double>(k);
    off[k - 1] = std::sqrt(kk * (kk + 2 * alpha) / ((2 * kk + 2 * alpha + 1) * (2 * kk + 2 * alpha - 1)));
  }
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 1.0);
  if (n == 1) return;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
  double total = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    nodes[static_cast<std::size_t>(k)] = es.eigenvalues()[k];
    weights[static_cast<std::size_t>(k)] = es.eigenvectors()(0, k) * es.eigenvectors()(0, k);
    total += weights[static_cast<std::size_t>(k)];
  }
  for (auto& w : weights) w /= total;
}

BaseMeasure BaseMeasure::lebesgue(Box box) {
  if (box.lower.size() != box.upper.size()) throw DimensionError("box bounds differ in length");
  for (std::size_t i = 0; i < box.lower.size(); ++i)
    if (!(box.lower[i] < box.upper[i])) throw InputError("box must have positive volume");
  BaseMeasure m;
  m.kind = Kind::lebesgue_box;
  m.nvars = box.lower.size();
  m.box = std::move(box);
  return m;
}

BaseMeasure BaseMeasure::uniform_on_spheres(std::size_t nvars, std::vector<VariableBlock> blocks) {
  std::vector<int> seen(nvars, 0);
  for (const auto& b : blocks) {
    if (b.begin + b.size > nvars || b.size == 0) throw DimensionError("sphere block out of range");
    for (std::size_t i = b.begin; i < b.begin + b.size; ++i) ++seen[i];
  }
  if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; }))
    throw InputError("sphere blocks must partition the variables");
  BaseMeasure m;
  m.kind = Kind::uniform_spheres;
  m.nvars = nvars;
  m.spheres = std::move(blocks);
  return m;
}

BaseMeasure BaseMeasure::dirac_mixture(std::vector<std::vector<double>> atoms, std::vector<double> weights) {
  if (atoms.empty() || atoms.size() != weights.size()) throw DimensionError("one weight per atom required");
  double total = 0.0;
  for (double w : weights) {
    if (!(w > 0)) throw InputError("atom weights must be positive");
    total += w;
  }
  for (const auto& a : atoms)
    if (a.size() != atoms.front().size()) throw DimensionError("atoms differ in dimension");
  BaseMeasure m;
  m.kind = Kind::dirac_mixture;
  m.nvars = atoms.front().size();
  m.atoms = std::move(atoms);
  for (auto& w : weights) w /= total;
  m.weights = std::move(weights);
  return m;
}

BaseMeasure BaseMeasure::dense_atoms(const GmpInstance& inst, std::size_t count, double ratio) {
  if (!inst.box) throw InputError("dense atoms need a bounding box");
  if (!inst.support.equalities.empty()) throw InputError("dense atoms cannot sample a variety");
  if (!(ratio > 0 && ratio < 1)) throw std::invalid_argument("geometric ratio must lie in (0, 1)");
  static constexpr unsigned primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  const std::size_t n = inst.nvars();
  if (n > std::size(primes)) throw DimensionError("dense atoms support at most 12 variables");
  std::vector<PolynomialEvaluator> g;
  for (const auto& p : inst.support.inequalities) g.emplace_back(p);
  std::vector<std::vector<double>> atoms;
  std::vector<double> weights;
  double w = 1.0;
  for (std::size_t k = 1; atoms.size() < count && k < 100 * count + 100; ++k) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i)
      x[i] = inst.box->lower[i] + (inst.box->upper[i] - inst.box->lower[i]) * halton(k, primes[i]);
    if (std::all_of(g.begin(), g.end(), [&](const PolynomialEvaluator& e) { return e(x) > 0.0; })) {
      atoms.push_back(std::move(x));
      weights.push_back(w);
      w *= ratio;
    }
  }
  if (atoms.size() < count) throw InputError("could not place enough atoms inside X");
  return dirac_mixture(std::move(atoms), std::move(weights));
}

BaseMeasure default_base_measure(const GmpInstance& inst) {
  if (is_sphere_product(inst)) return BaseMeasure::uniform_on_spheres(inst.nvars(), inst.support.blocks);
  if (!inst.support.equalities.empty())
    throw InputError("no default base measure for a variety that is not a product of spheres");
  if (!inst.box) throw InputError("a bounding box is required for the Lebesgue base measure");
  // Lebesgue on the box is only supported on X when every inequality holds on the whole box.
  const BaseMeasure m = BaseMeasure::lebesgue(*inst.box);
  const auto rule = quadrature_rule(m, 8);
  for (const auto& p : inst.support.inequalities) {
    const PolynomialEvaluator e(p);
    for (const auto& x : rule.nodes)
      if (e(x) < 0.0) throw InputError("X is smaller than its bounding box; pass a base measure explicitly");
  }
  return m;
}

QuadratureScheme quadrature_rule(const BaseMeasure& base, int degree) {
  if (degree < 0) throw std::invalid_argument("negative quadrature degree");
  QuadratureScheme q;
  q.exactness_degree = degree;
  switch (base.kind) {
    case BaseMeasure::Kind::dirac_mixture:
      q.nodes = base.atoms;
      q.weights = base.weights;
      q.exactness_degree = INT_MAX;
      return q;
    case BaseMeasure::Kind::lebesgue_box: {
      Rule r{{{}}, {1.0}};
      for (std::size_t i = 0; i < base.nvars; ++i) {
        std::vector<double> x, w;
        gauss_legendre(degree / 2 + 1, base.box.lower[i], base.box.upper[i], x, w);
        Rule axis;
        for (std::size_t k = 0; k < x.size(); ++k) {
          axis.nodes.push_back({x[k]});
          axis.weights.push_back(w[k]);
        }
        r = tensor(r, axis);
      }
      q.nodes = std::move(r.nodes);
      q.weights = std::move(r.weights);
      return q;
    }
    case BaseMeasure::Kind::uniform_spheres: {
      Rule r{{{}}, {1.0}};
      for (const auto& b : base.spheres) r = tensor(r, sphere_rule(b.size, degree));
      // Blocks are laid out in order; scatter into variable positions.
      std::vector<std::size_t> pos;
      for (const auto& b : base.spheres)
        for (std::size_t i = 0; i < b.size; ++i) pos.push_back(b.begin + i);
      for (auto& node : r.nodes) {
        std::vector<double> x(base.nvars);
        for (std::size_t i = 0; i < pos.size(); ++i) x[pos[i]] = node[i];
        node = std::move(x);
      }
      q.nodes = std::move(r.nodes);
      q.weights = std::move(r.weights);
      return q;
    }
  }
  throw std::logic_error("unknown base measure");
}

double ExponentialDensity::log_density(const GmpInstance& inst, std::span<const double> x) const {
  if (kappa.size() != inst.constraints.size()) throw DimensionError("density fitted for another instance");
  double s = -log_normalizer;
  for (std::size_t i = 0; i < kappa.size(); ++i)
    if (kappa[i] != 0.0) s += kappa[i] * evaluate(inst.constraints[i].h, x);
  return s;
}

FitResult fit_exponential_density(const GmpInstance& inst, const BaseMeasure& base, const FitOptions& opts) {
  check_mass_constraint(inst);
  if (base.nvars != inst.nvars()) throw DimensionError("base measure and instance differ in dimension");
  const int level = opts.level > 0 ? opts.level : compute_tmin(inst);
  const int degree = 2 * (2 * level + max_constraint_degree(inst)) + opts.oversample;
  const QuadratureScheme q = quadrature_rule(base, degree);
  const std::size_t m = inst.constraints.size();
  const std::size_t N = q.nodes.size();
  const double b1 = inst.constraints.front().b;

  std::vector<PolynomialEvaluator> h;
  for (const auto& c : inst.constraints) h.emplace_back(c.h);
  // Non-constant constraints only; the mass is carried by the normalizer.
  const Eigen::Index r = static_cast<Eigen::Index>(m - 1);
  Eigen::MatrixXd H(static_cast<Eigen::Index>(N), r);
  for (std::size_t k = 0; k < N; ++k)
    for (Eigen::Index i = 0; i < r; ++i) H(static_cast<Eigen::Index>(k), i) = h[static_cast<std::size_t>(i) + 1](q.nodes[k]);
  Eigen::VectorXd beta(r);
  for (Eigen::Index i = 0; i < r; ++i) beta[i] = inst.constraints[static_cast<std::size_t>(i) + 1].b / b1;
  const Eigen::Map<const Eigen::VectorXd> w(q.weights.data(), static_cast<Eigen::Index>(N));

  FitResult out;
  out.density.base = base;
  out.density.quadrature_degree = degree;
  out.density.kappa.assign(m, 0.0);

  // lin(K): directions in which the h_i actually vary on X.
  const Eigen::VectorXd mean0 = H.transpose() * w;
  const Eigen::MatrixXd Hc0 = H.rowwise() - mean0.transpose();
  const Eigen::MatrixXd C0 = Hc0.transpose() * w.asDiagonal() * Hc0;
  Eigen::MatrixXd V(r, 0);
  if (r > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(C0);
    const double top = std::max(es.eigenvalues().cwiseAbs().maxCoeff(), 1e-300);
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < r; ++i)
      if (es.eigenvalues()[i] > opts.rank_tol * top) keep.push_back(i);
    V.resize(r, static_cast<Eigen::Index>(keep.size()));
    for (std::size_t j = 0; j < keep.size(); ++j) V.col(static_cast<Eigen::Index>(j)) = es.eigenvectors().col(keep[j]);
  }

  Eigen::VectorXd theta = Eigen::VectorXd::Zero(V.cols());
  std::vector<double> p;
  auto evaluate_at = [&](const Eigen::VectorXd& th, Eigen::VectorXd& mean, double& logZ) {
    const Eigen::VectorXd kappa = V * th;
    const Eigen::VectorXd s = H * kappa;
    std::vector<double> sv(s.data(), s.data() + s.size());
    if (sv.empty()) sv.assign(N, 0.0);
    logZ = softmax(q, sv, p);
    const Eigen::Map<const Eigen::VectorXd> pv(p.data(), static_cast<Eigen::Index>(N));
    mean = H.transpose() * pv;
    return kappa;
  };
  auto dual_value = [&](const Eigen::VectorXd& th, double logZ) { return (V * th).dot(beta) - logZ; };

  Eigen::VectorXd mean;
  double logZ = 0.0;
  Eigen::VectorXd kappa = evaluate_at(theta, mean, logZ);
  double best = INFINITY;
  int since_best = 0;
  // Component of the targets outside the span: no density in the family can match them.
  const Eigen::VectorXd off_span = (beta - mean0) - V * (V.transpose() * (beta - mean0));
  if (off_span.lpNorm<Eigen::Infinity>() * b1 > opts.tol) {
    out.diagnostic = "b likely not in relint(K): targets leave the span of the constraints on X";
  }
  for (int iter = 0; out.diagnostic.empty(); ++iter) {
    out.iterations = iter;
    const Eigen::VectorXd res = beta - mean;
    const double res_inf = (r > 0 ? res.lpNorm<Eigen::Infinity>() : 0.0) * b1;
    out.residual = res_inf;
    if (res_inf <= opts.tol) {
      out.converged = true;
      break;
    }
    if (res_inf < 0.999 * best) {
      best = res_inf;
      since_best = 0;
    } else if (++since_best >= opts.plateau) {
      out.diagnostic = "b likely not in relint(K): moment residual stalled at " + format_number(res_inf);
      break;
    }
    if (kappa.norm() > opts.kappa_limit) {
      out.diagnostic = "b likely not in relint(K): |kappa| exceeded " + format_number(opts.kappa_limit);
      break;
    }
    if (iter >= opts.max_iters) {
      out.diagnostic = "Newton iteration limit reached";
      break;
    }
    const Eigen::Map<const Eigen::VectorXd> pv(p.data(), static_cast<Eigen::Index>(N));
    const Eigen::MatrixXd Hc = H.rowwise() - mean.transpose();
    const Eigen::MatrixXd cov = Hc.transpose() * pv.asDiagonal() * Hc;
    Eigen::MatrixXd hess = V.transpose() * cov * V;
    hess.diagonal().array() += opts.hessian_reg;
    const Eigen::VectorXd grad = V.transpose() * res;
    const Eigen::VectorXd step = hess.ldlt().solve(grad);
    // Armijo backtracking on the concave dual; a rejected search leaves the iterate unchanged.
    const double phi = dual_value(theta, logZ);
    double alpha = 1.0;
    bool moved = false;
    while (alpha > 1e-12) {
      Eigen::VectorXd trial_mean;
      double trial_logZ = 0.0;
      const Eigen::VectorXd trial = theta + alpha * step;
      const Eigen::VectorXd trial_kappa = evaluate_at(trial, trial_mean, trial_logZ);
      const double trial_phi = dual_value(trial, trial_logZ);
      if (std::isfinite(trial_phi) && trial_phi >= phi + 1e-4 * alpha * grad.dot(step)) {
        theta = trial;
        kappa = trial_kappa;
        mean = trial_mean;
        logZ = trial_logZ;
        moved = true;
        break;
      }
      alpha /= 2;
    }
    if (!moved) {
      evaluate_at(theta, mean, logZ);  // restore p
      if (dual_value(theta, logZ) < phi - 1e-12 * (1.0 + std::abs(phi)))
        throw std::logic_error("entropy dual decreased");
      out.diagnostic = "b likely not in relint(K): line search failed";
      break;
    }
  }
  for (Eigen::Index i = 0; i < r; ++i) out.density.kappa[static_cast<std::size_t>(i) + 1] = kappa[i];
  out.density.log_normalizer = logZ - std::log(b1);
  out.moments.assign(m, b1);
  for (Eigen::Index i = 0; i < r; ++i) out.moments[static_cast<std::size_t>(i) + 1] = b1 * mean[i];
  return out;
}

Eigen::VectorXd density_moments(const ExponentialDensity& dens, const GmpInstance& inst, int t, RelaxationMode mode,
                                double tol, double* error_estimate) {
  if (t < 0) throw DegreeError("negative relaxation order");
  if (dens.kappa.size() != inst.constraints.size()) throw DimensionError("density fitted for another instance");
  std::vector<Monomial> index;
  if (mode == RelaxationMode::full) {
    index = monomials_up_to(inst.nvars(), 2 * t);
  } else {
    index = QuotientBasis(inst.support.equalities, inst.nvars(), 2 * t).basis();
  }
  std::vector<PolynomialEvaluator> h;
  for (const auto& c : inst.constraints) h.emplace_back(c.h);
  const int degree = std::max(dens.quadrature_degree, 2 * (2 * t + max_constraint_degree(inst)) + 24);
  auto integrate = [&](int deg) {
    const QuadratureScheme q = quadrature_rule(dens.base, deg);
    const std::vector<double> s = exponents(h, dens.kappa, q);
    Eigen::VectorXd z = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(index.size()));
    for (std::size_t k = 0; k < q.nodes.size(); ++k) {
      const double wk = q.weights[k] * std::exp(s[k] - dens.log_normalizer);
      if (wk == 0.0) continue;
      for (std::size_t a = 0; a < index.size(); ++a) z[static_cast<Eigen::Index>(a)] += wk * monomial_value(index[a], q.nodes[k]);
    }
    return z;
  };
  const Eigen::VectorXd coarse = integrate(degree);
  const bool exact = dens.base.kind == BaseMeasure::Kind::dirac_mixture;
  const Eigen::VectorXd fine = exact ? coarse : integrate(2 * degree);
  const double err = (fine - coarse).lpNorm<Eigen::Infinity>();
  if (error_estimate) *error_estimate = err;
  if (err > tol * std::max(1.0, fine.lpNorm<Eigen::Infinity>()))
    throw SolverError("quadrature error estimate " + format_number(err) + " exceeds tolerance");
  return fine;
}

WitnessReport strict_feasibility_witness(const GmpInstance& inst, int t, const FitOptions& opts) {
  return strict_feasibility_witness(inst, t, default_base_measure(inst), opts);
}

WitnessReport strict_feasibility_witness(const GmpInstance& inst, int t, const BaseMeasure& base,
                                         const FitOptions& opts) {
  WitnessReport rep;
  rep.level = t;
  const Relaxation rel = build_relaxation(inst, t);
  rep.mode = rel.mode;
  FitOptions fo = opts;
  fo.level = t;
  rep.fit = fit_exponential_density(inst, base, fo);
  if (!rep.fit.converged) {
    rep.message = rep.fit.diagnostic;
    return rep;
  }
  try {
    rep.sequence = density_moments(rep.fit.density, inst, t, rel.mode, 1e-9, &rep.quadrature_error);
  } catch (const SolverError& e) {
    rep.message = e.what();
    return rep;
  }
  bool pd = true;
  for (std::size_t k = 0; k < rel.sdp.blocks().size(); ++k) {
    const auto& b = rel.sdp.blocks()[k];
    const auto n = static_cast<Eigen::Index>(b.size);
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : b.entries) {
      const double v = e.value * (e.var == BlockEntry::kConstant ? 1.0 : rep.sequence[e.var]);
      S(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col)) += v;
      if (e.row != e.col) S(static_cast<Eigen::Index>(e.col), static_cast<Eigen::Index>(e.row)) += v;
    }
    const double ev = b.kind == BlockKind::diagonal ? S.diagonal().minCoeff()
                                                    : Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(S).eigenvalues()[0];
    rep.blocks.push_back({b.label, b.size, ev});
    pd = pd && ev > opts.pd_margin;
  }
  for (const auto& row : rel.sdp.equalities()) {
    double v = -row.rhs;
    for (const auto& [k, c] : row.terms) v += c * rep.sequence[static_cast<Eigen::Index>(k)];
    rep.constraint_residual = std::max(rep.constraint_residual, std::abs(v));
  }
  const bool feasible = rep.constraint_residual <= opts.tol;
  rep.success = pd && feasible;
  if (!pd) rep.message = "a moment or localizing block is not positive definite";
  else if (!feasible) rep.message = "moment constraints violated by " + format_number(rep.constraint_residual);
  else rep.message = "strictly feasible";
  return rep;
}

GmpInstance box_mean_instance() {
  const double e = std::numbers::e;
  GmpInstance inst;
  inst.name = "box_mean";
  inst.variables = {"x"};
  inst.box = Box{{0.0}, {1.0}};
  auto xk = [](int k) { return Polynomial::term(Monomial(std::vector<int>{k}), Rational(1)); };
  inst.objective = xk(3);
  inst.constraints.push_back({Polynomial::constant(1, 1), 1.0, "mass"});
  inst.constraints.push_back({xk(1), (1.0 - 2.0 / e) / (1.0 - 1.0 / e), "mean"});
  inst.constraints.push_back({xk(2), (2.0 - 5.0 / e) / (1.0 - 1.0 / e), "second"});
  inst.support.inequalities.push_back(xk(1) - xk(2));
  return add_ball_constraint(inst, Rational(2));
}

}  // namespace gmpsos
