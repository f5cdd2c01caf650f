#include "gmpsos/certificate.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "gmpsos/errors.hpp"

namespace gmpsos {

double Certificate::value(const GmpInstance& inst) const {
  double s = 0.0;
  for (std::size_t i = 0; i < lambda.size(); ++i) s += inst.constraints[i].b * lambda[i];
  return s;
}

namespace {

// Nearest PSD matrix in Frobenius norm; returns the clipped negative mass.
double clip_psd(Eigen::MatrixXd& G) {
  if (G.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (G + G.transpose()));
  Eigen::VectorXd ev = es.eigenvalues();
  double mass = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev[i] < 0) {
      mass -= ev[i];
      ev[i] = 0.0;
    }
  G = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
  return mass;
}

// Unknowns: upper triangles of every Gram block, then every multiplier.
struct Layout {
  std::vector<std::size_t> offset;
  std::size_t total = 0;
};

Layout layout(const SdpProblem& sdp) {
  Layout L;
  for (const auto& b : sdp.blocks()) {
    L.offset.push_back(L.total);
    L.total += b.size * (b.size + 1) / 2;
  }
  L.offset.push_back(L.total);
  L.total += sdp.equalities().size();
  return L;
}

std::size_t tri(std::size_t i, std::size_t j, std::size_t n) {  // i <= j
  return i * n - i * (i - 1) / 2 + (j - i);
}

// One least-norm correction of (X, mu) towards F*(X) + E'mu = c.
void polish(const SdpProblem& sdp, std::vector<Eigen::MatrixXd>& X, Eigen::VectorXd& mu) {
  const Layout L = layout(sdp);
  const auto m = static_cast<Eigen::Index>(sdp.num_variables());
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, static_cast<Eigen::Index>(L.total));
  Eigen::VectorXd r = Eigen::Map<const Eigen::VectorXd>(sdp.objective().data(), m);
  for (std::size_t b = 0; b < sdp.blocks().size(); ++b) {
    const auto& blk = sdp.blocks()[b];
    for (const auto& e : blk.entries) {
      if (e.var == BlockEntry::kConstant) continue;
      const double w = e.row == e.col ? 1.0 : 2.0;
      A(e.var, static_cast<Eigen::Index>(L.offset[b] + tri(e.row, e.col, blk.size))) += w * e.value;
      r[e.var] -= w * e.value * X[b](e.row, e.col);
    }
  }
  const std::size_t eq0 = L.offset.back();
  for (std::size_t k = 0; k < sdp.equalities().size(); ++k)
    for (const auto& [v, c] : sdp.equalities()[k].terms) {
      A(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(eq0 + k)) += c;
      r[static_cast<Eigen::Index>(v)] -= c * mu[static_cast<Eigen::Index>(k)];
    }
  const Eigen::VectorXd d = A.completeOrthogonalDecomposition().solve(r);
  for (std::size_t b = 0; b < sdp.blocks().size(); ++b) {
    const std::size_t n = sdp.blocks()[b].size;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        const double delta = d[static_cast<Eigen::Index>(L.offset[b] + tri(i, j, n))];
        X[b](i, j) += delta;
        if (i != j) X[b](j, i) += delta;
      }
  }
  mu += d.tail(static_cast<Eigen::Index>(sdp.equalities().size()));
}

}  // namespace

Certificate extract_certificate(const SdpSolution& sol, const Relaxation& rel, const CertificateOptions& opts) {
  if (sol.status != SolveStatus::optimal)
    throw SolverError("certificate extraction needs an optimal solve, got " + to_string(sol.status));
  if (sol.dual_blocks.size() != rel.blocks.size() ||
      static_cast<std::size_t>(sol.multipliers.size()) != rel.rows.size())
    throw SolverError("solution does not belong to this relaxation");
  std::vector<Eigen::MatrixXd> X;
  for (const auto& b : sol.dual_blocks) X.push_back(b.dense);
  Eigen::VectorXd mu = sol.multipliers;

  Certificate cert;
  cert.mode = rel.mode;
  cert.level = rel.level;
  cert.blocks = rel.blocks;
  cert.quotient = rel.quotient;
  const std::size_t n = rel.nvars();
  auto fill = [&] {
    cert.lambda.assign(rel.instance.constraints.size(), 0.0);
    cert.ideal_multipliers.assign(rel.instance.support.equalities.size(), RealPolynomial(n));
    for (std::size_t r = 0; r < rel.rows.size(); ++r) {
      const auto& row = rel.rows[r];
      if (row.kind == RowInfo::Kind::moment)
        cert.lambda[row.index] = mu[static_cast<Eigen::Index>(r)];
      else
        cert.ideal_multipliers[row.index].add_term(row.shift, mu[static_cast<Eigen::Index>(r)]);
    }
    cert.gram = X;
  };

  cert.clipped_mass = 0.0;
  for (auto& G : X) cert.clipped_mass += clip_psd(G);
  fill();
  cert.residual = certificate_residual(cert, rel.instance);
  for (int round = 0; round < opts.polish_rounds && cert.residual > 0.0; ++round) {
    auto X2 = X;
    Eigen::VectorXd mu2 = mu;
    polish(rel.sdp, X2, mu2);
    double mass = 0.0;
    for (auto& G : X2) mass += clip_psd(G);
    std::swap(X, X2);
    std::swap(mu, mu2);
    const double before = cert.residual;
    const auto saved = cert;
    fill();
    cert.clipped_mass = saved.clipped_mass + mass;
    cert.residual = certificate_residual(cert, rel.instance);
    if (cert.residual >= before) {  // no gain: keep the previous point
      cert = saved;
      break;
    }
  }
  return cert;
}

namespace {

template <class Coeff, class Conv>
BasicPolynomial<Coeff> assemble_residual(const Certificate& cert, const GmpInstance& inst, Conv conv) {
  const std::size_t n = inst.nvars();
  using P = BasicPolynomial<Coeff>;
  P r = inst.objective.map_coefficients([&](const Rational& q) { return conv(q); });
  for (std::size_t i = 0; i < cert.lambda.size(); ++i) {
    if (cert.lambda[i] == 0.0) continue;
    r = r - inst.constraints[i].h.map_coefficients([&](const Rational& q) { return conv(q); }) * conv(cert.lambda[i]);
  }
  for (std::size_t b = 0; b < cert.blocks.size(); ++b) {
    const auto& basis = cert.blocks[b].basis;
    const auto& G = cert.gram[b];
    P sigma(n);
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = i; j < basis.size(); ++j) {
        const Coeff c = i == j ? conv(G(i, j)) : Coeff(conv(G(i, j)) + conv(G(j, i)));
        if (!coefficient_is_zero(c)) sigma.add_term(basis[i] * basis[j], c);
      }
    r = r - sigma * cert.blocks[b].multiplier.map_coefficients([&](const Rational& q) { return conv(q); });
  }
  for (std::size_t l = 0; l < cert.ideal_multipliers.size(); ++l) {
    if (cert.ideal_multipliers[l].is_zero()) continue;
    r = r - cert.ideal_multipliers[l].map_coefficients([&](double v) { return conv(v); }) *
                inst.support.equalities[l].map_coefficients([&](const Rational& q) { return conv(q); });
  }
  return r;
}

}  // namespace

double certificate_residual(const Certificate& cert, const GmpInstance& inst) {
  const RealPolynomial r =
      assemble_residual<double>(cert, inst, [](const auto& v) { return to_double(v); });
  if (cert.mode == RelaxationMode::full || !cert.quotient) return max_abs_coefficient(r);
  std::vector<double> acc(cert.quotient->basis().size(), 0.0);
  for (const auto& [m, c] : r.terms())
    for (const auto& [e, v] : cert.quotient->monomial_coeffs(m)) acc[e] += c * v.get_d();
  double worst = 0.0;
  for (double v : acc) worst = std::max(worst, std::abs(v));
  return worst;
}

CertificateReport verify_certificate(const Certificate& cert, const GmpInstance& inst, double tol) {
  CertificateReport rep;
  Polynomial r = assemble_residual<Rational>(cert, inst, [](const auto& v) { return to_rational(v); });
  if (cert.mode == RelaxationMode::reduced && cert.quotient) r = cert.quotient->normal_form(r);
  rep.residual = max_abs_coefficient(r);
  rep.residual_polynomial = std::move(r);
  rep.min_gram_eigenvalue = 0.0;
  bool first = true;
  for (const auto& G : cert.gram) {
    if (G.size() == 0) continue;
    const double e = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(0.5 * (G + G.transpose()), Eigen::EigenvaluesOnly)
                         .eigenvalues()
                         .minCoeff();
    rep.min_gram_eigenvalue = first ? e : std::min(rep.min_gram_eigenvalue, e);
    first = false;
  }
  rep.passed = rep.residual <= tol && rep.min_gram_eigenvalue >= -tol;
  return rep;
}

}  // namespace gmpsos
