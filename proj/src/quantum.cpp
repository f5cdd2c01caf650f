#include <cmath>

#include <Eigen/Eigenvalues>

#include "gmpsos/applications.hpp"
#include "gmpsos/errors.hpp"

namespace gmpsos {

HermitianState HermitianState::checked(ComplexMatrix m, bool require_state) {
  if (m.rows() != m.cols() || m.rows() == 0) throw DimensionError("state must be a nonempty square matrix");
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12) throw InputError("matrix is not Hermitian");
  if (require_state) {
    if (std::abs(m.trace() - std::complex<double>(1.0)) > 1e-10) throw InputError("state must have trace 1");
    const Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10) throw InputError("state must be positive semidefinite");
  }
  return HermitianState{std::move(m)};
}

namespace {

// x_i conj(x_j) in a complex instance with N variables.
GaussianPolynomial outer(std::size_t N, std::size_t i, std::size_t j) {
  std::vector<int> e(2 * N, 0);
  ++e[i];
  ++e[N + j];
  return GaussianPolynomial::term(Monomial(e), GaussianRational(1));
}

}  // namespace

ComplexGmpInstance wasserstein_complex(const HermitianState& tau, const HermitianState& omega) {
  const auto n = static_cast<std::size_t>(tau.rho.rows());
  if (static_cast<std::size_t>(omega.rho.rows()) != n) throw DimensionError("states must have equal dimension");
  const std::size_t N = 2 * n;
  ComplexGmpInstance c;
  c.name = "wasserstein";
  for (std::size_t i = 0; i < n; ++i) c.variables.push_back("x" + std::to_string(i + 1));
  for (std::size_t i = 0; i < n; ++i) c.variables.push_back("y" + std::to_string(i + 1));
  c.blocks = {{"x", 0, n}, {"y", n, n}};
  // |xx* - yy*|_F^2 = sum_ij (x_i x_j* - y_i y_j*) conj(x_i x_j* - y_i y_j*)
  c.objective = GaussianPolynomial(2 * N);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto d = outer(N, i, j) - outer(N, n + i, n + j);
      const auto dc = outer(N, j, i) - outer(N, n + j, n + i);
      c.objective = c.objective + d * dc;
    }
  c.constraints.push_back({GaussianPolynomial::constant(2 * N, GaussianRational(1)), 1.0, "mass"});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const std::string ij = std::to_string(i + 1) + std::to_string(j + 1);
      c.constraints.push_back({outer(N, i, j), tau.rho(i, j), "tau" + ij});
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const std::string ij = std::to_string(i + 1) + std::to_string(j + 1);
      c.constraints.push_back({outer(N, n + i, n + j), omega.rho(i, j), "omega" + ij});
    }
  return c;
}

GmpInstance wasserstein_gmp(const HermitianState& tau, const HermitianState& omega) {
  auto inst = complexify_to_real(wasserstein_complex(tau, omega));
  inst.box = Box{std::vector<double>(inst.nvars(), -1.0), std::vector<double>(inst.nvars(), 1.0)};
  return inst;
}

double wasserstein_plan_cost(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) {
  return (x * x.adjoint() - y * y.adjoint()).squaredNorm();
}

ComplexGmpInstance dps_complex(const HermitianState& rho, std::size_t n) {
  if (n > kDpsMaxDimension) {
    const std::size_t real_vars = 4 * n;
    throw InputError("DPS solving is limited to n = 2: n = " + std::to_string(n) + " gives " +
                     std::to_string(real_vars) + " real variables and " +
                     std::to_string(count_monomials(real_vars, 4)) + " moments at t = 2");
  }
  if (static_cast<std::size_t>(rho.rho.rows()) != n * n) throw DimensionError("rho must be n^2 x n^2");
  const std::size_t N = 2 * n;
  ComplexGmpInstance c;
  c.name = "dps";
  for (std::size_t i = 0; i < n; ++i) c.variables.push_back("x" + std::to_string(i + 1));
  for (std::size_t i = 0; i < n; ++i) c.variables.push_back("y" + std::to_string(i + 1));
  c.blocks = {{"x", 0, n}, {"y", n, n}};
  c.objective = GaussianPolynomial::constant(2 * N, GaussianRational(1));
  c.constraints.push_back({GaussianPolynomial::constant(2 * N, GaussianRational(1)), rho.rho.trace(), "mass"});
  // (xx* (x) yy*)_{(i,k),(j,l)} = x_i conj(x_j) y_k conj(y_l)
  for (std::size_t r = 0; r < n * n; ++r)
    for (std::size_t col = r; col < n * n; ++col) {
      const std::size_t i = r / n, k = r % n, j = col / n, l = col % n;
      c.constraints.push_back({outer(N, i, j) * outer(N, n + k, n + l), rho.rho(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(col)),
                               "rho" + std::to_string(r + 1) + "_" + std::to_string(col + 1)});
    }
  return c;
}

GmpInstance dps_gmp(const HermitianState& rho, std::size_t n) {
  auto inst = complexify_to_real(dps_complex(rho, n));
  inst.box = Box{std::vector<double>(inst.nvars(), -1.0), std::vector<double>(inst.nvars(), 1.0)};
  return inst;
}

}  // namespace gmpsos
