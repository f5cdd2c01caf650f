#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gmpsos/diagnostics.hpp"
#include "gmpsos/gmp_model.hpp"
#include "gmpsos/relaxation.hpp"
#include "gmpsos/sdp.hpp"

namespace gmpsos {

// ---- counterexamples on X = [0,1] (described by one localizer and the ball |x|^2 <= 2) ----

// k = 1: f = x^2 - x, h = (1, x^2 - x^3), g = x(1-x).  Infinite dual not attained; the degree-2
//        SOS variant attains -1/4.
// k = 2: f = x,  h = (1, x^2), g = x^3(1-x).  Only the Dirac at 0 is feasible; SOS dual not attained.
// k = 3: f = -x, same constraints.  Neither dual is attained.
GmpInstance counterexample_instance(int k);

struct SuiteRow {
  std::string name;
  int level = 0;
  double primal_value = 0.0;   // P_t
  double dual_value = 0.0;     // D_t
  bool expect_infinite_attained = false;
  bool expect_finite_attained = false;
  AttainmentDiagnosis infinite;
  AttainmentDiagnosis finite;
  // Degree-2 SOS variant (first instance only).
  bool has_variant = false;
  double variant_value = 0.0;
  double variant_residual = 0.0;
};

struct SuiteReport {
  std::vector<SuiteRow> rows;
  std::vector<double> schedule;
  // Diagnoses agree with the expected attainment pattern.
  bool matches_expected() const;
  std::string table() const;
};

SuiteReport counterexample_suite(const SolverOptions& opts = {},
                                 const std::vector<double>& schedule = {1e-2, 1e-4, 1e-6});

// ---- tensors ----

class GeneralTensor {
 public:
  GeneralTensor(std::vector<std::size_t> dims, std::vector<double> data);  // row-major
  static GeneralTensor zeros(std::vector<std::size_t> dims);

  std::size_t order() const { return dims_.size(); }
  const std::vector<std::size_t>& dims() const { return dims_; }
  const std::vector<double>& data() const { return data_; }
  double& at(const std::vector<std::size_t>& idx);
  double at(const std::vector<std::size_t>& idx) const;
  double norm_squared() const;
  // A(u_1, ..., u_a).
  double evaluate(const std::vector<Eigen::VectorXd>& u) const;
  // Contract every mode except `mode`.
  Eigen::VectorXd contract_except(const std::vector<Eigen::VectorXd>& u, std::size_t mode) const;

 private:
  std::size_t flat(const std::vector<std::size_t>& idx) const;
  std::vector<std::size_t> dims_;
  std::vector<double> data_;
};

class SymmetricTensor {
 public:
  // Full n^a table, validated for permutation symmetry.
  SymmetricTensor(std::size_t order, std::size_t dim, std::vector<double> data);
  static SymmetricTensor from_vector_power(const Eigen::VectorXd& v, std::size_t order);

  std::size_t order() const { return order_; }
  std::size_t dim() const { return dim_; }
  const GeneralTensor& table() const { return table_; }
  double at(const std::vector<std::size_t>& idx) const { return table_.at(idx); }
  // Entry with index multiset given by multiplicities (count of each index).
  double at_multiplicities(const std::vector<int>& counts) const;

 private:
  std::size_t order_, dim_;
  GeneralTensor table_;
};

// Multilinear form in blocks x^(1), ..., x^(a).
Polynomial tensor_polynomial(const GeneralTensor& A);
// A(x, ..., x) in dim variables.
Polynomial tensor_polynomial(const SymmetricTensor& A);

// min A(x) over the product of unit spheres, mass 1.
GmpInstance rank_one_gmp(const GeneralTensor& A);
GmpInstance rank_one_gmp(const SymmetricTensor& A);

struct RankOneApproximation {
  double q = 0.0;
  std::vector<Eigen::VectorXd> factors;
  double error_squared = 0.0;   // |A - q u_1 x ... x u_a|^2 computed entrywise
  double identity_error = 0.0;  // |(|A|^2 - q^2) - error_squared|
};

RankOneApproximation recover_rank_one(const GeneralTensor& A, const std::vector<Eigen::VectorXd>& minimizer);

struct GridSearchResult {
  double value = 0.0;
  std::vector<Eigen::VectorXd> point;
};

// Brute-force min of A over (S^1)^a on an angular grid (2 x 2 x ... tensors only).
GridSearchResult grid_minimum(const GeneralTensor& A, double step_degrees = 1.0);
// Alternating refinement of a grid point: u_l <- -A(.., ., ..)/| . |.
GridSearchResult refine_minimum(const GeneralTensor& A, std::vector<Eigen::VectorXd> start, int iterations = 200);

// sum_alpha f_alpha g_alpha / multinomial(a; alpha, a - |alpha|).
double apolar_product(const Polynomial& f, const Polynomial& g, int a);

// Psi = (1 + |x|^2)^(floor(a/2) + 1); a nonzero seed adds a random SOS term.
Polynomial default_psi(std::size_t nvars, int a, unsigned seed = 0);

// Moments of a symmetric tensor of dimension n+1 read through the dehomogenized form, on the unit ball.
GmpInstance tensor_decomposition_gmp(const SymmetricTensor& A, const Polynomial& psi);
Polynomial dehomogenize(const SymmetricTensor& A);

// ---- quantum ----

using ComplexMatrix = Eigen::MatrixXcd;

struct HermitianState {
  ComplexMatrix rho;
  // Hermitian within 1e-12; for states also trace 1 and eigenvalues >= -1e-10.
  static HermitianState checked(ComplexMatrix m, bool require_state);
};

ComplexGmpInstance wasserstein_complex(const HermitianState& tau, const HermitianState& omega);
GmpInstance wasserstein_gmp(const HermitianState& tau, const HermitianState& omega);
// Cost |xx* - yy*|_F^2 of a single-atom plan.
double wasserstein_plan_cost(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y);

ComplexGmpInstance dps_complex(const HermitianState& rho, std::size_t n);
GmpInstance dps_gmp(const HermitianState& rho, std::size_t n);
inline constexpr std::size_t kDpsMaxDimension = 2;

}  // namespace gmpsos
