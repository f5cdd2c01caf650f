#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "gmpsos/gmp_model.hpp"
#include "gmpsos/relaxation.hpp"

namespace gmpsos {

// Probability measure mu on X that the exponential family is built over.
struct BaseMeasure {
  enum class Kind { lebesgue_box, uniform_spheres, dirac_mixture };
  Kind kind = Kind::lebesgue_box;
  std::size_t nvars = 0;
  Box box;                                  // lebesgue_box
  std::vector<VariableBlock> spheres;       // uniform_spheres, covering every variable
  std::vector<std::vector<double>> atoms;   // dirac_mixture
  std::vector<double> weights;

  static BaseMeasure lebesgue(Box box);
  static BaseMeasure uniform_on_spheres(std::size_t nvars, std::vector<VariableBlock> blocks);
  static BaseMeasure dirac_mixture(std::vector<std::vector<double>> atoms, std::vector<double> weights);
  // Halton points of the box that satisfy every inequality, with weights ratio^k (normalized).
  static BaseMeasure dense_atoms(const GmpInstance& inst, std::size_t count, double ratio = 0.999);
};

// Lebesgue on the box when X is the box, uniform when X is a product of spheres.
BaseMeasure default_base_measure(const GmpInstance& inst);

struct QuadratureScheme {
  std::vector<std::vector<double>> nodes;
  std::vector<double> weights;  // nonnegative, summing to 1
  int exactness_degree = 0;     // polynomials up to this degree integrate exactly against mu
};

// Gauss-Legendre per box axis; trapezoid in the angle on circles; Gauss-Gegenbauer recursion on
// higher spheres; the atoms themselves for Dirac mixtures.
QuadratureScheme quadrature_rule(const BaseMeasure& base, int degree);

// Gauss rule for the weight (1 - t^2)^alpha on [-1, 1], weights summing to 1.
void gauss_jacobi(int points, double alpha, std::vector<double>& nodes, std::vector<double>& weights);

// d nu = c exp(sum_i kappa_i h_i) d mu, c = exp(-log_normalizer).
struct ExponentialDensity {
  std::vector<double> kappa;  // one per constraint; 0 on the mass constraint
  double log_normalizer = 0.0;
  BaseMeasure base;
  int quadrature_degree = 0;

  double log_density(const GmpInstance& inst, std::span<const double> x) const;
};

struct FitOptions {
  double tol = 1e-8;           // moment residual, infinity norm
  int max_iters = 200;
  double rank_tol = 1e-10;     // numerical span of the sampled constraint Gram matrix
  double hessian_reg = 1e-12;
  double kappa_limit = 1e6;
  int plateau = 20;            // iterations without residual decrease before giving up
  int level = 0;               // quadrature sized for this relaxation order (0: t_min)
  int oversample = 24;         // extra exactness degree on top of 2(2t + max deg h)
  double pd_margin = 1e-6;     // witness: smallest admissible block eigenvalue
};

struct FitResult {
  ExponentialDensity density;
  bool converged = false;
  int iterations = 0;
  double residual = 0.0;
  std::vector<double> moments;  // int h_i d nu
  std::string diagnostic;
};

FitResult fit_exponential_density(const GmpInstance& inst, const BaseMeasure& base, const FitOptions& opts = {});

// Moments of nu on N^n_{2t} (full) or on the standard monomials B_{2t} (reduced).
// Compares against a refined rule and throws SolverError when the two differ by more than tol.
Eigen::VectorXd density_moments(const ExponentialDensity& dens, const GmpInstance& inst, int t, RelaxationMode mode,
                                double tol = 1e-9, double* error_estimate = nullptr);

struct BlockEigenvalue {
  std::string label;
  std::size_t size = 0;
  double min_eigenvalue = 0.0;
};

struct WitnessReport {
  FitResult fit;
  RelaxationMode mode = RelaxationMode::full;
  int level = 0;
  Eigen::VectorXd sequence;
  std::vector<BlockEigenvalue> blocks;
  double constraint_residual = 0.0;
  double quadrature_error = 0.0;
  bool success = false;
  std::string message;
};

// Fits nu on the default base measure and evaluates every block of the level-t relaxation at its moments.
WitnessReport strict_feasibility_witness(const GmpInstance& inst, int t, const FitOptions& opts = {});
WitnessReport strict_feasibility_witness(const GmpInstance& inst, int t, const BaseMeasure& base,
                                         const FitOptions& opts = {});

// X = [0,1], h = (1, x, x^2), f = x^3, b the moments of the density proportional to exp(-x).
GmpInstance box_mean_instance();

}  // namespace gmpsos
