#pragma once

#include <Eigen/Dense>

#include <memory>
#include <string>
#include <vector>

#include "gmpsos/relaxation.hpp"
#include "gmpsos/sdp.hpp"

namespace gmpsos {

// f - sum lambda_i h_i = sum_j g_j v_j' G_j v_j + sum_l k_l p_l  (modulo the ideal in reduced mode).
struct Certificate {
  RelaxationMode mode = RelaxationMode::full;
  int level = 0;
  std::vector<double> lambda;
  std::vector<BlockInfo> blocks;
  std::vector<Eigen::MatrixXd> gram;
  std::vector<RealPolynomial> ideal_multipliers;  // full mode only
  std::shared_ptr<const QuotientBasis> quotient;  // reduced mode only
  double clipped_mass = 0.0;                      // sum of |negative eigenvalues| removed
  double residual = 0.0;                          // max residual coefficient after projection

  double value(const GmpInstance& inst) const;    // sum b_i lambda_i
};

struct CertificateOptions {
  // Least-norm correction of (G, lambda) onto the coefficient-matching equations before clipping.
  int polish_rounds = 3;
};

// Throws SolverError unless sol.status is optimal.
Certificate extract_certificate(const SdpSolution& sol, const Relaxation& rel, const CertificateOptions& opts = {});

struct CertificateReport {
  double residual = 0.0;           // max |coefficient| of the exact residual polynomial
  double min_gram_eigenvalue = 0.0;
  bool passed = false;
  Polynomial residual_polynomial;
};

// Exact rational reconstruction from the stored doubles; report-only.
CertificateReport verify_certificate(const Certificate& cert, const GmpInstance& inst, double tol);

// Same residual computed in floating point, used while polishing.
double certificate_residual(const Certificate& cert, const GmpInstance& inst);

}  // namespace gmpsos
