#pragma once

#include <Eigen/Dense>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gmpsos/gmp_model.hpp"
#include "gmpsos/quotient.hpp"
#include "gmpsos/sdp.hpp"

namespace gmpsos {

// z indexed by monomials_up_to(n, 2t).
Eigen::MatrixXd moment_matrix(const Eigen::VectorXd& z, std::size_t nvars, int t);
Eigen::MatrixXd localizing_matrix(const Polynomial& g, const Eigen::VectorXd& z, int t);

enum class RelaxationMode { full, reduced };
enum class RelaxationSide { moment, sos };
std::string to_string(RelaxationMode m);

// One PSD block: sigma = v' G v with v = basis, multiplied by `multiplier` in the certificate.
struct BlockInfo {
  std::string label;
  Polynomial multiplier;
  std::vector<Monomial> basis;
};

// Equality rows of the SDP: either L(h_i) = b_i or L(p_l x^gamma) = 0.
struct RowInfo {
  enum class Kind { moment, ideal } kind = Kind::moment;
  std::size_t index = 0;  // constraint i or generator l
  Monomial shift;         // gamma for ideal rows
};

struct RelaxationOptions {
  // Assemble at a level below t_min; the coefficient domain then grows to cover deg f and deg h_i,
  // and localizers of too high degree drop out.
  bool allow_below_tmin = false;
};

// The SDP is stored in moment form; its conic dual is the SOS strengthening, so the same object
// serves both sides and `side` only says which objective the caller asked for.
struct Relaxation {
  RelaxationMode mode = RelaxationMode::full;
  RelaxationSide side = RelaxationSide::moment;
  int level = 0;
  int tmin = 0;
  int domain_degree = 0;           // D: the moment sequence lives on degrees <= D
  std::vector<Monomial> index;     // variable k <-> index[k] (N^n_D, or B_2t in reduced mode)
  std::shared_ptr<const QuotientBasis> quotient;
  std::vector<BlockInfo> blocks;   // parallel to sdp.blocks()
  std::vector<RowInfo> rows;       // parallel to sdp.equalities()
  SdpProblem sdp;
  GmpInstance instance;

  std::size_t nvars() const { return instance.nvars(); }
  // Full moment sequence on N^n_D (reduced mode extends through U).
  Eigen::VectorXd full_sequence(const Eigen::VectorXd& y) const;
};

Relaxation build_moment_relaxation(const GmpInstance& inst, int t, const RelaxationOptions& opts = {});
Relaxation build_sos_strengthening(const GmpInstance& inst, int t, const RelaxationOptions& opts = {});
Relaxation build_reduced_relaxation(const GmpInstance& inst, int t);

// Reduced when eligible, full otherwise.
Relaxation build_relaxation(const GmpInstance& inst, int t, std::optional<RelaxationMode> mode = std::nullopt,
                            const RelaxationOptions& opts = {});

}  // namespace gmpsos
