#pragma once

#include <Eigen/Dense>

#include <string>
#include <utility>
#include <vector>

namespace gmpsos {

enum class BlockKind { psd, diagonal };

// Coefficient of variable var at (row, col), row <= col; var == kConstant marks F0.
struct BlockEntry {
  static constexpr int kConstant = -1;
  int var;
  std::size_t row;
  std::size_t col;
  double value;
};

struct SdpBlock {
  BlockKind kind = BlockKind::psd;
  std::size_t size = 0;
  std::string label;
  std::vector<BlockEntry> entries;
};

struct LinearRow {
  std::vector<std::pair<std::size_t, double>> terms;
  double rhs = 0.0;
  std::string label;
};

// Moment form:  min c'y + offset  s.t.  S_k = F0_k + sum_i y_i F_ik >= 0 (PSD or entrywise), E y = e.
// Its dual is the SOS form:  max e'lambda - <F0, X> + offset  s.t.  <F_i, X> + (E'lambda)_i = c_i, X >= 0.
class SdpProblem {
 public:
  std::size_t add_variable(double cost, std::string label = {});
  std::size_t add_block(BlockKind kind, std::size_t size, std::string label = {});
  void add_entry(std::size_t block, int var, std::size_t row, std::size_t col, double value);
  std::size_t add_equality(std::vector<std::pair<std::size_t, double>> terms, double rhs, std::string label = {});

  std::size_t num_variables() const { return objective_.size(); }
  const std::vector<double>& objective() const { return objective_; }
  std::vector<double>& objective() { return objective_; }
  const std::vector<std::string>& variable_labels() const { return var_labels_; }
  const std::vector<SdpBlock>& blocks() const { return blocks_; }
  std::vector<SdpBlock>& blocks() { return blocks_; }
  const std::vector<LinearRow>& equalities() const { return equalities_; }
  std::vector<LinearRow>& equalities() { return equalities_; }

  double objective_offset = 0.0;

  // Throws on out-of-range indices.
  void check() const;

 private:
  std::vector<double> objective_;
  std::vector<std::string> var_labels_;
  std::vector<SdpBlock> blocks_;
  std::vector<LinearRow> equalities_;
};

// Sparse SDPA text export; equalities become a trailing diagonal block of size 2*rows.
std::string to_sdpa(const SdpProblem& prob);

enum class SolveStatus {
  optimal,
  primal_infeasible,       // moment side infeasible (SOS side has an improving ray)
  dual_infeasible,         // moment side unbounded
  dual_unbounded_suspect,  // dual iterates blew up without a clean certificate
  max_iterations,
};
std::string to_string(SolveStatus s);

struct ErrorMeasures {
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double relative_gap = 0.0;
  // |c - F*(X) - E'lambda| / (1 + |c| + |F*(X)| + |E'lambda|): meaningful when the dual iterate is huge.
  double dual_residual_scaled = 0.0;
};

// Diagonal blocks keep their values in `diag`; PSD blocks in `dense`.
struct BlockValue {
  BlockKind kind = BlockKind::psd;
  Eigen::MatrixXd dense;
  Eigen::VectorXd diag;

  double min_eigenvalue() const;
};

struct SdpSolution {
  SolveStatus status = SolveStatus::max_iterations;
  std::string message;
  Eigen::VectorXd y;
  Eigen::VectorXd multipliers;           // lambda, one per equality row (dropped rows get 0)
  std::vector<BlockValue> primal_blocks; // S = F0 + F(y)
  std::vector<BlockValue> dual_blocks;   // X
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  ErrorMeasures errors;
  int iterations = 0;
};

struct SolverOptions {
  double tol = 1e-8;
  int max_iters = 150;
  double step_fraction = 0.9;
  bool verbose = false;
};

SdpSolution solve_sdp(const SdpProblem& prob, const SolverOptions& opts = {});

}  // namespace gmpsos
