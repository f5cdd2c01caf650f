#include <algorithm>
#include <cstdio>
#include <sstream>
#include <tuple>

#include "gmpsos/errors.hpp"
#include "gmpsos/sdp.hpp"

namespace gmpsos {

std::size_t SdpProblem::add_variable(double cost, std::string label) {
  objective_.push_back(cost);
  var_labels_.push_back(std::move(label));
  return objective_.size() - 1;
}

std::size_t SdpProblem::add_block(BlockKind kind, std::size_t size, std::string label) {
  blocks_.push_back({kind, size, std::move(label), {}});
  return blocks_.size() - 1;
}

void SdpProblem::add_entry(std::size_t block, int var, std::size_t row, std::size_t col, double value) {
  if (block >= blocks_.size()) throw std::out_of_range("block index out of range");
  auto& b = blocks_[block];
  if (row > col) std::swap(row, col);
  if (col >= b.size) throw std::out_of_range("entry outside block " + b.label);
  if (b.kind == BlockKind::diagonal && row != col) throw std::invalid_argument("off-diagonal entry in a diagonal block");
  if (var != BlockEntry::kConstant && (var < 0 || static_cast<std::size_t>(var) >= objective_.size()))
    throw std::out_of_range("variable index out of range");
  if (value != 0.0) b.entries.push_back({var, row, col, value});
}

std::size_t SdpProblem::add_equality(std::vector<std::pair<std::size_t, double>> terms, double rhs, std::string label) {
  for (const auto& [v, c] : terms)
    if (v >= objective_.size()) throw std::out_of_range("equality references an unknown variable");
  equalities_.push_back({std::move(terms), rhs, std::move(label)});
  return equalities_.size() - 1;
}

void SdpProblem::check() const {
  for (const auto& b : blocks_)
    for (const auto& e : b.entries) {
      if (e.col >= b.size || e.row > e.col) throw std::out_of_range("malformed entry in block " + b.label);
      if (e.var != BlockEntry::kConstant && static_cast<std::size_t>(e.var) >= objective_.size())
        throw std::out_of_range("entry references an unknown variable");
    }
  for (const auto& r : equalities_)
    for (const auto& [v, c] : r.terms)
      if (v >= objective_.size()) throw std::out_of_range("equality references an unknown variable");
}

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string to_sdpa(const SdpProblem& prob) {
  prob.check();
  const auto& eqs = prob.equalities();
  const std::size_t nb = prob.blocks().size() + (eqs.empty() ? 0 : 1);
  std::ostringstream os;
  os << "* gmpsos sparse SDPA export\n";
  os << "* objective offset " << num(prob.objective_offset) << "\n";
  os << prob.num_variables() << "\n" << nb << "\n";
  for (std::size_t k = 0; k < prob.blocks().size(); ++k) {
    const auto& b = prob.blocks()[k];
    os << (k ? " " : "") << (b.kind == BlockKind::diagonal ? -static_cast<long>(b.size) : static_cast<long>(b.size));
  }
  if (!eqs.empty()) os << (prob.blocks().empty() ? "" : " ") << -static_cast<long>(2 * eqs.size());
  os << "\n";
  for (std::size_t i = 0; i < prob.num_variables(); ++i) os << (i ? " " : "") << num(prob.objective()[i]);
  os << "\n";
  struct Line {
    std::size_t mat, blk, i, j;
    double v;
  };
  std::vector<Line> lines;
  for (std::size_t k = 0; k < prob.blocks().size(); ++k)
    for (const auto& e : prob.blocks()[k].entries) {
      // SDPA's constant matrix enters with a minus sign.
      const bool constant = e.var == BlockEntry::kConstant;
      lines.push_back({constant ? 0 : static_cast<std::size_t>(e.var) + 1, k + 1, e.row + 1, e.col + 1,
                       constant ? -e.value : e.value});
    }
  const std::size_t eb = prob.blocks().size() + 1;
  const std::size_t K = eqs.size();
  for (std::size_t r = 0; r < K; ++r) {
    for (const auto& [v, c] : eqs[r].terms) {
      lines.push_back({v + 1, eb, r + 1, r + 1, c});
      lines.push_back({v + 1, eb, K + r + 1, K + r + 1, -c});
    }
    if (eqs[r].rhs != 0.0) {
      lines.push_back({0, eb, r + 1, r + 1, eqs[r].rhs});
      lines.push_back({0, eb, K + r + 1, K + r + 1, -eqs[r].rhs});
    }
  }
  std::stable_sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) {
    return std::tie(a.mat, a.blk, a.i, a.j) < std::tie(b.mat, b.blk, b.i, b.j);
  });
  for (const auto& l : lines) os << l.mat << " " << l.blk << " " << l.i << " " << l.j << " " << num(l.v) << "\n";
  return os.str();
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::primal_infeasible: return "primal-infeasible";
    case SolveStatus::dual_infeasible: return "dual-infeasible";
    case SolveStatus::dual_unbounded_suspect: return "dual-unbounded-suspect";
    case SolveStatus::max_iterations: return "max-iterations";
  }
  return "unknown";
}

double BlockValue::min_eigenvalue() const {
  if (kind == BlockKind::diagonal) return diag.size() ? diag.minCoeff() : 0.0;
  if (dense.size() == 0) return 0.0;
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(dense, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
}

}  // namespace gmpsos
