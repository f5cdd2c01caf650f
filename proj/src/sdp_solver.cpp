#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <unordered_map>

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "gmpsos/errors.hpp"
#include "gmpsos/sdp.hpp"

namespace gmpsos {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct Trip {
  std::size_t r, c;
  double v;
};

// Compiled block: psd blocks hold n x n matrices, diagonal blocks n x 1 columns.
struct Blk {
  BlockKind kind = BlockKind::psd;
  std::size_t n = 0;
  MatrixXd F0;
  std::vector<std::size_t> vars;
  std::vector<std::vector<Trip>> ents;
  std::vector<std::vector<std::pair<std::size_t, double>>> by_index;  // diagonal only: (global var, value)

  bool diag() const { return kind == BlockKind::diagonal; }
  Eigen::Index cols() const { return diag() ? 1 : static_cast<Eigen::Index>(n); }
};

std::vector<Blk> compile(const SdpProblem& prob) {
  std::vector<Blk> out;
  for (const auto& b : prob.blocks()) {
    Blk k;
    k.kind = b.kind;
    k.n = b.size;
    k.F0 = MatrixXd::Zero(static_cast<Eigen::Index>(b.size), k.cols());
    std::unordered_map<int, std::size_t> local;
    for (const auto& e : b.entries) {
      if (e.var == BlockEntry::kConstant) {
        if (k.diag()) {
          k.F0(e.row, 0) += e.value;
        } else {
          k.F0(e.row, e.col) += e.value;
          if (e.row != e.col) k.F0(e.col, e.row) += e.value;
        }
        continue;
      }
      auto [it, inserted] = local.try_emplace(e.var, k.vars.size());
      if (inserted) {
        k.vars.push_back(static_cast<std::size_t>(e.var));
        k.ents.emplace_back();
      }
      k.ents[it->second].push_back({e.row, e.col, e.value});
    }
    if (k.diag()) {
      k.by_index.resize(k.n);
      for (std::size_t i = 0; i < k.vars.size(); ++i)
        for (const auto& t : k.ents[i]) k.by_index[t.r].push_back({k.vars[i], t.v});
    }
    out.push_back(std::move(k));
  }
  return out;
}

MatrixXd apply(const Blk& b, const VectorXd& y, bool with_const) {
  MatrixXd A = with_const ? b.F0 : MatrixXd::Zero(b.F0.rows(), b.F0.cols());
  for (std::size_t i = 0; i < b.vars.size(); ++i) {
    const double yi = y[static_cast<Eigen::Index>(b.vars[i])];
    if (yi == 0.0) continue;
    for (const auto& t : b.ents[i]) {
      if (b.diag()) {
        A(t.r, 0) += yi * t.v;
      } else {
        A(t.r, t.c) += yi * t.v;
        if (t.r != t.c) A(t.c, t.r) += yi * t.v;
      }
    }
  }
  return A;
}

// tr(F T) for a symmetric sparse F and arbitrary T.
double inner(const Blk& b, const std::vector<Trip>& ents, const MatrixXd& T) {
  double s = 0.0;
  for (const auto& t : ents) {
    if (b.diag())
      s += t.v * T(t.r, 0);
    else
      s += t.v * (T(t.c, t.r) + (t.r != t.c ? T(t.r, t.c) : 0.0));
  }
  return s;
}

void adjoint(const Blk& b, const MatrixXd& T, VectorXd& out) {
  for (std::size_t i = 0; i < b.vars.size(); ++i) out[static_cast<Eigen::Index>(b.vars[i])] += inner(b, b.ents[i], T);
}

double dot(const MatrixXd& A, const MatrixXd& B) { return A.cwiseProduct(B).sum(); }

MatrixXd inverse_spd(const MatrixXd& S) {
  Eigen::LLT<MatrixXd> llt(S);
  if (llt.info() != Eigen::Success) throw SolverError("slack matrix lost definiteness");
  return llt.solve(MatrixXd::Identity(S.rows(), S.cols()));
}

// Largest alpha with A + alpha dA >= 0 (A strictly feasible).
double max_step(const Blk& b, const MatrixXd& A, const MatrixXd& dA) {
  double alpha = std::numeric_limits<double>::infinity();
  if (b.diag()) {
    for (Eigen::Index i = 0; i < A.rows(); ++i)
      if (dA(i, 0) < 0) alpha = std::min(alpha, -A(i, 0) / dA(i, 0));
    return alpha;
  }
  if (A.rows() == 0) return alpha;
  Eigen::LLT<MatrixXd> llt(A);
  if (llt.info() != Eigen::Success) return 0.0;
  const MatrixXd L = llt.matrixL();
  const MatrixXd W = L.triangularView<Eigen::Lower>().solve(dA);
  MatrixXd Z = L.triangularView<Eigen::Lower>().solve(W.transpose());
  Z = 0.5 * (Z + Z.transpose());
  const double lmin = Eigen::SelfAdjointEigenSolver<MatrixXd>(Z, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
  if (lmin < 0) alpha = -1.0 / lmin;
  return alpha;
}

struct Iterate {
  VectorXd y, lambda;
  std::vector<MatrixXd> X, S;
};

struct Metrics {
  double pobj = 0, dobj = 0, pinf = 0, dinf = 0, gap = 0, dinf_scaled = 0;
  double merit() const { return std::max({pinf, dinf, gap}); }
};

class Engine {
 public:
  Engine(const SdpProblem& prob, const SolverOptions& opts) : prob_(prob), opts_(opts), blocks_(compile(prob)) {
    m_ = static_cast<Eigen::Index>(prob.num_variables());
    c_ = Eigen::Map<const VectorXd>(prob.objective().data(), m_);
  }

  SdpSolution run();

 private:
  bool preprocess_equalities(std::string& why);
  Metrics measure(const Iterate& it, std::vector<MatrixXd>& Rp, VectorXd& rE, VectorXd& rd) const;
  bool factor(const std::vector<MatrixXd>& X, const std::vector<MatrixXd>& Sinv);
  void direction(const Iterate& it, const std::vector<MatrixXd>& Sinv, const std::vector<MatrixXd>& T,
                 const std::vector<MatrixXd>& Rp, const VectorXd& rE, const VectorXd& rd, VectorXd& dy, VectorXd& dl,
                 std::vector<MatrixXd>& dX, std::vector<MatrixXd>& dS) const;
  SdpSolution finish(const Iterate& it, SolveStatus status, std::string message, int iters) const;

  const SdpProblem& prob_;
  SolverOptions opts_;
  std::vector<Blk> blocks_;
  Eigen::Index m_ = 0;
  VectorXd c_;
  MatrixXd E_;                  // kept, normalised rows
  VectorXd e_;
  std::vector<std::size_t> kept_;  // original row index per kept row
  VectorXd row_scale_;
  Eigen::PartialPivLU<MatrixXd> kkt_;
  double kkt_scale_ = 1.0;
};

bool Engine::preprocess_equalities(std::string& why) {
  const auto& rows = prob_.equalities();
  const Eigen::Index K = static_cast<Eigen::Index>(rows.size());
  if (K == 0) {
    E_.resize(0, m_);
    e_.resize(0);
    return true;
  }
  MatrixXd E = MatrixXd::Zero(K, m_);
  VectorXd e(K);
  for (Eigen::Index r = 0; r < K; ++r) {
    for (const auto& [v, c] : rows[r].terms) E(r, static_cast<Eigen::Index>(v)) += c;
    e[r] = rows[r].rhs;
  }
  Eigen::ColPivHouseholderQR<MatrixXd> qr(E.transpose());
  qr.setThreshold(1e-11);
  const Eigen::Index rank = qr.rank();
  const auto& perm = qr.colsPermutation().indices();
  std::vector<std::size_t> kept;
  for (Eigen::Index i = 0; i < rank; ++i) kept.push_back(static_cast<std::size_t>(perm[i]));
  std::sort(kept.begin(), kept.end());
  MatrixXd Ek(static_cast<Eigen::Index>(kept.size()), m_);
  VectorXd ek(static_cast<Eigen::Index>(kept.size()));
  for (std::size_t i = 0; i < kept.size(); ++i) {
    Ek.row(static_cast<Eigen::Index>(i)) = E.row(static_cast<Eigen::Index>(kept[i]));
    ek[static_cast<Eigen::Index>(i)] = e[static_cast<Eigen::Index>(kept[i])];
  }
  if (rank < K) {
    // Dropped rows must be implied by the kept ones.
    const VectorXd y0 = Ek.completeOrthogonalDecomposition().solve(ek);
    const double resid = (E * y0 - e).norm();
    if (resid > 1e-9 * (1.0 + e.norm())) {
      why = "linear equality constraints are inconsistent (residual " + std::to_string(resid) + ")";
      return false;
    }
  }
  row_scale_.resize(Ek.rows());
  for (Eigen::Index i = 0; i < Ek.rows(); ++i) {
    const double s = Ek.row(i).norm();
    row_scale_[i] = s;
    Ek.row(i) /= s;
    ek[i] /= s;
  }
  E_ = std::move(Ek);
  e_ = std::move(ek);
  kept_ = std::move(kept);
  return true;
}

Metrics Engine::measure(const Iterate& it, std::vector<MatrixXd>& Rp, VectorXd& rE, VectorXd& rd) const {
  Metrics mt;
  double rp2 = 0.0, f0 = 0.0;
  VectorXd FX = VectorXd::Zero(m_);
  double f0x = 0.0;
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    Rp[k] = apply(blocks_[k], it.y, true) - it.S[k];
    rp2 += Rp[k].squaredNorm();
    f0 += blocks_[k].F0.squaredNorm();
    adjoint(blocks_[k], it.X[k], FX);
    f0x += dot(blocks_[k].F0, it.X[k]);
  }
  rE = e_ - E_ * it.y;
  rd = c_ - FX - E_.transpose() * it.lambda;
  mt.pobj = c_.dot(it.y);
  mt.dobj = e_.dot(it.lambda) - f0x;
  mt.pinf = std::sqrt(rp2 + rE.squaredNorm()) / (1.0 + std::sqrt(f0 + e_.squaredNorm()));
  mt.dinf = rd.norm() / (1.0 + c_.norm());
  mt.dinf_scaled = rd.norm() / (1.0 + c_.norm() + FX.norm() + (E_.transpose() * it.lambda).norm());
  mt.gap = std::abs(mt.pobj - mt.dobj) / (1.0 + std::abs(mt.pobj) + std::abs(mt.dobj));
  return mt;
}

bool Engine::factor(const std::vector<MatrixXd>& X, const std::vector<MatrixXd>& Sinv) {
  MatrixXd M = MatrixXd::Zero(m_, m_);
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    const Blk& b = blocks_[k];
    if (b.diag()) {
      for (std::size_t i = 0; i < b.n; ++i) {
        const double w = X[k](i, 0) * Sinv[k](i, 0);
        for (const auto& [va, a] : b.by_index[i])
          for (const auto& [vb, bb] : b.by_index[i])
            M(static_cast<Eigen::Index>(va), static_cast<Eigen::Index>(vb)) += w * a * bb;
      }
      continue;
    }
    const Eigen::Index n = static_cast<Eigen::Index>(b.n);
    MatrixXd P(n, n);
    for (std::size_t j = 0; j < b.vars.size(); ++j) {
      P.setZero();
      for (const auto& t : b.ents[j]) {
        P.noalias() += t.v * X[k].col(t.r) * Sinv[k].row(t.c);
        if (t.r != t.c) P.noalias() += t.v * X[k].col(t.c) * Sinv[k].row(t.r);
      }
      for (std::size_t i = 0; i < b.vars.size(); ++i)
        M(static_cast<Eigen::Index>(b.vars[i]), static_cast<Eigen::Index>(b.vars[j])) += inner(b, b.ents[i], P);
    }
  }
  M = 0.5 * (M + M.transpose());
  // Newton system [M -E'; E 0]; scaled so both row groups have comparable size.
  const Eigen::Index K = E_.rows();
  const double scale = std::max(1.0, M.diagonal().cwiseAbs().maxCoeff());
  kkt_scale_ = scale;
  MatrixXd KKT = MatrixXd::Zero(m_ + K, m_ + K);
  KKT.topLeftCorner(m_, m_) = M;
  KKT.topRightCorner(m_, K) = -scale * E_.transpose();
  KKT.bottomLeftCorner(K, m_) = scale * E_;
  kkt_.compute(KKT);
  const double rc = kkt_.rcond();
  if (!(rc > 1e-300)) return false;
  return true;
}

void Engine::direction(const Iterate& it, const std::vector<MatrixXd>& Sinv, const std::vector<MatrixXd>& T,
                       const std::vector<MatrixXd>& Rp, const VectorXd& rE, const VectorXd& rd, VectorXd& dy,
                       VectorXd& dl, std::vector<MatrixXd>& dX, std::vector<MatrixXd>& dS) const {
  VectorXd g = VectorXd::Zero(m_);
  for (std::size_t k = 0; k < blocks_.size(); ++k) adjoint(blocks_[k], T[k], g);
  auto solve = [&](const VectorXd& first, const VectorXd& second, VectorXd& x, VectorXd& l) {
    const Eigen::Index K = E_.rows();
    VectorXd rhs(m_ + K);
    rhs << first, kkt_scale_ * second;
    const VectorXd sol = kkt_.solve(rhs);
    x = sol.head(m_);
    l = kkt_scale_ * sol.tail(K);
  };
  auto form = [&] {
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
      const MatrixXd Fdy = apply(blocks_[k], dy, false);
      dS[k] = Rp[k] + Fdy;
      if (blocks_[k].diag()) {
        dX[k] = T[k] - it.X[k].cwiseProduct(Fdy).cwiseProduct(Sinv[k]);
      } else {
        MatrixXd D = T[k] - it.X[k] * Fdy * Sinv[k];
        dX[k] = 0.5 * (D + D.transpose());
      }
    }
  };
  solve(g - rd, rE, dy, dl);
  form();
  // Iterative refinement against the actual operator: the Schur matrix loses accuracy
  // when X and S^-1 are badly scaled, which is exactly the non-attained regime.
  // Near the end the refinement itself can diverge, so only improving rounds are kept.
  auto residual = [&] {
    VectorXd FdX = VectorXd::Zero(m_);
    for (std::size_t k = 0; k < blocks_.size(); ++k) adjoint(blocks_[k], dX[k], FdX);
    const VectorXd res = rd - FdX - (E_.rows() ? VectorXd(E_.transpose() * dl) : VectorXd::Zero(m_));
    return std::pair{res, VectorXd(rE - E_ * dy)};
  };
  auto [res, resE] = residual();
  for (int round = 0; round < 6; ++round) {
    const double before = res.norm() + resE.norm();
    if (before <= 1e-14 * (1.0 + rd.norm() + rE.norm())) break;
    VectorXd ddy, ddl;
    solve(-res, resE, ddy, ddl);
    const VectorXd dy0 = dy, dl0 = dl;
    const auto dX0 = dX, dS0 = dS;
    dy += ddy;
    if (dl.size()) dl += ddl;
    form();
    auto [r2, rE2] = residual();
    if (r2.norm() + rE2.norm() >= before) {
      dy = dy0;
      dl = dl0;
      dX = dX0;
      dS = dS0;
      break;
    }
    res = std::move(r2);
    resE = std::move(rE2);
  }
}

SdpSolution Engine::finish(const Iterate& it, SolveStatus status, std::string message, int iters) const {
  SdpSolution sol;
  sol.status = status;
  sol.message = std::move(message);
  sol.iterations = iters;
  sol.y = it.y;
  sol.multipliers = VectorXd::Zero(static_cast<Eigen::Index>(prob_.equalities().size()));
  for (std::size_t i = 0; i < kept_.size(); ++i)
    sol.multipliers[static_cast<Eigen::Index>(kept_[i])] =
        it.lambda[static_cast<Eigen::Index>(i)] / row_scale_[static_cast<Eigen::Index>(i)];
  std::vector<MatrixXd> Rp(blocks_.size());
  VectorXd rE, rd;
  const Metrics mt = measure(it, Rp, rE, rd);
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    const Blk& b = blocks_[k];
    BlockValue pv, dv;
    pv.kind = dv.kind = b.kind;
    const MatrixXd S = apply(b, it.y, true);
    if (b.diag()) {
      pv.diag = S.col(0);
      dv.diag = it.X[k].col(0);
    } else {
      pv.dense = S;
      dv.dense = it.X[k];
    }
    sol.primal_blocks.push_back(std::move(pv));
    sol.dual_blocks.push_back(std::move(dv));
  }
  sol.primal_objective = mt.pobj + prob_.objective_offset;
  sol.dual_objective = mt.dobj + prob_.objective_offset;
  sol.errors = {mt.pinf, mt.dinf, mt.gap, mt.dinf_scaled};
  return sol;
}

SdpSolution Engine::run() {
  prob_.check();
  std::string why;
  Iterate it;
  it.y = VectorXd::Zero(m_);
  if (!preprocess_equalities(why)) {
    it.lambda = VectorXd::Zero(0);
    kept_.clear();
    for (const auto& b : blocks_) {
      it.X.push_back(MatrixXd::Zero(b.F0.rows(), b.F0.cols()));
      it.S.push_back(MatrixXd::Zero(b.F0.rows(), b.F0.cols()));
    }
    row_scale_.resize(0);
    E_.resize(0, m_);
    e_.resize(0);
    return finish(it, SolveStatus::primal_infeasible, why, 0);
  }
  it.lambda = VectorXd::Zero(E_.rows());

  // Starting point scaled to the data, in the spirit of SDPT3.
  double N = 0.0;
  for (const auto& b : blocks_) N += static_cast<double>(b.n);
  const double sqn = std::sqrt(std::max(1.0, N));
  double xi = std::max(10.0, sqn), eta = std::max(10.0, sqn);
  for (const auto& b : blocks_) {
    eta = std::max(eta, sqn * b.F0.norm());
    for (std::size_t i = 0; i < b.vars.size(); ++i) {
      double fn = 0.0;
      for (const auto& t : b.ents[i]) fn += t.v * t.v * (t.r == t.c ? 1.0 : 2.0);
      fn = std::sqrt(fn);
      xi = std::max(xi, sqn * (1.0 + std::abs(c_[static_cast<Eigen::Index>(b.vars[i])])) / (1.0 + fn));
      eta = std::max(eta, fn);
    }
  }
  for (const auto& b : blocks_) {
    if (b.diag()) {
      it.X.push_back(MatrixXd::Constant(b.F0.rows(), 1, xi));
      it.S.push_back(MatrixXd::Constant(b.F0.rows(), 1, eta));
    } else {
      it.X.push_back(xi * MatrixXd::Identity(b.F0.rows(), b.F0.rows()));
      it.S.push_back(eta * MatrixXd::Identity(b.F0.rows(), b.F0.rows()));
    }
  }

  const std::size_t nb = blocks_.size();
  std::vector<MatrixXd> Rp(nb), Sinv(nb), T(nb), dX(nb), dS(nb), dXc(nb), dSc(nb);
  VectorXd rE, rd, dy, dl, dyc, dlc;
  Iterate best = it;
  Metrics best_mt;
  best_mt.pinf = best_mt.dinf = best_mt.gap = std::numeric_limits<double>::infinity();
  double min_pinf = INFINITY, min_dinf = INFINITY, min_gap = INFINITY;
  int stall = 0;
  Metrics mt;
  // Without convergence prefer the latest primal-feasible iterate (smallest complementarity),
  // otherwise the best by merit.
  auto give_up = [&](SolveStatus status, const std::string& why, int iter) {
    if (mt.pinf <= opts_.tol && std::isfinite(mt.merit()))
      return finish(it, status, why + "; returning the last primal-feasible iterate", iter);
    return finish(best, status, why, iter);
  };

  for (int iter = 0;; ++iter) {
    mt = measure(it, Rp, rE, rd);
    if (opts_.verbose)
      std::fprintf(stderr, "%3d pobj %+.10e dobj %+.10e pinf %.2e dinf %.2e gap %.2e\n", iter, mt.pobj, mt.dobj,
                   mt.pinf, mt.dinf, mt.gap);
    if (!std::isfinite(mt.merit())) return finish(best, SolveStatus::max_iterations, "numerical breakdown", iter);
    if (mt.merit() < best_mt.merit()) {
      best = it;
      best_mt = mt;
    }
    bool progress = false;
    for (auto [cur, low] : {std::pair{mt.pinf, &min_pinf}, {mt.dinf, &min_dinf}, {mt.gap, &min_gap}})
      if (cur < 0.9 * *low || (cur <= opts_.tol && cur < *low)) {
        *low = cur;
        progress = true;
      }
    stall = progress ? 0 : stall + 1;
    if (mt.pinf <= opts_.tol && mt.dinf <= opts_.tol && mt.gap <= opts_.tol)
      return finish(it, SolveStatus::optimal, "converged", iter);

    // Infeasibility certificates from the blow-up direction of the iterates.
    double xnorm = it.lambda.norm();
    for (const auto& x : it.X) xnorm += x.norm();
    const double dray = mt.dobj;
    if (dray > 0 && mt.pinf > opts_.tol && (c_ - rd).norm() / dray < 1e-8)
      return finish(it, SolveStatus::primal_infeasible, "dual improving ray found", iter);
    const double pray = -mt.pobj;
    if (pray > 0 && mt.dinf > opts_.tol) {
      double r = (E_ * it.y).norm();
      for (std::size_t k = 0; k < nb; ++k) r += (apply(blocks_[k], it.y, false) - it.S[k]).norm();
      if (r / pray < 1e-8) return finish(it, SolveStatus::dual_infeasible, "primal unbounded ray found", iter);
    }
    if (xnorm > 1e12)
      return give_up(SolveStatus::dual_unbounded_suspect, "dual iterates diverged without a certificate", iter);
    if (iter >= opts_.max_iters)
      return give_up(SolveStatus::max_iterations, "iteration limit reached", iter);
    if (stall > 20) return give_up(SolveStatus::max_iterations, "no progress in 20 iterations", iter);

    double mu = 0.0;
    for (std::size_t k = 0; k < nb; ++k) mu += dot(it.X[k], it.S[k]);
    mu /= std::max(1.0, N);

    try {
      for (std::size_t k = 0; k < nb; ++k)
        Sinv[k] = blocks_[k].diag() ? MatrixXd(it.S[k].cwiseInverse()) : inverse_spd(it.S[k]);
    } catch (const SolverError&) {
      return give_up(SolveStatus::max_iterations, "slack matrix lost definiteness", iter);
    }
    if (!factor(it.X, Sinv)) return give_up(SolveStatus::max_iterations, "Schur complement is singular", iter);

    // Predictor.
    for (std::size_t k = 0; k < nb; ++k) {
      if (blocks_[k].diag())
        T[k] = -it.X[k] - it.X[k].cwiseProduct(Rp[k]).cwiseProduct(Sinv[k]);
      else
        T[k] = -it.X[k] - it.X[k] * Rp[k] * Sinv[k];
    }
    direction(it, Sinv, T, Rp, rE, rd, dy, dl, dX, dS);
    double ax = 1.0, as = 1.0;
    for (std::size_t k = 0; k < nb; ++k) {
      ax = std::min(ax, max_step(blocks_[k], it.X[k], dX[k]));
      as = std::min(as, max_step(blocks_[k], it.S[k], dS[k]));
    }
    double mu_aff = 0.0;
    for (std::size_t k = 0; k < nb; ++k) mu_aff += dot(it.X[k] + ax * dX[k], it.S[k] + as * dS[k]);
    mu_aff /= std::max(1.0, N);
    const double sigma = mu > 0 ? std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0) : 0.0;

    // Corrector.
    for (std::size_t k = 0; k < nb; ++k) {
      if (blocks_[k].diag())
        T[k] = sigma * mu * Sinv[k] - it.X[k] -
               (it.X[k].cwiseProduct(Rp[k]) + dX[k].cwiseProduct(dS[k])).cwiseProduct(Sinv[k]);
      else
        T[k] = sigma * mu * Sinv[k] - it.X[k] - (it.X[k] * Rp[k] + dX[k] * dS[k]) * Sinv[k];
    }
    direction(it, Sinv, T, Rp, rE, rd, dyc, dlc, dXc, dSc);
    ax = std::numeric_limits<double>::infinity();
    as = ax;
    for (std::size_t k = 0; k < nb; ++k) {
      ax = std::min(ax, max_step(blocks_[k], it.X[k], dXc[k]));
      as = std::min(as, max_step(blocks_[k], it.S[k], dSc[k]));
    }
    ax = std::min(1.0, opts_.step_fraction * ax);
    as = std::min(1.0, opts_.step_fraction * as);
    if (ax < 1e-12 && as < 1e-12)
      return give_up(SolveStatus::max_iterations, "step length collapsed", iter);
    it.y += as * dyc;
    if (dlc.size()) it.lambda += ax * dlc;
    for (std::size_t k = 0; k < nb; ++k) {
      it.X[k] += ax * dXc[k];
      it.S[k] += as * dSc[k];
      if (!blocks_[k].diag()) {
        it.X[k] = 0.5 * (it.X[k] + it.X[k].transpose());
        it.S[k] = 0.5 * (it.S[k] + it.S[k].transpose());
      }
    }
  }
}

}  // namespace

SdpSolution solve_sdp(const SdpProblem& prob, const SolverOptions& opts) {
  Engine engine(prob, opts);
  return engine.run();
}

}  // namespace gmpsos
