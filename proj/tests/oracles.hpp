#pragma once

// Brute-force oracles shared by the unit tests and the acceptance run.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <vector>

#include "gmpsos/quotient.hpp"
#include "gmpsos/sdp.hpp"

namespace testing_support {

using namespace gmpsos;

// Independent full-sequence oracles, written against plain monomial lookups.
inline std::map<Monomial, double, GrlexLess> as_map(const Eigen::VectorXd& z, std::size_t n, int d) {
  std::map<Monomial, double, GrlexLess> out;
  const auto ms = monomials_up_to(n, d);
  for (std::size_t i = 0; i < ms.size(); ++i) out[ms[i]] = z[static_cast<Eigen::Index>(i)];
  return out;
}

inline Eigen::MatrixXd full_localizing(const Polynomial& g, const Eigen::VectorXd& z, std::size_t n, int t) {
  const int d = 2 * t;
  const auto zm = as_map(z, n, d);
  const int s = t - half_degree(g);
  const auto rows = monomials_up_to(n, s);
  Eigen::MatrixXd M(rows.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j) {
      double v = 0;
      for (const auto& [gm, gc] : g.terms()) v += gc.get_d() * zm.at(rows[i] * rows[j] * gm);
      M(i, j) = v;
    }
  return M;
}

inline double full_riesz(const Polynomial& p, const Eigen::VectorXd& z, std::size_t n, int d) {
  const auto zm = as_map(z, n, d);
  double v = 0;
  for (const auto& [m, c] : p.terms()) v += c.get_d() * zm.at(m);
  return v;
}

struct Lp {
  Eigen::MatrixXd A;  // A y + a >= 0
  Eigen::VectorXd a;
  Eigen::MatrixXd E;  // E y = e
  Eigen::VectorXd e;
  Eigen::VectorXd c;
};

inline SdpProblem to_sdp(const Lp& lp) {
  SdpProblem p;
  for (Eigen::Index i = 0; i < lp.c.size(); ++i) p.add_variable(lp.c[i]);
  const auto b = p.add_block(BlockKind::diagonal, static_cast<std::size_t>(lp.A.rows()));
  for (Eigen::Index r = 0; r < lp.A.rows(); ++r) {
    p.add_entry(b, BlockEntry::kConstant, r, r, lp.a[r]);
    for (Eigen::Index i = 0; i < lp.A.cols(); ++i) p.add_entry(b, static_cast<int>(i), r, r, lp.A(r, i));
  }
  for (Eigen::Index r = 0; r < lp.E.rows(); ++r) {
    std::vector<std::pair<std::size_t, double>> terms;
    for (Eigen::Index i = 0; i < lp.E.cols(); ++i) terms.push_back({static_cast<std::size_t>(i), lp.E(r, i)});
    p.add_equality(terms, lp.e[r]);
  }
  return p;
}

// Brute force: every choice of n active rows (equalities always active).
inline double vertex_oracle(const Lp& lp) {
  const Eigen::Index n = lp.c.size();
  const Eigen::Index p = lp.A.rows();
  const Eigen::Index need = n - lp.E.rows();
  double best = INFINITY;
  std::vector<int> pick(static_cast<std::size_t>(p), 0);
  std::fill(pick.begin(), pick.begin() + need, 1);
  std::sort(pick.begin(), pick.end());
  do {
    Eigen::MatrixXd K(n, n);
    Eigen::VectorXd r(n);
    Eigen::Index row = 0;
    for (Eigen::Index i = 0; i < lp.E.rows(); ++i, ++row) {
      K.row(row) = lp.E.row(i);
      r[row] = lp.e[i];
    }
    for (Eigen::Index i = 0; i < p; ++i)
      if (pick[static_cast<std::size_t>(i)]) {
        K.row(row) = lp.A.row(i);
        r[row++] = -lp.a[i];
      }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(K);
    if (lu.rank() < n) continue;
    const Eigen::VectorXd y = lu.solve(r);
    if (((lp.A * y + lp.a).array() < -1e-9).any()) continue;
    best = std::min(best, lp.c.dot(y));
  } while (std::next_permutation(pick.begin(), pick.end()));
  return best;
}

inline Lp random_lp(std::mt19937& rng, int n, int extra, bool with_equality) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Lp lp;
  const int p = 2 * n + extra;
  lp.A = Eigen::MatrixXd::Zero(p, n);
  lp.a = Eigen::VectorXd::Zero(p);
  for (int i = 0; i < n; ++i) {  // box |y_i| <= 3
    lp.A(2 * i, i) = 1;
    lp.A(2 * i + 1, i) = -1;
    lp.a[2 * i] = lp.a[2 * i + 1] = 3;
  }
  Eigen::VectorXd y0(n);
  for (int i = 0; i < n; ++i) y0[i] = u(rng);
  for (int k = 2 * n; k < p; ++k) {
    for (int i = 0; i < n; ++i) lp.A(k, i) = u(rng);
    lp.a[k] = -lp.A.row(k).dot(y0) + 0.1 + std::abs(u(rng));
  }
  lp.c.resize(n);
  for (int i = 0; i < n; ++i) lp.c[i] = u(rng);
  if (with_equality) {
    lp.E = Eigen::MatrixXd(1, n);
    for (int i = 0; i < n; ++i) lp.E(0, i) = u(rng);
    lp.e = lp.E * y0;
  } else {
    lp.E.resize(0, n);
    lp.e.resize(0);
  }
  return lp;
}

}  // namespace testing_support
