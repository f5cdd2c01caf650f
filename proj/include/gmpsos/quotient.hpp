#pragma once

#include <Eigen/Dense>

#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gmpsos/groebner.hpp"
#include "gmpsos/polynomial.hpp"

namespace gmpsos {

using SparseCoeffs = std::vector<std::pair<std::size_t, Rational>>;

// Raised when generators fail the Buchberger check; carries the witness.
class NotGroebnerError : public ValidationError {
 public:
  NotGroebnerError(std::size_t i, std::size_t j, Polynomial remainder);
  std::pair<std::size_t, std::size_t> pair;
  Polynomial remainder;
};

// Standard monomials B_level of a Groebner basis, with exact normal forms of all
// monomials of degree <= level. B_d (d <= level) is a prefix of basis().
class QuotientBasis {
 public:
  QuotientBasis(std::vector<Polynomial> generators, std::size_t nvars, int level);

  std::size_t nvars() const { return nvars_; }
  int level() const { return level_; }
  const std::vector<Polynomial>& generators() const { return generators_; }
  const std::vector<Monomial>& basis() const { return basis_; }
  // r_d: number of standard monomials of degree <= d.
  std::size_t rank(int degree) const;
  std::optional<std::size_t> index_of(const Monomial& m) const;

  // c-vector of x^alpha, sparse; requires deg alpha <= level.
  const SparseCoeffs& monomial_coeffs(const Monomial& alpha) const;
  // Dense c-vector of length r_level.
  std::vector<Rational> normal_form_coeffs(const Polynomial& p) const;
  Eigen::VectorXd normal_form_values(const Polynomial& p) const;
  // Residue of p as a polynomial supported on B.
  Polynomial normal_form(const Polynomial& p) const;

  // U_d: r_d x |N^n_d|, columns in monomials_up_to(n, d) order.
  Eigen::MatrixXd U(int degree) const;

  // Golden-file dump: basis monomials, then dense rows of U_level.
  std::string dump() const;

 private:
  std::size_t nvars_;
  int level_;
  std::vector<Polynomial> generators_;
  std::vector<Monomial> basis_;
  std::unordered_map<Monomial, std::size_t, MonomialHash> basis_index_;
  std::unordered_map<Monomial, SparseCoeffs, MonomialHash> cache_;
};

QuotientBasis standard_monomial_basis(const std::vector<Polynomial>& G, std::size_t nvars, int level);
std::vector<Rational> normal_form_coeffs(const Polynomial& p, const QuotientBasis& qb);
Eigen::MatrixXd build_U(const QuotientBasis& qb, int degree);

// z = U^T zhat.
Eigen::VectorXd extend_sequence(const Eigen::VectorXd& zhat, const Eigen::MatrixXd& U);

// Reduced Riesz functional: sum_e c_e(p) zhat_e.
double reduced_riesz(const Polynomial& p, const Eigen::VectorXd& zhat, const QuotientBasis& qb);

// Entry (i, j, e, value): matrix entry (i,j) gains value * zhat_e. Only i <= j is listed.
struct PatternEntry {
  std::size_t row;
  std::size_t col;
  std::size_t var;
  double value;
};

// Reduced localizing structure of g at order t (g = 1 gives the reduced moment matrix).
// Size r_{t - ceil(deg g / 2)}; qb must have level >= 2t.
std::vector<PatternEntry> reduced_localizing_pattern(const Polynomial& g, const QuotientBasis& qb, int t,
                                                     std::size_t* size = nullptr);

Eigen::MatrixXd reduced_moment_matrix(const Eigen::VectorXd& zhat, const QuotientBasis& qb, int t);
Eigen::MatrixXd reduced_localizing_matrix(const Polynomial& g, const Eigen::VectorXd& zhat, const QuotientBasis& qb,
                                          int t);

// ceil(deg g / 2), with deg 0 for the zero polynomial.
int half_degree(const Polynomial& g);

}  // namespace gmpsos
