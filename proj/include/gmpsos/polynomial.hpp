#pragma once

#include <cmath>
#include <map>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "gmpsos/errors.hpp"
#include "gmpsos/monomial.hpp"
#include "gmpsos/rational.hpp"

namespace gmpsos {

// Sparse polynomial: exponent vector -> nonzero coefficient, grlex-ascending.
template <class Coeff>
class BasicPolynomial {
 public:
  using coefficient_type = Coeff;
  using TermMap = std::map<Monomial, Coeff, GrlexLess>;

  BasicPolynomial() = default;
  explicit BasicPolynomial(std::size_t nvars) : nvars_(nvars) {}

  static BasicPolynomial constant(std::size_t nvars, const Coeff& c) {
    BasicPolynomial p(nvars);
    p.add_term(Monomial(nvars), c);
    return p;
  }
  static BasicPolynomial term(const Monomial& m, const Coeff& c) {
    BasicPolynomial p(m.size());
    p.add_term(m, c);
    return p;
  }
  static BasicPolynomial variable(std::size_t nvars, std::size_t var) {
    return term(Monomial::unit(nvars, var), Coeff(1));
  }

  std::size_t nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  int degree() const {
    if (terms_.empty()) throw EmptyPolynomialError("degree of the zero polynomial is undefined");
    return terms_.rbegin()->first.degree();
  }
  // Degree with deg(0) := -1, for truncation bookkeeping.
  int degree_or_minus_one() const { return terms_.empty() ? -1 : terms_.rbegin()->first.degree(); }

  Coeff coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Coeff(0) : it->second;
  }

  void add_term(const Monomial& m, const Coeff& c) {
    if (m.size() != nvars_)
      throw DimensionError("term with " + std::to_string(m.size()) + " variables added to polynomial in " +
                           std::to_string(nvars_));
    Coeff v = c;
    if constexpr (std::is_same_v<Coeff, Rational>) v.canonicalize();
    if (coefficient_is_zero(v)) return;
    auto [it, inserted] = terms_.try_emplace(m, v);
    if (!inserted) {
      it->second += v;
      if (coefficient_is_zero(it->second)) terms_.erase(it);
    }
  }
  void erase_term(const Monomial& m) { terms_.erase(m); }

  BasicPolynomial& operator+=(const BasicPolynomial& o) {
    require_same(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  BasicPolynomial& operator-=(const BasicPolynomial& o) {
    require_same(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  BasicPolynomial& operator*=(const Coeff& s) {
    if (coefficient_is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend BasicPolynomial operator+(BasicPolynomial a, const BasicPolynomial& b) { return a += b; }
  friend BasicPolynomial operator-(BasicPolynomial a, const BasicPolynomial& b) { return a -= b; }
  friend BasicPolynomial operator-(BasicPolynomial a) {
    for (auto& [m, c] : a.terms_) c = -c;
    return a;
  }
  friend BasicPolynomial operator*(BasicPolynomial a, const Coeff& s) { return a *= s; }
  friend BasicPolynomial operator*(const Coeff& s, BasicPolynomial a) { return a *= s; }
  friend BasicPolynomial operator*(const BasicPolynomial& a, const BasicPolynomial& b) {
    a.require_same(b);
    BasicPolynomial r(a.nvars_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }
  BasicPolynomial& operator*=(const BasicPolynomial& o) { return *this = *this * o; }

  // Multiply by the monomial x^m with coefficient c.
  BasicPolynomial times_term(const Monomial& m, const Coeff& c) const {
    BasicPolynomial r(nvars_);
    if (coefficient_is_zero(c)) return r;
    for (const auto& [mm, cc] : terms_) r.terms_.emplace_hint(r.terms_.end(), mm * m, cc * c);
    return r;
  }

  BasicPolynomial pow(int k) const {
    BasicPolynomial r = constant(nvars_, Coeff(1));
    for (int i = 0; i < k; ++i) r *= *this;
    return r;
  }

  friend bool operator==(const BasicPolynomial& a, const BasicPolynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  template <class F>
  auto map_coefficients(F f) const -> BasicPolynomial<decltype(f(std::declval<Coeff>()))> {
    BasicPolynomial<decltype(f(std::declval<Coeff>()))> r(nvars_);
    for (const auto& [m, c] : terms_) r.add_term(m, f(c));
    return r;
  }

  // Partial derivative with respect to variable var.
  BasicPolynomial derivative(std::size_t var) const {
    BasicPolynomial r(nvars_);
    for (const auto& [m, c] : terms_) {
      if (m[var] == 0) continue;
      std::vector<int> e = m.exponents();
      const int k = e[var]--;
      r.add_term(Monomial(std::move(e)), c * Coeff(k));
    }
    return r;
  }

 private:
  void require_same(const BasicPolynomial& o) const {
    if (o.nvars_ != nvars_)
      throw DimensionError("polynomials in " + std::to_string(nvars_) + " and " + std::to_string(o.nvars_) +
                           " variables");
  }

  std::size_t nvars_ = 0;
  TermMap terms_;
};

using Polynomial = BasicPolynomial<Rational>;
using RealPolynomial = BasicPolynomial<double>;
using GaussianPolynomial = BasicPolynomial<GaussianRational>;

inline RealPolynomial to_real(const Polynomial& p) {
  return p.map_coefficients([](const Rational& c) { return c.get_d(); });
}
inline Polynomial to_exact(const RealPolynomial& p) {
  return p.map_coefficients([](double c) { return Rational(c); });
}

// Max |coefficient|; 0 for the zero polynomial.
template <class Coeff>
double max_abs_coefficient(const BasicPolynomial<Coeff>& p) {
  double r = 0.0;
  for (const auto& [m, c] : p.terms()) r = std::max(r, std::abs(to_double(c)));
  return r;
}

// Precomputed power table evaluation at real points.
class PolynomialEvaluator {
 public:
  PolynomialEvaluator() = default;
  template <class Coeff>
  explicit PolynomialEvaluator(const BasicPolynomial<Coeff>& p) : nvars_(p.nvars()) {
    for (const auto& [m, c] : p.terms()) {
      exps_.push_back(m.exponents());
      coeffs_.push_back(to_double(c));
      max_deg_ = std::max(max_deg_, m.degree());
    }
  }

  std::size_t nvars() const { return nvars_; }
  double operator()(std::span<const double> x) const;

 private:
  std::size_t nvars_ = 0;
  int max_deg_ = 0;
  std::vector<std::vector<int>> exps_;
  std::vector<double> coeffs_;
};

template <class Coeff>
double evaluate(const BasicPolynomial<Coeff>& p, std::span<const double> x) {
  if (x.size() != p.nvars()) throw DimensionError("evaluation point has wrong dimension");
  return PolynomialEvaluator(p)(x);
}

// Sum of squares of variables [begin, begin + count).
Polynomial squared_norm(std::size_t nvars, std::size_t begin, std::size_t count);

// Text format: [[[e1,...,en],"coef"],...] in grlex-descending order.
std::string to_text(const Polynomial& p);
Polynomial parse_polynomial(std::string_view text, std::size_t nvars);

// Human-readable rendering with variable names, e.g. "x^2 - 1/4".
std::string to_pretty(const Polynomial& p, const std::vector<std::string>& names);

}  // namespace gmpsos
