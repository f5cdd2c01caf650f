#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace gmpsos {

// Exponent vector alpha in N^n; x^alpha = x1^alpha1 ... xn^alphan.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<int> exponents);
  Monomial(std::initializer_list<int> exponents) : Monomial(std::vector<int>(exponents)) {}

  static Monomial unit(std::size_t nvars, std::size_t var);

  std::size_t size() const { return exps_.size(); }
  int operator[](std::size_t i) const { return exps_[i]; }
  const std::vector<int>& exponents() const { return exps_; }
  int degree() const { return degree_; }
  bool is_constant() const { return degree_ == 0; }

  bool divides(const Monomial& other) const;
  bool coprime(const Monomial& other) const;
  Monomial lcm(const Monomial& other) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  // Requires a divisible by b.
  friend Monomial operator/(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }

  std::string to_string() const;

 private:
  std::vector<int> exps_;
  int degree_ = 0;
};

enum class MonomialOrderKind { graded_lex };

// Graded lexicographic order with x1 > x2 > ... > xn.
struct MonomialOrder {
  MonomialOrderKind kind = MonomialOrderKind::graded_lex;

  std::strong_ordering compare(const Monomial& a, const Monomial& b) const;
  bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }
};

std::strong_ordering grlex_compare(const Monomial& a, const Monomial& b);

struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return grlex_compare(a, b) < 0; }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

// All exponent vectors of total degree <= degree, grlex ascending.
std::vector<Monomial> monomials_up_to(std::size_t nvars, int degree);

// |N^n_d| = binom(n + d, d).
std::size_t count_monomials(std::size_t nvars, int degree);

}  // namespace gmpsos
