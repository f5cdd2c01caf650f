#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace gmpsos {

using Rational = mpq_class;

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double v) { return v; }

// Exact conversion: every finite double is a dyadic rational.
inline Rational to_rational(double v) { return Rational(v); }
inline Rational to_rational(const Rational& q) { return q; }

// Accepts "3", "-1/4" or a decimal literal such as "0.125" (converted exactly).
Rational parse_rational(std::string_view text);

std::string format_rational(const Rational& q);

inline bool coefficient_is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool coefficient_is_zero(double v) { return v == 0.0; }

// Coefficient ring for polynomials in x and conj(x): a + b*i with rational parts.
struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() = default;
  GaussianRational(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}
  GaussianRational(int r) : re(r), im(0) {}

  GaussianRational conj() const { return {re, -im}; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

inline bool coefficient_is_zero(const GaussianRational& c) {
  return sgn(c.re) == 0 && sgn(c.im) == 0;
}

}  // namespace gmpsos
