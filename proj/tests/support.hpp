#pragma once

#include <random>
#include <utility>
#include <vector>

#include "gmpsos/polynomial.hpp"

namespace testing_support {

using gmpsos::Monomial;
using gmpsos::Polynomial;
using gmpsos::Rational;

struct T {
  std::vector<int> e;
  Rational c;
};

inline Polynomial poly(std::size_t nvars, std::initializer_list<T> terms) {
  Polynomial p(nvars);
  for (const auto& t : terms) p.add_term(Monomial(t.e), t.c);
  return p;
}

inline Polynomial sphere(std::size_t nvars, std::size_t begin, std::size_t count) {
  return Polynomial::constant(nvars, 1) - gmpsos::squared_norm(nvars, begin, count);
}

inline Polynomial random_polynomial(std::mt19937& rng, std::size_t nvars, int degree, int terms) {
  std::uniform_int_distribution<int> coef(-5, 5);
  std::uniform_int_distribution<int> den(1, 4);
  auto all = gmpsos::monomials_up_to(nvars, degree);
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  Polynomial p(nvars);
  for (int k = 0; k < terms; ++k) p.add_term(all[pick(rng)], Rational(coef(rng), den(rng)));
  return p;
}

}  // namespace testing_support
