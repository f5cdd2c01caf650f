#include <doctest.h>

#include <random>

#include "gmpsos/groebner.hpp"
#include "support.hpp"

using namespace gmpsos;
using testing_support::poly;
using testing_support::sphere;

TEST_CASE("grlex comparisons") {
  CHECK(grlex_compare(Monomial{2, 0}, Monomial{1, 1}) > 0);
  CHECK(grlex_compare(Monomial{0, 1}, Monomial{2, 0}) < 0);
  CHECK(grlex_compare(Monomial{1, 1}, Monomial{1, 1}) == 0);
  CHECK_THROWS_AS((void)grlex_compare(Monomial{1}, Monomial{1, 0}), DimensionError);
}

TEST_CASE("grlex is a degree compatible total order") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> e(0, 3);
  auto draw = [&] { return Monomial{e(rng), e(rng), e(rng)}; };
  for (int k = 0; k < 1000; ++k) {
    const Monomial a = draw(), b = draw(), c = draw();
    const auto ab = grlex_compare(a, b), ba = grlex_compare(b, a);
    CHECK((ab < 0) == (ba > 0));
    CHECK((ab == 0) == (a == b));
    if (grlex_compare(a, b) < 0 && grlex_compare(b, c) < 0) CHECK(grlex_compare(a, c) < 0);
    if (a.degree() < b.degree()) CHECK(ab < 0);
    // Monomial order: compatible with multiplication.
    if (ab < 0) CHECK(grlex_compare(a * c, b * c) < 0);
  }
}

TEST_CASE("monomial enumeration is grlex ascending with binomial count") {
  const auto ms = monomials_up_to(3, 4);
  CHECK(ms.size() == count_monomials(3, 4));
  CHECK(ms.size() == 35);
  for (std::size_t i = 1; i < ms.size(); ++i) CHECK(grlex_compare(ms[i - 1], ms[i]) < 0);
  CHECK(monomials_up_to(2, 1) == std::vector<Monomial>{Monomial{0, 0}, Monomial{0, 1}, Monomial{1, 0}});
}

TEST_CASE("multiplication") {
  const auto x = Polynomial::variable(1, 0);
  const auto one = Polynomial::constant(1, 1);
  CHECK((one - x * x) * x == x - x * x * x);
  const auto p = poly(2, {{{2, 1}, 3}, {{0, 0}, Rational(-1, 2)}});
  CHECK(p * Polynomial::constant(2, 1) == p);
  const auto X = Polynomial::variable(2, 0), Y = Polynomial::variable(2, 1);
  CHECK((X + Y) * (X - Y) == X * X - Y * Y);
  CHECK((X - X).is_zero());
  CHECK((X - X).terms().empty());
  CHECK_THROWS_AS((void)(X * x), DimensionError);
}

TEST_CASE("leading term") {
  const auto s = sphere(2, 0, 2);
  const auto lt = leading_term(s);
  CHECK(lt.coefficient == -1);
  CHECK(lt.monomial == Monomial{2, 0});
  const auto c = leading_term(Polynomial::constant(2, 5));
  CHECK(c.coefficient == 5);
  CHECK(c.monomial == Monomial{0, 0});
  const auto q = poly(2, {{{1, 0}, 1}, {{0, 3}, 1}});
  CHECK(leading_term(q).monomial == Monomial{0, 3});
  CHECK_THROWS_AS((void)leading_term(Polynomial(2)), EmptyPolynomialError);
  CHECK_THROWS_AS((void)Polynomial(2).degree(), EmptyPolynomialError);
}

TEST_CASE("division examples") {
  const auto x = Polynomial::variable(1, 0);
  const auto g = Polynomial::constant(1, 1) - x * x;
  const auto r = multivariate_divide(x * x * x, {g});
  CHECK(r.quotients[0] == -x);
  CHECK(r.remainder == x);

  const auto s = sphere(2, 0, 2);
  CHECK(multivariate_divide(s, {s}).remainder.is_zero());

  const auto X = Polynomial::variable(2, 0);
  const auto r2 = multivariate_divide(X * X, {s});
  CHECK(r2.remainder == poly(2, {{{0, 0}, 1}, {{0, 2}, -1}}));
}

TEST_CASE("division identity, normal form and idempotence on random inputs") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 3;
    std::vector<Polynomial> G;
    const int ng = 1 + trial % 3;
    for (int k = 0; k < ng; ++k) {
      auto g = testing_support::random_polynomial(rng, n, 2, 3);
      if (!g.is_zero()) G.push_back(g);
    }
    if (G.empty()) continue;
    const auto p = testing_support::random_polynomial(rng, n, 4, 6);
    const auto res = multivariate_divide(p, G);
    Polynomial recon = res.remainder;
    for (std::size_t l = 0; l < G.size(); ++l) {
      recon += res.quotients[l] * G[l];
      if (!res.quotients[l].is_zero() && !p.is_zero())
        CHECK((res.quotients[l] * G[l]).degree() <= p.degree());
    }
    CHECK(recon == p);
    for (const auto& [m, c] : res.remainder.terms())
      for (const auto& g : G) CHECK_FALSE(leading_monomial(g).divides(m));
    CHECK(multivariate_divide(res.remainder, G).remainder == res.remainder);
  }
}

TEST_CASE("float-mode division identity") {
  std::mt19937 rng(5);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 50; ++trial) {
    RealPolynomial g(2), p(2);
    for (const auto& m : monomials_up_to(2, 1)) g.add_term(m, nd(rng));
    g.add_term(Monomial{2, 0}, 1.0);
    g.add_term(Monomial{1, 1}, nd(rng));
    for (const auto& m : monomials_up_to(2, 5)) p.add_term(m, nd(rng));
    const auto res = multivariate_divide(p, {g});
    const auto diff = p - res.quotients[0] * g - res.remainder;
    const double scale = 1 + max_abs_coefficient(p) + max_abs_coefficient(res.quotients[0]) * max_abs_coefficient(g);
    CHECK(max_abs_coefficient(diff) <= 1e-12 * scale);
  }
}

TEST_CASE("s-polynomials") {
  const std::size_t n = 4;
  const auto p1 = sphere(n, 0, 2), p2 = sphere(n, 2, 2);
  const auto s = s_polynomial(p1, p2);
  CHECK(multivariate_divide(s, {p1, p2}).remainder.is_zero());
  CHECK(s_polynomial(p1, p1).is_zero());

  const auto X = Polynomial::variable(2, 0), Y = Polynomial::variable(2, 1);
  CHECK(s_polynomial(X * X, X * Y).is_zero());
  CHECK_THROWS_AS((void)s_polynomial(X, Polynomial(2)), EmptyPolynomialError);
}

TEST_CASE("groebner verification") {
  for (std::size_t s = 1; s <= 4; ++s)
    for (std::size_t nl = 2; nl <= 4; ++nl) {
      const std::size_t n = s * nl;
      std::vector<Polynomial> G;
      for (std::size_t l = 0; l < s; ++l) G.push_back(sphere(n, l * nl, nl));
      CHECK(verify_groebner(G).is_groebner);
    }
  const auto X = Polynomial::variable(2, 0), Y = Polynomial::variable(2, 1);
  const auto bad = verify_groebner(std::vector<Polynomial>{X + Y, X - Y});
  CHECK_FALSE(bad.is_groebner);
  REQUIRE(bad.pair.has_value());
  CHECK(*bad.pair == std::pair<std::size_t, std::size_t>{0, 1});
  // Witness is a nonzero multiple of y.
  REQUIRE(bad.remainder.term_count() == 1);
  CHECK(leading_monomial(bad.remainder) == Monomial{0, 1});
  CHECK(verify_groebner(std::vector<Polynomial>{X * X + Y}).is_groebner);
}

TEST_CASE("text format round trip, grlex descending") {
  const auto p = poly(2, {{{0, 0}, 1}, {{2, 0}, -1}, {{1, 1}, Rational(3, 4)}});
  const auto text = to_text(p);
  CHECK(text == R"([[[2,0],"-1"],[[1,1],"3/4"],[[0,0],"1"]])");
  CHECK(parse_polynomial(text, 2) == p);
  CHECK(parse_polynomial(R"([[[1,0],0.25],[[0,1],"0.1"]])", 2) ==
        poly(2, {{{1, 0}, Rational(1, 4)}, {{0, 1}, Rational(1, 10)}}));
  CHECK_THROWS_AS((void)parse_polynomial(R"([[[1],1]])", 2), DimensionError);
  CHECK_THROWS_AS((void)parse_polynomial(R"([[[-1,0],1]])", 2), InputError);
  CHECK(to_pretty(p, {"x", "y"}) == "-x^2 + 3/4*x*y + 1");
}

TEST_CASE("evaluation and derivative") {
  const auto p = poly(2, {{{2, 1}, 3}, {{0, 0}, -2}});
  const std::vector<double> pt{2.0, -1.0};
  CHECK(evaluate(p, pt) == doctest::Approx(-14.0));
  CHECK(p.derivative(0) == poly(2, {{{1, 1}, 6}}));
}
