#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "gmpsos/polynomial.hpp"

namespace gmpsos {

template <class Coeff>
struct LeadingTerm {
  Coeff coefficient;
  Monomial monomial;
};

template <class Coeff>
LeadingTerm<Coeff> leading_term(const BasicPolynomial<Coeff>& p, const MonomialOrder& = {}) {
  if (p.is_zero()) throw EmptyPolynomialError("leading term of the zero polynomial");
  const auto& [m, c] = *p.terms().rbegin();
  return {c, m};
}

template <class Coeff>
const Monomial& leading_monomial(const BasicPolynomial<Coeff>& p) {
  if (p.is_zero()) throw EmptyPolynomialError("leading monomial of the zero polynomial");
  return p.terms().rbegin()->first;
}

template <class Coeff>
struct DivisionResult {
  std::vector<BasicPolynomial<Coeff>> quotients;
  BasicPolynomial<Coeff> remainder;
};

// p = sum_l quotients[l] * G[l] + remainder, no remainder monomial divisible by any LM(G[l]).
template <class Coeff>
DivisionResult<Coeff> multivariate_divide(const BasicPolynomial<Coeff>& p,
                                          const std::vector<BasicPolynomial<Coeff>>& G,
                                          const MonomialOrder& = {}) {
  std::vector<LeadingTerm<Coeff>> leads;
  leads.reserve(G.size());
  for (const auto& g : G) {
    if (g.nvars() != p.nvars()) throw DimensionError("divisor has a different variable count");
    leads.push_back(leading_term(g));
  }
  DivisionResult<Coeff> out{std::vector<BasicPolynomial<Coeff>>(G.size(), BasicPolynomial<Coeff>(p.nvars())),
                            BasicPolynomial<Coeff>(p.nvars())};
  BasicPolynomial<Coeff> work = p;
  while (!work.is_zero()) {
    const auto [m, c] = *work.terms().rbegin();
    std::size_t l = 0;
    while (l < G.size() && !leads[l].monomial.divides(m)) ++l;
    if (l == G.size()) {
      out.remainder.add_term(m, c);
      work.erase_term(m);
      continue;
    }
    const Coeff factor = c / leads[l].coefficient;
    const Monomial shift = m / leads[l].monomial;
    out.quotients[l].add_term(shift, factor);
    work -= G[l].times_term(shift, factor);
    // Exact cancellation already happened for rationals; floats may leave a residue here.
    work.erase_term(m);
  }
  return out;
}

template <class Coeff>
BasicPolynomial<Coeff> s_polynomial(const BasicPolynomial<Coeff>& p, const BasicPolynomial<Coeff>& q,
                                    const MonomialOrder& = {}) {
  const auto lp = leading_term(p);
  const auto lq = leading_term(q);
  const Monomial l = lp.monomial.lcm(lq.monomial);
  BasicPolynomial<Coeff> s = p.times_term(l / lp.monomial, Coeff(1) / lp.coefficient);
  s -= q.times_term(l / lq.monomial, Coeff(1) / lq.coefficient);
  s.erase_term(l);
  return s;
}

template <class Coeff>
struct GroebnerCheck {
  bool is_groebner = true;
  // On failure: indices of the offending pair and the nonzero reduced S-polynomial.
  std::optional<std::pair<std::size_t, std::size_t>> pair;
  BasicPolynomial<Coeff> remainder;

  explicit operator bool() const { return is_groebner; }
};

// Buchberger criterion; pairs with coprime leading monomials are skipped.
template <class Coeff>
GroebnerCheck<Coeff> verify_groebner(const std::vector<BasicPolynomial<Coeff>>& G, const MonomialOrder& = {}) {
  GroebnerCheck<Coeff> out;
  for (const auto& g : G)
    if (g.is_zero()) throw EmptyPolynomialError("Groebner candidate contains the zero polynomial");
  for (std::size_t i = 0; i < G.size(); ++i) {
    for (std::size_t j = i + 1; j < G.size(); ++j) {
      if (leading_monomial(G[i]).coprime(leading_monomial(G[j]))) continue;
      auto rem = multivariate_divide(s_polynomial(G[i], G[j]), G).remainder;
      if (!rem.is_zero()) {
        out.is_groebner = false;
        out.pair = std::make_pair(i, j);
        out.remainder = std::move(rem);
        return out;
      }
    }
  }
  return out;
}

}  // namespace gmpsos
