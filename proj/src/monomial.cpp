#include "gmpsos/monomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "gmpsos/errors.hpp"

namespace gmpsos {

namespace {

void require_same_size(const Monomial& a, const Monomial& b) {
  if (a.size() != b.size())
    throw DimensionError("monomials have " + std::to_string(a.size()) + " and " +
                         std::to_string(b.size()) + " variables");
}

}  // namespace

Monomial::Monomial(std::vector<int> exponents) : exps_(std::move(exponents)) {
  for (int e : exps_)
    if (e < 0) throw std::invalid_argument("negative exponent in monomial");
  degree_ = std::accumulate(exps_.begin(), exps_.end(), 0);
}

Monomial Monomial::unit(std::size_t nvars, std::size_t var) {
  if (var >= nvars) throw DimensionError("variable index out of range");
  std::vector<int> e(nvars, 0);
  e[var] = 1;
  return Monomial(std::move(e));
}

bool Monomial::divides(const Monomial& other) const {
  require_same_size(*this, other);
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

bool Monomial::coprime(const Monomial& other) const {
  require_same_size(*this, other);
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > 0 && other.exps_[i] > 0) return false;
  return true;
}

Monomial Monomial::lcm(const Monomial& other) const {
  require_same_size(*this, other);
  std::vector<int> e(exps_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::max(exps_[i], other.exps_[i]);
  return Monomial(std::move(e));
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  require_same_size(a, b);
  Monomial r = a;
  for (std::size_t i = 0; i < r.exps_.size(); ++i) r.exps_[i] += b.exps_[i];
  r.degree_ += b.degree_;
  return r;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  if (!b.divides(a)) throw std::invalid_argument("monomial division is not exact");
  Monomial r = a;
  for (std::size_t i = 0; i < r.exps_.size(); ++i) r.exps_[i] -= b.exps_[i];
  r.degree_ -= b.degree_;
  return r;
}

std::string Monomial::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < exps_.size(); ++i) os << (i ? "," : "") << exps_[i];
  os << ')';
  return os.str();
}

std::strong_ordering grlex_compare(const Monomial& a, const Monomial& b) {
  require_same_size(a, b);
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (auto c = a[i] <=> b[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

std::strong_ordering MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  return grlex_compare(a, b);
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (int e : m.exponents()) h = (h ^ static_cast<std::size_t>(e)) * 1099511628211ull;
  return h;
}

std::size_t count_monomials(std::size_t nvars, int degree) {
  if (degree < 0) return 0;
  // binom(n + d, d) computed incrementally; exact at every step.
  std::size_t r = 1;
  for (int k = 1; k <= degree; ++k) r = r * (nvars + static_cast<std::size_t>(k)) / static_cast<std::size_t>(k);
  return r;
}

namespace {

void compositions(std::size_t nvars, int total, std::size_t pos, std::vector<int>& cur,
                  std::vector<Monomial>& out) {
  if (pos + 1 == nvars) {
    cur[pos] = total;
    out.emplace_back(cur);
    return;
  }
  for (int e = total; e >= 0; --e) {
    cur[pos] = e;
    compositions(nvars, total - e, pos + 1, cur, out);
  }
  cur[pos] = 0;
}

}  // namespace

std::vector<Monomial> monomials_up_to(std::size_t nvars, int degree) {
  std::vector<Monomial> out;
  if (nvars == 0) {
    out.emplace_back(std::vector<int>{});
    return out;
  }
  out.reserve(count_monomials(nvars, degree));
  std::vector<int> cur(nvars, 0);
  for (int d = 0; d <= degree; ++d) {
    // Lex-descending within a degree; reversed to ascending below.
    std::vector<Monomial> layer;
    compositions(nvars, d, 0, cur, layer);
    out.insert(out.end(), layer.rbegin(), layer.rend());
  }
  return out;
}

}  // namespace gmpsos
