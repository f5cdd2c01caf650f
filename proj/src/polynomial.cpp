#include "gmpsos/polynomial.hpp"

#include <json.hpp>

#include <cctype>
#include <sstream>

namespace gmpsos {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  if (s.empty()) throw InputError("empty rational literal");
  try {
    if (s.find_first_of(".eE") != std::string::npos) {
      // Decimal literal, converted exactly: mantissa digits over a power of ten.
      std::size_t epos = s.find_first_of("eE");
      std::string mant = s.substr(0, epos);
      long exp10 = epos == std::string::npos ? 0 : std::stol(s.substr(epos + 1));
      bool neg = false;
      if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
        neg = mant[0] == '-';
        mant.erase(0, 1);
      }
      std::size_t dot = mant.find('.');
      std::string digits = mant;
      if (dot != std::string::npos) {
        exp10 -= static_cast<long>(mant.size() - dot - 1);
        digits.erase(dot, 1);
      }
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw InputError("malformed decimal literal '" + s + "'");
      mpz_class num(digits, 10);
      mpz_class scale;
      mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
      Rational q = exp10 < 0 ? Rational(num, scale) : Rational(num * scale);
      q.canonicalize();
      return neg ? Rational(-q) : q;
    }
    Rational q(s, 10);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw InputError("malformed rational literal '" + s + "'");
  }
}

std::string format_rational(const Rational& q) { return q.get_str(10); }

double PolynomialEvaluator::operator()(std::span<const double> x) const {
  if (x.size() != nvars_) throw DimensionError("evaluation point has wrong dimension");
  // powers[i][k] = x_i^k
  thread_local std::vector<double> powers;
  const std::size_t stride = static_cast<std::size_t>(max_deg_) + 1;
  powers.assign(nvars_ * stride, 1.0);
  for (std::size_t i = 0; i < nvars_; ++i)
    for (std::size_t k = 1; k < stride; ++k) powers[i * stride + k] = powers[i * stride + k - 1] * x[i];
  double sum = 0.0;
  for (std::size_t t = 0; t < coeffs_.size(); ++t) {
    double v = coeffs_[t];
    const auto& e = exps_[t];
    for (std::size_t i = 0; i < nvars_; ++i)
      if (e[i]) v *= powers[i * stride + static_cast<std::size_t>(e[i])];
    sum += v;
  }
  return sum;
}

Polynomial squared_norm(std::size_t nvars, std::size_t begin, std::size_t count) {
  if (begin + count > nvars) throw DimensionError("variable block exceeds variable count");
  Polynomial p(nvars);
  for (std::size_t i = begin; i < begin + count; ++i) {
    std::vector<int> e(nvars, 0);
    e[i] = 2;
    p.add_term(Monomial(std::move(e)), 1);
  }
  return p;
}

std::string to_text(const Polynomial& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
    arr.push_back(nlohmann::json::array({it->first.exponents(), format_rational(it->second)}));
  return arr.dump();
}

Polynomial parse_polynomial(std::string_view text, std::size_t nvars) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("polynomial text is not valid JSON: ") + e.what());
  }
  if (!j.is_array()) throw InputError("polynomial must be a list of [exponents, coefficient] pairs");
  Polynomial p(nvars);
  for (const auto& term : j) {
    if (!term.is_array() || term.size() != 2 || !term[0].is_array())
      throw InputError("polynomial term must be [exponents, coefficient]");
    std::vector<int> e;
    for (const auto& v : term[0]) {
      if (!v.is_number_integer()) throw InputError("exponents must be integers");
      e.push_back(v.get<int>());
    }
    if (e.size() != nvars)
      throw DimensionError("exponent vector of length " + std::to_string(e.size()) + ", expected " +
                           std::to_string(nvars));
    Rational c;
    if (term[1].is_string())
      c = parse_rational(term[1].get<std::string>());
    else if (term[1].is_number_integer())
      c = Rational(term[1].get<long>());
    else if (term[1].is_number())
      c = to_rational(term[1].get<double>());
    else
      throw InputError("coefficient must be a number or a rational string");
    try {
      p.add_term(Monomial(std::move(e)), c);
    } catch (const std::invalid_argument& ex) {
      throw InputError(ex.what());
    }
  }
  return p;
}

std::string to_pretty(const Polynomial& p, const std::vector<std::string>& names) {
  if (p.is_zero()) return "0";
  if (names.size() != p.nvars()) throw DimensionError("variable name list has wrong length");
  std::ostringstream os;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    Rational a = abs(c);
    if (first)
      os << (sgn(c) < 0 ? "-" : "");
    else
      os << (sgn(c) < 0 ? " - " : " + ");
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[i];
      if (m[i] > 1) mono += "^" + std::to_string(m[i]);
    }
    if (mono.empty())
      os << format_rational(a);
    else if (a == 1)
      os << mono;
    else
      os << format_rational(a) << "*" << mono;
  }
  return os.str();
}

}  // namespace gmpsos
