#include "gmpsos/quotient.hpp"

#include <map>
#include <sstream>

namespace gmpsos {

NotGroebnerError::NotGroebnerError(std::size_t i, std::size_t j, Polynomial rem)
    : ValidationError("equalities are not a Groebner basis: S-polynomial of generators " + std::to_string(i) +
                      " and " + std::to_string(j) + " leaves remainder " + to_text(rem)),
      pair(i, j),
      remainder(std::move(rem)) {}

int half_degree(const Polynomial& g) {
  const int d = g.degree_or_minus_one();
  return d <= 0 ? 0 : (d + 1) / 2;
}

QuotientBasis::QuotientBasis(std::vector<Polynomial> generators, std::size_t nvars, int level)
    : nvars_(nvars), level_(level), generators_(std::move(generators)) {
  if (level < 0) throw std::invalid_argument("quotient basis level must be nonnegative");
  for (const auto& g : generators_)
    if (g.nvars() != nvars_) throw DimensionError("generator has a different variable count");
  if (auto check = verify_groebner(generators_); !check)
    throw NotGroebnerError(check.pair->first, check.pair->second, check.remainder);

  std::vector<Monomial> leads;
  for (const auto& g : generators_) {
    leads.push_back(leading_monomial(g));
    if (leads.back().is_constant())
      throw ValidationError("empty variety: the ideal contains a nonzero constant");
  }

  const auto all = monomials_up_to(nvars_, level_);
  for (const auto& m : all) {
    bool standard = true;
    for (const auto& l : leads)
      if (l.divides(m)) {
        standard = false;
        break;
      }
    if (standard) {
      basis_index_.emplace(m, basis_.size());
      basis_.push_back(m);
    }
  }
  for (const auto& m : all) {
    SparseCoeffs c;
    if (auto it = basis_index_.find(m); it != basis_index_.end()) {
      c.emplace_back(it->second, Rational(1));
    } else {
      const auto rem = multivariate_divide(Polynomial::term(m, 1), generators_).remainder;
      for (const auto& [mm, cc] : rem.terms()) c.emplace_back(basis_index_.at(mm), cc);
    }
    cache_.emplace(m, std::move(c));
  }
}

std::size_t QuotientBasis::rank(int degree) const {
  if (degree > level_) throw DegreeError("rank requested above the basis level");
  std::size_t r = 0;
  while (r < basis_.size() && basis_[r].degree() <= degree) ++r;
  return r;
}

std::optional<std::size_t> QuotientBasis::index_of(const Monomial& m) const {
  auto it = basis_index_.find(m);
  if (it == basis_index_.end()) return std::nullopt;
  return it->second;
}

const SparseCoeffs& QuotientBasis::monomial_coeffs(const Monomial& alpha) const {
  auto it = cache_.find(alpha);
  if (it == cache_.end()) {
    if (alpha.size() != nvars_) throw DimensionError("monomial has a different variable count");
    throw DegreeError("monomial " + alpha.to_string() + " exceeds the quotient basis level " +
                      std::to_string(level_));
  }
  return it->second;
}

std::vector<Rational> QuotientBasis::normal_form_coeffs(const Polynomial& p) const {
  if (p.nvars() != nvars_) throw DimensionError("polynomial has a different variable count");
  std::vector<Rational> out(basis_.size());
  for (const auto& [m, c] : p.terms())
    for (const auto& [i, v] : monomial_coeffs(m)) out[i] += c * v;
  return out;
}

Eigen::VectorXd QuotientBasis::normal_form_values(const Polynomial& p) const {
  const auto c = normal_form_coeffs(p);
  Eigen::VectorXd v(static_cast<Eigen::Index>(c.size()));
  for (std::size_t i = 0; i < c.size(); ++i) v[static_cast<Eigen::Index>(i)] = c[i].get_d();
  return v;
}

Polynomial QuotientBasis::normal_form(const Polynomial& p) const {
  const auto c = normal_form_coeffs(p);
  Polynomial r(nvars_);
  for (std::size_t i = 0; i < c.size(); ++i) r.add_term(basis_[i], c[i]);
  return r;
}

Eigen::MatrixXd QuotientBasis::U(int degree) const {
  const std::size_t rows = rank(degree);
  const auto cols = monomials_up_to(nvars_, degree);
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t a = 0; a < cols.size(); ++a)
    for (const auto& [i, v] : monomial_coeffs(cols[a])) {
      // Degree compatibility keeps residues of low-degree monomials inside B_degree.
      u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a)) = v.get_d();
    }
  return u;
}

std::string QuotientBasis::dump() const {
  std::ostringstream os;
  os << "nvars " << nvars_ << "\nlevel " << level_ << "\nbasis " << basis_.size() << "\n";
  for (const auto& m : basis_) os << m.to_string() << "\n";
  const auto cols = monomials_up_to(nvars_, level_);
  os << "U " << basis_.size() << " " << cols.size() << "\n";
  std::vector<std::vector<Rational>> rows(basis_.size(), std::vector<Rational>(cols.size()));
  for (std::size_t a = 0; a < cols.size(); ++a)
    for (const auto& [i, v] : monomial_coeffs(cols[a])) rows[i][a] = v;
  for (const auto& row : rows) {
    for (std::size_t a = 0; a < row.size(); ++a) os << (a ? " " : "") << format_rational(row[a]);
    os << "\n";
  }
  return os.str();
}

QuotientBasis standard_monomial_basis(const std::vector<Polynomial>& G, std::size_t nvars, int level) {
  return QuotientBasis(G, nvars, level);
}

std::vector<Rational> normal_form_coeffs(const Polynomial& p, const QuotientBasis& qb) {
  return qb.normal_form_coeffs(p);
}

Eigen::MatrixXd build_U(const QuotientBasis& qb, int degree) { return qb.U(degree); }

Eigen::VectorXd extend_sequence(const Eigen::VectorXd& zhat, const Eigen::MatrixXd& U) {
  if (zhat.size() != U.rows())
    throw DimensionError("reduced sequence of length " + std::to_string(zhat.size()) + " against U with " +
                         std::to_string(U.rows()) + " rows");
  return U.transpose() * zhat;
}

double reduced_riesz(const Polynomial& p, const Eigen::VectorXd& zhat, const QuotientBasis& qb) {
  if (zhat.size() != static_cast<Eigen::Index>(qb.basis().size()))
    throw DimensionError("reduced sequence length does not match the basis");
  return qb.normal_form_values(p).dot(zhat);
}

std::vector<PatternEntry> reduced_localizing_pattern(const Polynomial& g, const QuotientBasis& qb, int t,
                                                     std::size_t* size) {
  if (g.nvars() != qb.nvars()) throw DimensionError("localizer has a different variable count");
  if (2 * t > qb.level()) throw DegreeError("quotient basis level is below 2t");
  const int shift = t - half_degree(g);
  if (shift < 0) throw DegreeError("localizer degree exceeds 2t");
  const std::size_t r = qb.rank(shift);
  if (size) *size = r;
  const auto& B = qb.basis();
  std::vector<PatternEntry> out;
  std::map<std::size_t, Rational> acc;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i; j < r; ++j) {
      acc.clear();
      const Monomial qij = B[i] * B[j];
      for (const auto& [gamma, gc] : g.terms())
        for (const auto& [e, v] : qb.monomial_coeffs(qij * gamma)) acc[e] += gc * v;
      for (const auto& [e, v] : acc)
        if (sgn(v) != 0) out.push_back({i, j, e, v.get_d()});
    }
  return out;
}

namespace {

Eigen::MatrixXd assemble(const std::vector<PatternEntry>& pattern, std::size_t n, const Eigen::VectorXd& zhat) {
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (const auto& p : pattern) {
    const auto i = static_cast<Eigen::Index>(p.row);
    const auto j = static_cast<Eigen::Index>(p.col);
    M(i, j) += p.value * zhat[static_cast<Eigen::Index>(p.var)];
    if (i != j) M(j, i) = M(i, j);
  }
  return M;
}

}  // namespace

Eigen::MatrixXd reduced_localizing_matrix(const Polynomial& g, const Eigen::VectorXd& zhat, const QuotientBasis& qb,
                                          int t) {
  if (zhat.size() < static_cast<Eigen::Index>(qb.rank(2 * t)) ||
      zhat.size() > static_cast<Eigen::Index>(qb.basis().size()))
    throw DimensionError("reduced sequence length is not between r_{2t} and the basis size");
  std::size_t n = 0;
  const auto pattern = reduced_localizing_pattern(g, qb, t, &n);
  Eigen::VectorXd z = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(qb.basis().size()));
  z.head(zhat.size()) = zhat;
  return assemble(pattern, n, z);
}

Eigen::MatrixXd reduced_moment_matrix(const Eigen::VectorXd& zhat, const QuotientBasis& qb, int t) {
  return reduced_localizing_matrix(Polynomial::constant(qb.nvars(), 1), zhat, qb, t);
}

}  // namespace gmpsos
