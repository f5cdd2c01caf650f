#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>

#include "gmpsos/applications.hpp"
#include "gmpsos/errors.hpp"

namespace gmpsos {

GeneralTensor::GeneralTensor(std::vector<std::size_t> dims, std::vector<double> data)
    : dims_(std::move(dims)), data_(std::move(data)) {
  if (dims_.empty()) throw DimensionError("tensor order must be at least 1");
  std::size_t total = 1;
  for (std::size_t d : dims_) {
    if (d == 0) throw DimensionError("tensor dimensions must be positive");
    total *= d;
  }
  if (data_.size() != total)
    throw DimensionError("tensor needs " + std::to_string(total) + " components, got " + std::to_string(data_.size()));
}

GeneralTensor GeneralTensor::zeros(std::vector<std::size_t> dims) {
  std::size_t total = 1;
  for (std::size_t d : dims) total *= d;
  return GeneralTensor(std::move(dims), std::vector<double>(total, 0.0));
}

std::size_t GeneralTensor::flat(const std::vector<std::size_t>& idx) const {
  if (idx.size() != dims_.size()) throw DimensionError("index has wrong order");
  std::size_t f = 0;
  for (std::size_t l = 0; l < dims_.size(); ++l) {
    if (idx[l] >= dims_[l]) throw std::out_of_range("tensor index out of range");
    f = f * dims_[l] + idx[l];
  }
  return f;
}

double& GeneralTensor::at(const std::vector<std::size_t>& idx) { return data_[flat(idx)]; }
double GeneralTensor::at(const std::vector<std::size_t>& idx) const { return data_[flat(idx)]; }

double GeneralTensor::norm_squared() const {
  return std::inner_product(data_.begin(), data_.end(), data_.begin(), 0.0);
}

Eigen::VectorXd GeneralTensor::contract_except(const std::vector<Eigen::VectorXd>& u, std::size_t mode) const {
  if (u.size() != dims_.size()) throw DimensionError("one vector per mode required");
  for (std::size_t l = 0; l < dims_.size(); ++l)
    if (static_cast<std::size_t>(u[l].size()) != dims_[l] && l != mode)
      throw DimensionError("factor length does not match the tensor dimension");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dims_[mode]));
  std::vector<std::size_t> idx(dims_.size(), 0);
  for (std::size_t f = 0; f < data_.size(); ++f) {
    double w = data_[f];
    for (std::size_t l = 0; l < dims_.size() && w != 0.0; ++l)
      if (l != mode) w *= u[l][static_cast<Eigen::Index>(idx[l])];
    out[static_cast<Eigen::Index>(idx[mode])] += w;
    for (std::size_t l = dims_.size(); l-- > 0;) {
      if (++idx[l] < dims_[l]) break;
      idx[l] = 0;
    }
  }
  return out;
}

double GeneralTensor::evaluate(const std::vector<Eigen::VectorXd>& u) const {
  return contract_except(u, 0).dot(u[0]);
}

SymmetricTensor::SymmetricTensor(std::size_t order, std::size_t dim, std::vector<double> data)
    : order_(order), dim_(dim), table_(std::vector<std::size_t>(order, dim), std::move(data)) {
  std::vector<std::size_t> idx(order, 0), sorted;
  for (std::size_t f = 0; f < table_.data().size(); ++f) {
    sorted = idx;
    std::sort(sorted.begin(), sorted.end());
    const double a = table_.data()[f], b = table_.at(sorted);
    if (std::abs(a - b) > 1e-12 * (1.0 + std::abs(b))) throw InputError("tensor is not symmetric");
    for (std::size_t l = order; l-- > 0;) {
      if (++idx[l] < dim) break;
      idx[l] = 0;
    }
  }
}

SymmetricTensor SymmetricTensor::from_vector_power(const Eigen::VectorXd& v, std::size_t order) {
  const auto n = static_cast<std::size_t>(v.size());
  auto t = GeneralTensor::zeros(std::vector<std::size_t>(order, n));
  std::vector<std::size_t> idx(order, 0);
  std::vector<double> data(t.data().size());
  for (auto& x : data) {
    x = 1.0;
    for (std::size_t i : idx) x *= v[static_cast<Eigen::Index>(i)];
    for (std::size_t l = order; l-- > 0;) {
      if (++idx[l] < n) break;
      idx[l] = 0;
    }
  }
  return SymmetricTensor(order, n, std::move(data));
}

double SymmetricTensor::at_multiplicities(const std::vector<int>& counts) const {
  if (counts.size() != dim_) throw DimensionError("one multiplicity per index value required");
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < dim_; ++i)
    for (int c = 0; c < counts[i]; ++c) idx.push_back(i);
  if (idx.size() != order_) throw DimensionError("multiplicities must sum to the order");
  return table_.at(idx);
}

namespace {

template <class F>
void for_each_index(const std::vector<std::size_t>& dims, F f) {
  std::vector<std::size_t> idx(dims.size(), 0);
  std::size_t total = 1;
  for (std::size_t d : dims) total *= d;
  for (std::size_t k = 0; k < total; ++k) {
    f(idx, k);
    for (std::size_t l = dims.size(); l-- > 0;) {
      if (++idx[l] < dims[l]) break;
      idx[l] = 0;
    }
  }
}

Rational multinomial(int a, const std::vector<int>& alpha) {
  mpz_class num, den = 1, f;
  mpz_fac_ui(num.get_mpz_t(), static_cast<unsigned long>(a));
  int rest = a;
  for (int e : alpha) {
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(e));
    den *= f;
    rest -= e;
  }
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(rest));
  den *= f;
  return Rational(num, den);
}

std::vector<VariableBlock> tensor_blocks(const std::vector<std::size_t>& dims, std::vector<std::string>& names) {
  std::vector<VariableBlock> blocks;
  std::size_t begin = 0;
  for (std::size_t l = 0; l < dims.size(); ++l) {
    blocks.push_back({"u" + std::to_string(l + 1), begin, dims[l]});
    for (std::size_t i = 0; i < dims[l]; ++i) names.push_back("u" + std::to_string(l + 1) + "_" + std::to_string(i + 1));
    begin += dims[l];
  }
  return blocks;
}

GmpInstance sphere_instance(std::string name, std::vector<std::string> names, std::vector<VariableBlock> blocks,
                            Polynomial objective) {
  GmpInstance inst;
  inst.name = std::move(name);
  inst.variables = std::move(names);
  const std::size_t n = inst.variables.size();
  inst.objective = std::move(objective);
  inst.constraints.push_back({Polynomial::constant(n, 1), 1.0, "mass"});
  inst.support.equalities = sphere_equations(n, blocks);
  inst.support.blocks = std::move(blocks);
  inst.support.real_radical_declared = true;
  inst.box = Box{std::vector<double>(n, -1.0), std::vector<double>(n, 1.0)};
  return inst;
}

}  // namespace

Polynomial tensor_polynomial(const GeneralTensor& A) {
  std::vector<std::size_t> offset;
  std::size_t n = 0;
  for (std::size_t d : A.dims()) {
    offset.push_back(n);
    n += d;
  }
  Polynomial p(n);
  for_each_index(A.dims(), [&](const std::vector<std::size_t>& idx, std::size_t k) {
    if (A.data()[k] == 0.0) return;
    std::vector<int> e(n, 0);
    for (std::size_t l = 0; l < idx.size(); ++l) ++e[offset[l] + idx[l]];
    p.add_term(Monomial(e), to_rational(A.data()[k]));
  });
  return p;
}

Polynomial tensor_polynomial(const SymmetricTensor& A) {
  Polynomial p(A.dim());
  for_each_index(A.table().dims(), [&](const std::vector<std::size_t>& idx, std::size_t k) {
    if (A.table().data()[k] == 0.0) return;
    std::vector<int> e(A.dim(), 0);
    for (std::size_t i : idx) ++e[i];
    p.add_term(Monomial(e), to_rational(A.table().data()[k]));
  });
  return p;
}

GmpInstance rank_one_gmp(const GeneralTensor& A) {
  for (std::size_t d : A.dims())
    if (d < 2) throw InputError("every tensor dimension must be at least 2");
  std::vector<std::string> names;
  auto blocks = tensor_blocks(A.dims(), names);
  return sphere_instance("rank1", std::move(names), std::move(blocks), tensor_polynomial(A));
}

GmpInstance rank_one_gmp(const SymmetricTensor& A) {
  if (A.dim() < 2) throw InputError("tensor dimension must be at least 2");
  std::vector<std::string> names;
  auto blocks = tensor_blocks({A.dim()}, names);
  return sphere_instance("rank1-sym", std::move(names), std::move(blocks), tensor_polynomial(A));
}

RankOneApproximation recover_rank_one(const GeneralTensor& A, const std::vector<Eigen::VectorXd>& minimizer) {
  if (minimizer.size() != A.order()) throw DimensionError("one factor per mode required");
  for (std::size_t l = 0; l < minimizer.size(); ++l) {
    if (static_cast<std::size_t>(minimizer[l].size()) != A.dims()[l]) throw DimensionError("factor length mismatch");
    if (std::abs(minimizer[l].norm() - 1.0) > 1e-8) throw InputError("factor " + std::to_string(l + 1) + " is not a unit vector");
  }
  RankOneApproximation r;
  r.factors = minimizer;
  r.q = A.evaluate(minimizer);
  double err = 0.0;
  for_each_index(A.dims(), [&](const std::vector<std::size_t>& idx, std::size_t k) {
    double rank_one = r.q;
    for (std::size_t l = 0; l < idx.size(); ++l) rank_one *= minimizer[l][static_cast<Eigen::Index>(idx[l])];
    const double d = A.data()[k] - rank_one;
    err += d * d;
  });
  r.error_squared = err;
  r.identity_error = std::abs(A.norm_squared() - r.q * r.q - err);
  return r;
}

GridSearchResult grid_minimum(const GeneralTensor& A, double step_degrees) {
  for (std::size_t d : A.dims())
    if (d != 2) throw InputError("grid search supports 2 x ... x 2 tensors");
  if (!(step_degrees > 0)) throw std::invalid_argument("grid step must be positive");
  const int N = static_cast<int>(std::lround(360.0 / step_degrees));
  std::vector<double> c(N), s(N);
  for (int k = 0; k < N; ++k) {
    const double th = 2.0 * M_PI * k / N;
    c[k] = std::cos(th);
    s[k] = std::sin(th);
  }
  const std::size_t a = A.order();
  GridSearchResult best;
  best.value = INFINITY;
  std::vector<int> arg(a, 0), cur(a, 0);
  // Contract mode by mode; level l holds the partially contracted table of size 2^(a-l).
  std::vector<std::vector<double>> level(a + 1);
  level[0] = A.data();
  std::function<void(std::size_t)> rec = [&](std::size_t l) {
    if (l == a) {
      if (level[a][0] < best.value) {
        best.value = level[a][0];
        arg = cur;
      }
      return;
    }
    const auto& in = level[l];
    auto& out = level[l + 1];
    const std::size_t half = in.size() / 2;
    out.resize(half);
    for (int k = 0; k < N; ++k) {
      cur[l] = k;
      for (std::size_t i = 0; i < half; ++i) out[i] = c[k] * in[i] + s[k] * in[half + i];
      rec(l + 1);
    }
  };
  rec(0);
  for (std::size_t l = 0; l < a; ++l) best.point.push_back(Eigen::Vector2d(c[arg[l]], s[arg[l]]));
  return best;
}

GridSearchResult refine_minimum(const GeneralTensor& A, std::vector<Eigen::VectorXd> start, int iterations) {
  GridSearchResult r;
  r.point = std::move(start);
  r.value = A.evaluate(r.point);
  for (int it = 0; it < iterations; ++it) {
    const double before = r.value;
    for (std::size_t l = 0; l < A.order(); ++l) {
      const Eigen::VectorXd v = A.contract_except(r.point, l);
      if (v.norm() == 0.0) continue;
      r.point[l] = -v / v.norm();
    }
    r.value = A.evaluate(r.point);
    if (before - r.value <= 1e-15 * (1.0 + std::abs(r.value))) break;
  }
  return r;
}

double apolar_product(const Polynomial& f, const Polynomial& g, int a) {
  if (f.nvars() != g.nvars()) throw DimensionError("apolar product of polynomials in different variables");
  if (f.degree_or_minus_one() > a || g.degree_or_minus_one() > a) throw DegreeError("degree exceeds a");
  Rational s = 0;
  for (const auto& [m, c] : f.terms()) {
    const Rational gc = g.coefficient(m);
    if (sgn(gc) != 0) s += c * gc / multinomial(a, m.exponents());
  }
  return s.get_d();
}

Polynomial default_psi(std::size_t nvars, int a, unsigned seed) {
  const int k = a / 2 + 1;
  Polynomial psi = (Polynomial::constant(nvars, 1) + squared_norm(nvars, 0, nvars)).pow(k);
  if (seed != 0) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> coef(-4, 4);
    const auto basis = monomials_up_to(nvars, k);
    for (int j = 0; j < 3; ++j) {
      Polynomial l(nvars);
      for (const auto& m : basis) l.add_term(m, Rational(coef(rng), 8));
      psi = psi + l * l * Rational(1, 10);
    }
  }
  return psi;
}

Polynomial dehomogenize(const SymmetricTensor& A) {
  if (A.dim() < 2) throw InputError("dehomogenization needs dimension at least 2");
  const std::size_t n = A.dim() - 1;
  const int a = static_cast<int>(A.order());
  Polynomial p(n);
  for (const auto& m : monomials_up_to(n, a)) {
    std::vector<int> counts = m.exponents();
    counts.push_back(a - m.degree());
    const double v = A.at_multiplicities(counts);
    if (v != 0.0) p.add_term(m, multinomial(a, m.exponents()) * to_rational(v));
  }
  return p;
}

GmpInstance tensor_decomposition_gmp(const SymmetricTensor& A, const Polynomial& psi) {
  if (A.dim() < 2) throw InputError("tensor dimension must be at least 2");
  const std::size_t n = A.dim() - 1;
  const int a = static_cast<int>(A.order());
  if (psi.nvars() != n) throw DimensionError("Psi must be a polynomial in dim - 1 variables");
  std::vector<int> last(A.dim(), 0);
  last.back() = a;
  const double scale = A.at_multiplicities(last);
  if (scale == 0.0) throw InputError("the normalizing entry A_{n+1...n+1} is zero");
  const Polynomial at = dehomogenize(A);
  GmpInstance inst;
  inst.name = "tensor-decomposition";
  for (std::size_t i = 0; i < n; ++i) inst.variables.push_back("x" + std::to_string(i + 1));
  inst.objective = psi;
  for (const auto& m : monomials_up_to(n, a)) {
    const Polynomial xm = Polynomial::term(m, Rational(1));
    inst.constraints.push_back({xm, apolar_product(at, xm, a) / scale, m.degree() == 0 ? "mass" : "x" + m.to_string()});
  }
  inst.box = Box{std::vector<double>(n, -1.0), std::vector<double>(n, 1.0)};
  return add_ball_constraint(inst, Rational(1));
}

}  // namespace gmpsos
