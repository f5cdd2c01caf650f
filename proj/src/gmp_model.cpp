#include "gmpsos/gmp_model.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "gmpsos/groebner.hpp"

namespace gmpsos {

std::string to_string(RealRadicalStatus s) {
  switch (s) {
    case RealRadicalStatus::trivial_ideal: return "automatic (no equalities)";
    case RealRadicalStatus::sphere_product: return "automatic (product of spheres)";
    case RealRadicalStatus::declared_unverified: return "declared, unverified";
    case RealRadicalStatus::not_declared: return "not declared";
  }
  return "unknown";
}

Polynomial ball_polynomial(std::size_t nvars, const Rational& R) {
  return Polynomial::constant(nvars, R) - squared_norm(nvars, 0, nvars);
}

std::vector<Polynomial> sphere_equations(std::size_t nvars, const std::vector<VariableBlock>& blocks) {
  std::vector<Polynomial> out;
  for (const auto& b : blocks)
    out.push_back(Polynomial::constant(nvars, 1) - squared_norm(nvars, b.begin, b.size));
  return out;
}

namespace {

bool blocks_partition(const std::vector<VariableBlock>& blocks, std::size_t nvars) {
  std::size_t next = 0;
  for (const auto& b : blocks) {
    if (b.begin != next || b.size == 0) return false;
    next += b.size;
  }
  return next == nvars;
}

bool has_ball_first(const GmpInstance& inst) {
  const auto& s = inst.support;
  return s.ball_radius && !s.inequalities.empty() &&
         s.inequalities.front() == ball_polynomial(inst.nvars(), *s.ball_radius);
}

}  // namespace

bool is_sphere_product(const GmpInstance& inst) {
  const auto& s = inst.support;
  if (s.equalities.empty() || !blocks_partition(s.blocks, inst.nvars())) return false;
  return s.equalities == sphere_equations(inst.nvars(), s.blocks);
}

RealRadicalStatus real_radical_status(const GmpInstance& inst) {
  if (inst.support.equalities.empty()) return RealRadicalStatus::trivial_ideal;
  if (is_sphere_product(inst)) return RealRadicalStatus::sphere_product;
  return inst.support.real_radical_declared ? RealRadicalStatus::declared_unverified
                                            : RealRadicalStatus::not_declared;
}

ValidationReport validate_instance(const GmpInstance& inst) {
  ValidationReport r;
  const std::size_t n = inst.nvars();
  auto fail = [&](std::string code, std::string msg, std::string hint) {
    r.errors.push_back({std::move(code), std::move(msg), std::move(hint)});
  };

  bool dims_ok = inst.objective.nvars() == n;
  for (const auto& c : inst.constraints) dims_ok = dims_ok && c.h.nvars() == n;
  for (const auto& p : inst.support.equalities) dims_ok = dims_ok && p.nvars() == n;
  for (const auto& g : inst.support.inequalities) dims_ok = dims_ok && g.nvars() == n;
  if (!dims_ok) {
    fail("dimension", "variable count mismatch between polynomials and the variable list",
         "give every exponent vector one entry per declared variable");
    return r;
  }
  if (n == 0) fail("dimension", "instance has no variables", "declare at least one variable");
  if (!inst.support.blocks.empty() && !blocks_partition(inst.support.blocks, n))
    fail("blocks", "variable blocks do not partition the variable list", "list consecutive blocks covering all variables");

  if (inst.constraints.empty() || inst.constraints.front().h != Polynomial::constant(n, 1))
    fail("h1", "h₁ ≡ 1 required as the first moment constraint", "prepend the mass constraint {h: 1, b: total mass}");
  if (!inst.constraints.empty() && !(inst.constraints.front().b > 0))
    fail("b1", "b₁ > 0 required", "the total mass b₁ must be positive");

  const bool spheres = is_sphere_product(inst);
  const auto& sup = inst.support;
  if (sup.ball_radius && sgn(*sup.ball_radius) <= 0)
    fail("ball", "ball radius R must be positive", "set ball_radius to a positive value");
  if (!spheres) {
    if (!has_ball_first(inst))
      fail("ball", "missing ball constraint", "add g₁ = R - |x|² (ball_radius) with X inside the ball");
    if (!sup.equalities.empty() && sup.inequalities.size() > 1)
      fail("shape", "with equality constraints the only inequality allowed is the ball",
           "describe X by equalities plus the redundant ball g₁ = R - |x|²");
  } else {
    r.notes.push_back("support is a product of " + std::to_string(sup.blocks.size()) + " spheres");
    if (sup.ball_radius) {
      // |x|^2 equals the number of blocks on the product.
      if (!(*sup.ball_radius > Rational(static_cast<long>(sup.blocks.size()))))
        fail("ball", "variety not inside the open ball", "choose R larger than the number of sphere blocks");
      else
        r.notes.push_back("ball constraint is redundant on a product of spheres");
    }
    for (const auto& b : sup.blocks)
      if (b.size < 2) r.notes.push_back("block " + b.name + " has dimension < 2 (zero-dimensional sphere)");
  }
  if (!sup.equalities.empty() && !spheres && has_ball_first(inst))
    r.notes.push_back("variety inside the ball: unverified for general equalities");

  if (!sup.equalities.empty()) {
    bool nonzero = std::none_of(sup.equalities.begin(), sup.equalities.end(), [](const auto& p) { return p.is_zero(); });
    if (!nonzero) {
      fail("equalities", "zero polynomial among the equalities", "drop identically zero equalities");
    } else {
      const auto check = verify_groebner(sup.equalities);
      r.groebner_verified = check.is_groebner;
      r.notes.push_back(check.is_groebner ? "equalities verified as a graded-lex Groebner basis"
                                          : "equalities are not a Groebner basis (S-polynomial of " +
                                                std::to_string(check.pair->first) + "," +
                                                std::to_string(check.pair->second) +
                                                " leaves " + to_text(check.remainder) + "); reduced mode unavailable");
    }
  } else {
    r.groebner_verified = true;
  }
  r.real_radical = real_radical_status(inst);
  r.notes.push_back("real radical: " + to_string(r.real_radical));
  r.notes.push_back("b in relint(K) is assumed, not certified");
  return r;
}

void require_valid(const GmpInstance& inst) {
  const auto r = validate_instance(inst);
  if (r.ok()) return;
  std::ostringstream os;
  os << "invalid instance";
  for (const auto& e : r.errors) os << "; " << e.message;
  throw ValidationError(os.str());
}

GmpInstance add_ball_constraint(const GmpInstance& inst, const Rational& R) {
  if (sgn(R) <= 0) throw std::invalid_argument("ball radius must be positive");
  if (has_ball_first(inst) || inst.support.ball_radius) throw ValidationError("ball constraint already present");
  if (is_sphere_product(inst)) throw ValidationError("a product of spheres needs no redundant ball constraint");
  GmpInstance out = inst;
  out.support.ball_radius = R;
  out.support.inequalities.insert(out.support.inequalities.begin(), ball_polynomial(inst.nvars(), R));
  return out;
}

int compute_tmin(const GmpInstance& inst) {
  auto half = [](const Polynomial& p) {
    const int d = p.degree_or_minus_one();
    return d <= 0 ? 0 : (d + 1) / 2;
  };
  int t = std::max(1, half(inst.objective));
  for (const auto& c : inst.constraints) t = std::max(t, half(c.h));
  for (const auto& p : inst.support.equalities) t = std::max(t, half(p));
  for (const auto& g : inst.support.inequalities) t = std::max(t, half(g));
  return t;
}

bool reduced_mode_eligible(const GmpInstance& inst) {
  if (real_radical_status(inst) == RealRadicalStatus::not_declared) return false;
  if (inst.support.equalities.empty()) return true;
  for (const auto& p : inst.support.equalities)
    if (p.is_zero()) return false;
  return verify_groebner(inst.support.equalities).is_groebner;
}

GmpInstance normalize_mass(const GmpInstance& inst) {
  if (inst.constraints.empty() || !(inst.constraints.front().b > 0))
    throw ValidationError("mass normalization needs b₁ > 0");
  GmpInstance out = inst;
  const double s = inst.constraints.front().b;
  for (auto& c : out.constraints) c.b /= s;
  out.mass_scale = inst.mass_scale * s;
  return out;
}

RealLayout real_layout(const ComplexGmpInstance& cinst) {
  const std::size_t n = cinst.nvars();
  std::vector<VariableBlock> blocks = cinst.blocks;
  if (blocks.empty()) blocks.push_back({"x", 0, n});
  if (!blocks_partition(blocks, n)) throw InputError("complex variable blocks do not partition the variables");
  RealLayout L;
  L.re.assign(n, 0);
  L.im.assign(n, 0);
  std::size_t next = 0;
  for (const auto& b : blocks) {
    L.blocks.push_back({b.name, next, 2 * b.size});
    for (std::size_t k = 0; k < b.size; ++k) {
      L.re[b.begin + k] = next++;
      L.names.push_back(cinst.variables[b.begin + k] + "_re");
    }
    for (std::size_t k = 0; k < b.size; ++k) {
      L.im[b.begin + k] = next++;
      L.names.push_back(cinst.variables[b.begin + k] + "_im");
    }
  }
  return L;
}

std::pair<Polynomial, Polynomial> realify(const GaussianPolynomial& p, const RealLayout& L) {
  const std::size_t n = L.re.size();
  const std::size_t N = 2 * n;
  if (p.nvars() != N) throw DimensionError("complex polynomial must have 2n exponents (x then conj x)");
  // powers[(i, conj)][k] = (x_re +- i x_im)^k
  std::map<std::tuple<std::size_t, bool, int>, GaussianPolynomial> cache;
  auto power = [&](std::size_t i, bool conj, int k) -> const GaussianPolynomial& {
    auto key = std::make_tuple(i, conj, k);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    GaussianPolynomial base(N);
    base.add_term(Monomial::unit(N, L.re[i]), GaussianRational(1));
    base.add_term(Monomial::unit(N, L.im[i]), GaussianRational(0, conj ? -1 : 1));
    return cache.emplace(key, base.pow(k)).first->second;
  };
  GaussianPolynomial acc(N);
  for (const auto& [m, c] : p.terms()) {
    GaussianPolynomial term = GaussianPolynomial::constant(N, c);
    for (std::size_t i = 0; i < n; ++i) {
      if (m[i]) term *= power(i, false, m[i]);
      if (m[n + i]) term *= power(i, true, m[n + i]);
    }
    acc += term;
  }
  Polynomial re(N), im(N);
  for (const auto& [m, c] : acc.terms()) {
    re.add_term(m, c.re);
    im.add_term(m, c.im);
  }
  return {re, im};
}

GmpInstance complexify_to_real(const ComplexGmpInstance& cinst, ComplexificationLog* log) {
  const auto L = real_layout(cinst);
  GmpInstance out;
  out.name = cinst.name;
  out.variables = L.names;
  const std::size_t N = L.names.size();
  auto [fre, fim] = realify(cinst.objective, L);
  if (!fim.is_zero()) throw ValidationError("objective is not Hermitian: imaginary part " + to_text(fim));
  out.objective = std::move(fre);
  for (const auto& c : cinst.constraints) {
    auto [hre, him] = realify(c.h, L);
    const std::string label = c.label.empty() ? "h" + std::to_string(out.constraints.size() + 1) : c.label;
    auto push = [&](Polynomial h, double b, const std::string& lab) {
      if (h.is_zero()) {
        if (std::abs(b) > 1e-12)
          throw InputError("constraint " + lab + " is identically zero but has target " + std::to_string(b));
        if (log) log->dropped.push_back(lab);
        return;
      }
      out.constraints.push_back({std::move(h), b, lab});
    };
    push(std::move(hre), c.b.real(), label + ".re");
    push(std::move(him), c.b.imag(), label + ".im");
  }
  out.support.blocks = L.blocks;
  out.support.equalities = sphere_equations(N, L.blocks);
  out.support.real_radical_declared = true;
  return out;
}

std::complex<double> evaluate_complex(const GaussianPolynomial& p, std::span<const std::complex<double>> x) {
  const std::size_t n = x.size();
  if (p.nvars() != 2 * n) throw DimensionError("complex evaluation point has wrong dimension");
  std::complex<double> sum = 0;
  for (const auto& [m, c] : p.terms()) {
    std::complex<double> v(c.re.get_d(), c.im.get_d());
    for (std::size_t i = 0; i < n; ++i) {
      if (m[i]) v *= std::pow(x[i], m[i]);
      if (m[n + i]) v *= std::pow(std::conj(x[i]), m[n + i]);
    }
    sum += v;
  }
  return sum;
}

}  // namespace gmpsos
