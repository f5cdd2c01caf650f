#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gmpsos/polynomial.hpp"

namespace gmpsos {

struct VariableBlock {
  std::string name;
  std::size_t begin = 0;
  std::size_t size = 0;
};

// Axis-aligned box containing X; used for Lebesgue base measures and grid proxies.
struct Box {
  std::vector<double> lower;
  std::vector<double> upper;
};

struct SupportSet {
  std::vector<Polynomial> equalities;    // p_1..p_s
  std::vector<Polynomial> inequalities;  // g_1..g_l; g_1 = R - |x|^2 when ball_radius is set
  std::optional<Rational> ball_radius;   // R in g_1 = R - |x|^2
  bool real_radical_declared = false;
  std::vector<VariableBlock> blocks;
};

struct MomentConstraint {
  Polynomial h;
  double b = 0.0;
  std::string label;
};

struct GmpInstance {
  std::string name;
  std::vector<std::string> variables;
  Polynomial objective;
  std::vector<MomentConstraint> constraints;
  SupportSet support;
  std::optional<Box> box;
  // Targets were divided by this factor; objective values are multiplied back on output.
  double mass_scale = 1.0;

  std::size_t nvars() const { return variables.size(); }
};

enum class RealRadicalStatus { trivial_ideal, sphere_product, declared_unverified, not_declared };
std::string to_string(RealRadicalStatus s);

struct ValidationIssue {
  std::string code;
  std::string message;
  std::string hint;
};

struct ValidationReport {
  std::vector<ValidationIssue> errors;
  std::vector<std::string> notes;
  bool groebner_verified = false;
  RealRadicalStatus real_radical = RealRadicalStatus::not_declared;

  bool ok() const { return errors.empty(); }
};

ValidationReport validate_instance(const GmpInstance& inst);

// Throws ValidationError listing every failed check.
void require_valid(const GmpInstance& inst);

bool is_sphere_product(const GmpInstance& inst);
std::vector<Polynomial> sphere_equations(std::size_t nvars, const std::vector<VariableBlock>& blocks);
Polynomial ball_polynomial(std::size_t nvars, const Rational& R);

GmpInstance add_ball_constraint(const GmpInstance& inst, const Rational& R);
int compute_tmin(const GmpInstance& inst);
RealRadicalStatus real_radical_status(const GmpInstance& inst);
// Reduced mode applies when equalities are a verified Groebner basis of a real radical ideal.
bool reduced_mode_eligible(const GmpInstance& inst);

// b -> b / b_1 with mass_scale = b_1.
GmpInstance normalize_mass(const GmpInstance& inst);

// Polynomials in x and conj(x): exponent vectors of length 2n, x part first.
struct ComplexMomentConstraint {
  GaussianPolynomial h;
  std::complex<double> b;
  std::string label;
};

struct ComplexGmpInstance {
  std::string name;
  std::vector<std::string> variables;  // n complex variables
  std::vector<VariableBlock> blocks;   // each block lies on a complex unit sphere
  GaussianPolynomial objective;
  std::vector<ComplexMomentConstraint> constraints;

  std::size_t nvars() const { return variables.size(); }
};

// Real variable index of Re/Im of complex variable i: each complex block contributes
// its real parts followed by its imaginary parts.
struct RealLayout {
  std::vector<std::size_t> re;
  std::vector<std::size_t> im;
  std::vector<std::string> names;
  std::vector<VariableBlock> blocks;
};
RealLayout real_layout(const ComplexGmpInstance& cinst);

struct ComplexificationLog {
  std::vector<std::string> dropped;  // labels of identically zero real constraints
};

GmpInstance complexify_to_real(const ComplexGmpInstance& cinst, ComplexificationLog* log = nullptr);

// Real and imaginary parts of p after x = x_re + i x_im, as polynomials in the real layout.
std::pair<Polynomial, Polynomial> realify(const GaussianPolynomial& p, const RealLayout& layout);

std::complex<double> evaluate_complex(const GaussianPolynomial& p, std::span<const std::complex<double>> x);

}  // namespace gmpsos
