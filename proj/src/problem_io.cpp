#include "gmpsos/problem_io.hpp"

#include <cstdio>
#include <fstream>

namespace gmpsos {

using nlohmann::json;

namespace {

Rational rational_from_json(const json& v, const char* what) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_number()) return to_rational(v.get<double>());
  throw InputError(std::string(what) + " must be a number or a rational string");
}

double real_from_json(const json& v, const char* what) { return rational_from_json(v, what).get_d(); }

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::vector<int> exponents_from_json(const json& e, std::size_t nvars) {
  if (!e.is_array()) throw InputError("exponent vector must be a list");
  std::vector<int> out;
  for (const auto& v : e) {
    if (!v.is_number_integer() || v.get<long>() < 0) throw InputError("exponents must be nonnegative integers");
    out.push_back(v.get<int>());
  }
  if (out.size() != nvars)
    throw InputError("exponent vector of length " + std::to_string(out.size()) + ", expected " +
                     std::to_string(nvars));
  return out;
}

GaussianPolynomial complex_polynomial_from_json(const json& j, std::size_t nvars) {
  if (!j.is_array()) throw InputError("polynomial must be a list of [exponents, coefficient] pairs");
  GaussianPolynomial p(nvars);
  for (const auto& term : j) {
    if (!term.is_array() || term.size() != 2) throw InputError("polynomial term must be [exponents, coefficient]");
    const auto e = exponents_from_json(term[0], nvars);
    GaussianRational c;
    if (term[1].is_array()) {
      if (term[1].size() != 2) throw InputError("complex coefficient must be [re, im]");
      c = GaussianRational(rational_from_json(term[1][0], "coefficient"), rational_from_json(term[1][1], "coefficient"));
    } else {
      c = GaussianRational(rational_from_json(term[1], "coefficient"));
    }
    p.add_term(Monomial(e), c);
  }
  return p;
}

std::vector<VariableBlock> blocks_from_json(const json& vars, std::size_t n) {
  std::vector<VariableBlock> blocks;
  if (!vars.contains("blocks") || vars.at("blocks").empty()) return blocks;
  std::size_t next = 0;
  for (const auto& b : vars.at("blocks")) {
    VariableBlock vb;
    vb.name = b.value("name", "block" + std::to_string(blocks.size() + 1));
    vb.begin = next;
    vb.size = require(b, "size").get<std::size_t>();
    next += vb.size;
    blocks.push_back(vb);
  }
  if (next != n) throw InputError("variable blocks cover " + std::to_string(next) + " of " + std::to_string(n) + " variables");
  return blocks;
}

std::vector<std::string> names_from_json(const json& vars) {
  const auto& names = require(vars, "names");
  if (!names.is_array() || names.empty()) throw InputError("variables.names must be a nonempty list");
  return names.get<std::vector<std::string>>();
}

void check_version(const json& j) {
  if (j.contains("version") && j.at("version") != 1) throw InputError("unsupported problem file version");
}

}  // namespace

Polynomial polynomial_from_json(const json& j, std::size_t nvars) {
  if (!j.is_array()) throw InputError("polynomial must be a list of [exponents, coefficient] pairs");
  Polynomial p(nvars);
  for (const auto& term : j) {
    if (!term.is_array() || term.size() != 2) throw InputError("polynomial term must be [exponents, coefficient]");
    p.add_term(Monomial(exponents_from_json(term[0], nvars)), rational_from_json(term[1], "coefficient"));
  }
  return p;
}

json polynomial_to_json(const Polynomial& p) {
  json arr = json::array();
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
    arr.push_back(json::array({it->first.exponents(), format_rational(it->second)}));
  return arr;
}

ComplexGmpInstance parse_complex_problem(const json& j) {
  check_version(j);
  ComplexGmpInstance c;
  c.name = j.value("name", "");
  const auto& vars = require(j, "variables");
  c.variables = names_from_json(vars);
  const std::size_t n = c.variables.size();
  c.blocks = blocks_from_json(vars, n);
  if (c.blocks.empty()) c.blocks.push_back({"x", 0, n});
  c.objective = complex_polynomial_from_json(require(j, "objective"), 2 * n);
  for (const auto& con : require(j, "constraints")) {
    ComplexMomentConstraint mc;
    mc.h = complex_polynomial_from_json(require(con, "h"), 2 * n);
    const auto& b = require(con, "b");
    if (b.is_array()) {
      if (b.size() != 2) throw InputError("complex target must be [re, im]");
      mc.b = {real_from_json(b[0], "target"), real_from_json(b[1], "target")};
    } else {
      mc.b = {real_from_json(b, "target"), 0.0};
    }
    mc.label = con.value("label", "");
    c.constraints.push_back(std::move(mc));
  }
  return c;
}

GmpInstance parse_problem(const json& j, ComplexificationLog* log) {
  try {
    if (j.value("complex", false)) return complexify_to_real(parse_complex_problem(j), log);
    check_version(j);
    GmpInstance inst;
    inst.name = j.value("name", "");
    const auto& vars = require(j, "variables");
    inst.variables = names_from_json(vars);
    const std::size_t n = inst.variables.size();
    inst.support.blocks = blocks_from_json(vars, n);
    inst.objective = polynomial_from_json(require(j, "objective"), n);
    for (const auto& con : require(j, "constraints")) {
      MomentConstraint mc;
      mc.h = polynomial_from_json(require(con, "h"), n);
      mc.b = real_from_json(require(con, "b"), "target");
      mc.label = con.value("label", "h" + std::to_string(inst.constraints.size() + 1));
      inst.constraints.push_back(std::move(mc));
    }
    if (j.contains("support")) {
      const auto& s = j.at("support");
      if (s.value("sphere_product", false)) {
        if (inst.support.blocks.empty()) inst.support.blocks.push_back({"x", 0, n});
        inst.support.equalities = sphere_equations(n, inst.support.blocks);
      }
      if (s.contains("equalities"))
        for (const auto& p : s.at("equalities")) inst.support.equalities.push_back(polynomial_from_json(p, n));
      if (s.contains("inequalities"))
        for (const auto& g : s.at("inequalities")) inst.support.inequalities.push_back(polynomial_from_json(g, n));
      if (s.contains("ball_radius") && !s.at("ball_radius").is_null()) {
        const Rational R = rational_from_json(s.at("ball_radius"), "ball_radius");
        inst.support.ball_radius = R;
        inst.support.inequalities.insert(inst.support.inequalities.begin(), ball_polynomial(n, R));
      }
      inst.support.real_radical_declared = s.value("real_radical", false);
    }
    if (j.contains("box")) {
      Box box;
      box.lower = require(j.at("box"), "lower").get<std::vector<double>>();
      box.upper = require(j.at("box"), "upper").get<std::vector<double>>();
      if (box.lower.size() != n || box.upper.size() != n) throw InputError("box bounds need one entry per variable");
      for (std::size_t i = 0; i < n; ++i)
        if (!(box.lower[i] < box.upper[i])) throw InputError("box lower bound must be below the upper bound");
      inst.box = std::move(box);
    }
    return inst;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed problem file: ") + e.what());
  } catch (const DimensionError& e) {
    throw InputError(e.what());
  }
}

GmpInstance load_problem(const std::filesystem::path& path, ComplexificationLog* log) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open problem file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("problem file " + path.string() + " is not valid JSON: " + e.what());
  }
  auto inst = parse_problem(j, log);
  if (inst.name.empty()) inst.name = path.stem().string();
  return inst;
}

json to_json(const GmpInstance& inst) {
  json j;
  j["version"] = 1;
  j["name"] = inst.name;
  j["variables"]["names"] = inst.variables;
  json blocks = json::array();
  for (const auto& b : inst.support.blocks) blocks.push_back({{"name", b.name}, {"size", b.size}});
  j["variables"]["blocks"] = blocks;
  j["objective"] = polynomial_to_json(inst.objective);
  json cons = json::array();
  for (const auto& c : inst.constraints)
    cons.push_back({{"h", polynomial_to_json(c.h)}, {"b", format_rational(Rational(c.b))}, {"label", c.label}});
  j["constraints"] = cons;
  json eqs = json::array(), ineqs = json::array();
  for (const auto& p : inst.support.equalities) eqs.push_back(polynomial_to_json(p));
  // The ball is serialized through ball_radius, not as an explicit inequality.
  const std::size_t skip = inst.support.ball_radius ? 1 : 0;
  for (std::size_t k = skip; k < inst.support.inequalities.size(); ++k)
    ineqs.push_back(polynomial_to_json(inst.support.inequalities[k]));
  j["support"]["equalities"] = eqs;
  j["support"]["inequalities"] = ineqs;
  j["support"]["ball_radius"] = inst.support.ball_radius ? json(format_rational(*inst.support.ball_radius)) : json(nullptr);
  j["support"]["real_radical"] = inst.support.real_radical_declared;
  if (inst.box) j["box"] = {{"lower", inst.box->lower}, {"upper", inst.box->upper}};
  return j;
}

std::string instance_hash(const GmpInstance& inst) {
  const std::string s = to_json(inst).dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ull;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace gmpsos
