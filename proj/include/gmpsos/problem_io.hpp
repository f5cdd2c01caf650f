#pragma once

#include <json.hpp>

#include <filesystem>
#include <string>

#include "gmpsos/gmp_model.hpp"

namespace gmpsos {

// Problem files are JSON; see README for the schema. Complex files are converted to real form.
GmpInstance parse_problem(const nlohmann::json& j, ComplexificationLog* log = nullptr);
GmpInstance load_problem(const std::filesystem::path& path, ComplexificationLog* log = nullptr);
ComplexGmpInstance parse_complex_problem(const nlohmann::json& j);

nlohmann::json to_json(const GmpInstance& inst);
nlohmann::json polynomial_to_json(const Polynomial& p);
Polynomial polynomial_from_json(const nlohmann::json& j, std::size_t nvars);

// FNV-1a over the canonical JSON dump, as 16 hex digits.
std::string instance_hash(const GmpInstance& inst);

}  // namespace gmpsos
