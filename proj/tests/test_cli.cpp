#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gmpsos/cli.hpp"
#include "gmpsos/errors.hpp"

using namespace gmpsos;

namespace {

const std::string kDir = GMPSOS_PROBLEMS_DIR;

struct Outcome {
  int code;
  std::string out, err;
};

Outcome invoke(RunConfig cfg) {
  std::ostringstream out, err;
  const int code = run(cfg, out, err);
  return {code, out.str(), err.str()};
}

RunConfig config(std::string command, std::vector<std::string> files, std::string sub = {}) {
  RunConfig c;
  c.command = std::move(command);
  c.subcommand = std::move(sub);
  for (auto& f : files) c.inputs.push_back(kDir + "/" + f);
  return c;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("gmpsos_cli_" + name)).string();
}

}  // namespace

TEST_CASE("validate reports and exit codes") {
  const auto ok = invoke(config("validate", {"quadratic_slack.json"}));
  CHECK(ok.code == exit_ok);
  CHECK(ok.out.find("t_min     2") != std::string::npos);

  // A sphere equation that does not match its declared block fails validation.
  const auto path = temp_path("bad.json");
  std::ofstream(path) << R"({"variables": {"names": ["x", "y"]}, "objective": [[[1, 0], 1]],
    "constraints": [{"h": [[[0, 0], 1]], "b": 1}],
    "support": {"equalities": [[[[1, 0], 1], [[0, 1], 1]], [[[1, 0], 1], [[0, 1], -1]]], "real_radical": true}})";
  RunConfig c = config("validate", {});
  c.inputs = {path};
  CHECK(invoke(c).code == exit_validation);

  std::ofstream(path) << "{ not json";
  const auto broken = invoke(c);
  CHECK(broken.code == exit_validation);
  CHECK(broken.err.find("not valid JSON") != std::string::npos);

  CHECK(invoke(config("frobnicate", {})).code == exit_usage);
  CHECK(invoke(config("solve", {})).code == exit_usage);
  CHECK(invoke(config("tensor", {"tensor_2x2x2.txt"}, "rank7")).code == exit_usage);
}

TEST_CASE("solve: level handling and the degree-2 variant") {
  auto c = config("solve", {"quadratic_slack.json"});
  c.level = 1;
  const auto raised = invoke(c);
  CHECK(raised.code == exit_ok);
  CHECK(raised.err.find("raised to t_min = 2") != std::string::npos);
  CHECK(raised.out.find("level     2") != std::string::npos);

  c.below_tmin = true;
  c.out = temp_path("variant.json");
  const auto variant = invoke(c);
  CHECK(variant.code == exit_ok);
  std::ifstream in(c.out);
  const auto rep = nlohmann::json::parse(in);
  CHECK(rep.at("level") == 1);
  CHECK(rep.at("certificate").at("value").get<double>() == doctest::Approx(-0.25).epsilon(1e-6));
  CHECK(rep.at("certificate").at("verified").get<bool>());
  CHECK(rep.at("certificate").at("residual").get<double>() <= 1e-8);
  CHECK(rep.at("instance").at("hash").get<std::string>().size() == 16);
  CHECK(rep.at("options").at("tol").get<double>() == 1e-8);
}

TEST_CASE("reports are byte-identical across runs") {
  auto c = config("witness", {"box_mean.json"});
  c.level = 3;
  c.out = temp_path("w1.json");
  const auto a = invoke(c);
  std::ifstream f1(c.out);
  const std::string j1((std::istreambuf_iterator<char>(f1)), {});
  const auto b = invoke(c);
  std::ifstream f2(c.out);
  const std::string j2((std::istreambuf_iterator<char>(f2)), {});
  CHECK(a.code == exit_ok);
  CHECK(a.out == b.out);
  CHECK(j1 == j2);
  CHECK(a.out.find("mode full") != std::string::npos);
}

TEST_CASE("diagnose with --expect-attained") {
  auto c = config("diagnose", {"pinned_min.json"});
  CHECK(invoke(c).code == exit_ok);
  c.expect_attained = true;
  CHECK(invoke(c).code == exit_diverging);
  auto b = config("diagnose", {"box_mean.json"});
  b.level = 3;
  b.expect_attained = true;
  CHECK(invoke(b).code == exit_ok);
  c.schedule = {1e-2, 1e-4};
  CHECK(invoke(c).code == exit_usage);
}

TEST_CASE("witness failure is a solver failure") {
  const auto r = invoke(config("witness", {"pinned_min.json"}));
  CHECK(r.code == exit_solver);
  CHECK(r.out.find("relint") != std::string::npos);
}

TEST_CASE("tensor and quantum commands") {
  auto r1 = config("tensor", {"tensor_2x2x2.txt"}, "rank1");
  r1.out = temp_path("rank1.json");
  REQUIRE(invoke(r1).code == exit_ok);
  std::ifstream in(r1.out);
  const auto rep = nlohmann::json::parse(in);
  CHECK(rep.at("rank_one").at("identity_error").get<double>() <= 1e-10);
  CHECK(std::abs(rep.at("rank_one").at("local_value").get<double>() -
                 rep.at("rank_one").at("relaxation_value").get<double>()) <= 1e-6);

  CHECK(invoke(config("tensor", {"sym_identity.txt"}, "decompose")).code == exit_ok);
  CHECK(invoke(config("quantum", {"state_e1.txt", "state_e2.txt"}, "wasserstein")).code == exit_ok);
  const auto bell = invoke(config("quantum", {"rho_bell.txt"}, "dps"));
  CHECK(bell.code == exit_ok);
  CHECK(bell.out.find("excluded: the state is not separable") != std::string::npos);
  CHECK(invoke(config("quantum", {"rho_bell.txt"}, "wasserstein")).code == exit_usage);
}

TEST_CASE("text readers") {
  std::istringstream t("# comment\n2 2 3\n1 2 3\n4 5 6\n");
  const auto A = read_tensor(t);
  CHECK(A.dims() == std::vector<std::size_t>{2, 3});
  CHECK(A.at({1, 2}) == 6.0);
  std::istringstream short_t("2 2 2\n1 2 3\n");
  CHECK_THROWS_AS(read_tensor(short_t), InputError);
  std::istringstream junk("2 2 x\n");
  CHECK_THROWS_AS(read_tensor(junk), InputError);

  std::istringstream s("2\n0.5 0 0 0.5\n0 -0.5 0.5 0\n");
  const auto st = read_state(s, true);
  CHECK(st.rho(0, 1) == std::complex<double>(0, 0.5));
  std::istringstream nonherm("2\n1 0 1 0\n0 0 0 0\n");
  CHECK_THROWS(read_state(nonherm, true));
}
