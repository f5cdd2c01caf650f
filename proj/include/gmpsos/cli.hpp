#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gmpsos/applications.hpp"
#include "gmpsos/sdp.hpp"

namespace gmpsos {

enum ExitCode : int {
  exit_ok = 0,
  exit_usage = 1,
  exit_validation = 2,
  exit_solver = 3,
  exit_diverging = 4,
};

struct RunConfig {
  std::string command;              // validate solve reduce witness diagnose examples tensor quantum
  std::string subcommand;           // rank1 | decompose, wasserstein | dps
  std::vector<std::string> inputs;
  std::optional<int> level;         // default t_min
  std::string mode = "auto";        // auto | full | reduced
  SolverOptions solver;
  std::vector<double> schedule{1e-2, 1e-4, 1e-6};
  std::string out;                  // structured JSON report
  bool expect_attained = false;
  unsigned psi_seed = 0;
  bool below_tmin = false;          // keep a level below t_min instead of raising it
};

// Human report on `out`, warnings and errors on `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Plain-text readers. Tensors: order, dims, then the row-major entries. States: n, then n*n (re, im) pairs.
// '#' starts a comment.
GeneralTensor read_tensor(std::istream& in);
HermitianState read_state(std::istream& in, bool require_state);

}  // namespace gmpsos
