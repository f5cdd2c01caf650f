#pragma once

#include <string>
#include <vector>

#include "gmpsos/relaxation.hpp"
#include "gmpsos/sdp.hpp"

namespace gmpsos {

// Dual of `base` restricted to eps-optimal points, minimizing max |lambda_r| over `bounded_rows`.
// Solving it in moment form yields the multipliers of the restricted dual.
SdpProblem min_norm_dual_problem(const SdpProblem& base, const std::vector<std::size_t>& bounded_rows,
                                 double reference_value, double eps);

struct AttainmentPoint {
  double gap = 0.0;           // relative eps
  double lambda_norm = 0.0;   // max |lambda_i| of the cheapest eps-optimal dual point
  SolveStatus status = SolveStatus::optimal;
  bool usable = false;        // optimal, or residuals small relative to the iterate size
};

// Non-converged solves still give a usable norm when the iterate is this accurate relative to its size.
inline constexpr double kUsableResidual = 1e-4;

struct AttainmentDiagnosis {
  std::vector<double> schedule;
  std::vector<AttainmentPoint> points;
  double reference_value = 0.0;  // P used to define eps-optimality
  double slope = 0.0;            // fitted d log|lambda| / d(-log gap)
  std::string verdict;           // bounded | diverging | inconclusive
  bool partial = false;          // some solve failed
  std::string note;
};

inline constexpr double kDivergingSlope = 0.4;
inline constexpr double kBoundedRatio = 1.1;
// Norms below this count as zero (an attained multiplier at the origin).
inline constexpr double kNormFloor = 1e-6;
// Box on the multipliers of the grid reference solve.
inline constexpr double kProxyBox = 1e7;

// Verdict from recorded points; exposed for tests.
void classify(AttainmentDiagnosis& d);

AttainmentDiagnosis attainment_diagnostic(const Relaxation& rel, const std::vector<double>& schedule,
                                          const SolverOptions& opts = {});
AttainmentDiagnosis attainment_diagnostic(const GmpInstance& inst, int t, const std::vector<double>& schedule,
                                          const SolverOptions& opts = {});

// Infinite-dual proxy: support replaced by a grid, so the dual becomes an LP over atom weights.
struct GridOptions {
  int uniform_points = 2001;  // per axis when n = 1
  int points_per_axis = 41;   // n > 1
  int geometric_levels = 48;  // nodes lower + 10^{-k/4}(upper - lower) and mirrored, k = 1..levels
};
std::vector<std::vector<double>> support_grid(const GmpInstance& inst, const GridOptions& opts = {});

AttainmentDiagnosis infinite_dual_proxy(const GmpInstance& inst, const std::vector<double>& schedule,
                                        const SolverOptions& opts = {}, const GridOptions& grid = {});

}  // namespace gmpsos
