#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gmaos/config.hpp"
#include "gmaos/problem.hpp"
#include "gmaos/stepsize.hpp"

namespace gmaos {

enum class RunStatus { kConverged, kMaxIter, kMaxNf, kLinesearchFailure, kDiverged };

std::string_view to_string(RunStatus status);
std::optional<RunStatus> parse_status(std::string_view text);

inline constexpr std::string_view kGmAosCr = "gm_aos_cr";
inline constexpr std::string_view kBb = "bb";

/// One accepted iteration x_k -> x_{k+1}, with the predicates that chose it.
struct TraceEntry {
  std::int64_t k = 0;
  double f = 0.0;  // f_k
  double C = 0.0;  // C_k
  double Q = 1.0;  // Q_k
  double gnorm_inf = 0.0;
  double gnorm2 = 0.0;  // ||g_k||^2
  double alpha_proposed = 0.0;  // clamped proposal entering the line search
  double alpha = 0.0;           // accepted stepsize
  StepBranch branch = StepBranch::kInitial;
  double sigma = 0.0;       // sigma_k used for the proposal (after retries)
  double sigma_next = 0.0;  // sigma_{k+1}
  double rho = 0.0;
  // Dispatch predicates; meaningless for k = 0.
  double mu = std::numeric_limits<double>::infinity();
  std::optional<double> mu_prev;
  double sty = 0.0;
  double grad_ratio = 0.0;
  bool near_quadratic = false;
  double fd_curvature = std::numeric_limits<double>::quiet_NaN();
  double f_next = 0.0;  // f_{k+1}
  int backtracks = 0;
  int retries = 0;
};

struct RunRecord {
  std::string problem_name;
  std::size_t n = 0;
  std::string solver_name;
  RunStatus status = RunStatus::kMaxIter;
  std::int64_t iters = 0;
  std::int64_t nf = 0;
  std::int64_t ng = 0;
  double wall_time_seconds = 0.0;
  double cpu_time_seconds = 0.0;
  double final_f = 0.0;
  double final_gnorm_inf = 0.0;
  std::vector<TraceEntry> trace;
};

/// Initial trial stepsize at k = 0 from the scale of x0, f0 and g0.
double initial_stepsize(std::span<const double> x0, double f0, std::span<const double> g0);

/// Gradient method with approximately optimal stepsizes from cubic and
/// quadratic models (GM_AOS(CR)) under the Zhang-Hager line search.
RunRecord solve(const Problem& problem, const SolverConfig& config);

/// Barzilai-Borwein baseline (BB1 stepsize, upsilon * alpha_prev when
/// s^T y <= 0) under the same line search.
RunRecord solve_bb(const Problem& problem, const SolverConfig& config);

/// Dispatches on solver name ("gm_aos_cr" or "bb"). Throws
/// std::invalid_argument for other names.
RunRecord run_solver(std::string_view solver_name, const Problem& problem,
                     const SolverConfig& config);

}  // namespace gmaos
