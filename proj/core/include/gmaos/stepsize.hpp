#pragma once

#include <limits>
#include <optional>
#include <span>
#include <string_view>

#include "gmaos/config.hpp"
#include "gmaos/problem.hpp"
#include "gmaos/vec.hpp"

namespace gmaos {

// Which formula produced a trial stepsize. kBb1/kBbFallback are used only by
// the Barzilai-Borwein baseline.
enum class StepBranch {
  kInitial,
  kAos1,
  kAos2a,
  kAos2b,
  kAos3,
  kAos4a,
  kAos4b,
  kAos4c,
  kBb1,
  kBbFallback,
};

std::string_view to_string(StepBranch branch);

struct StepProposal {
  double alpha = 0.0;
  StepBranch branch = StepBranch::kInitial;
};

/// Data carried from the previously accepted step.
struct PairMemory {
  Vector s;       // x_k - x_{k-1}
  Vector y;       // g_k - g_{k-1}
  Vector g_prev;  // g_{k-1}
  double f_prev = 0.0;
  double alpha_prev = 1.0;
  double mu = std::numeric_limits<double>::infinity();  // mu_k, cached on acceptance
  std::optional<double> mu_prev;                        // mu_{k-1}; absent at k = 1
};

/// Scalars of the modified BFGS matrix B_k needed along -g_k. B_k itself is
/// never formed.
struct CurvatureInfo {
  double sty = 0.0;         // s^T y
  double rbar = 0.0;        // clamped rbar_k
  double ybar_dot_g = 0.0;  // g^T ybar
  double s_dot_ybar = 0.0;  // s^T ybar = s^T y + rbar
  double gBg = 0.0;         // g^T B_k g
};

double bb1(std::span<const double> s, std::span<const double> y);
double bb2(std::span<const double> s, std::span<const double> y);

/// Quadratic-closeness measure |2 (f_prev - f_cur + g^T s) / (s^T y) - 1|.
/// Returns +inf when s^T y == 0.
double mu(double f_prev, double f_cur, std::span<const double> g_cur, std::span<const double> s,
          std::span<const double> y);

bool near_quadratic(double mu_k, std::optional<double> mu_prev, double c1, double c2);

/// rbar = 3 (g + g_prev)^T s + 6 (f_prev - f_cur), clamped to
/// [-eta_bar1 * sty, eta_bar1 * sty].
double rbar(double f_prev, double f_cur, std::span<const double> g_prev,
            std::span<const double> g_cur, std::span<const double> s, double sty, double eta_bar1);

/// g^T B g for B = D - D s s^T D / (s^T D s) + ybar ybar^T / (s^T ybar) with
/// D = xi1 (y^T y / s^T y) I and ybar = y + (rbar / ||s||^2) s.
CurvatureInfo quad_form_B(std::span<const double> g, std::span<const double> s,
                          std::span<const double> y, double rbar, double xi1);

/// Positive root of sigma ||g||^3 a^2 + gBg a - ||g||^2 = 0, the minimizer of
/// the cubic model along -g.
double aos1_unclamped(double gnorm2, double gnorm, double gBg, double sigma);

StepProposal aos1(double gnorm2, double gnorm, double gBg, double sigma, double bb1,
                  double bb2);

/// Non-positive curvature, cubic model with the Hessian action estimated by a
/// forward difference of the gradient along -g.
StepProposal aos2_fd(std::span<const double> g, std::span<const double> g_shifted, double tau,
                     double sigma);

/// Non-positive curvature, cubic model with the curvature estimated from the
/// previous step.
StepProposal aos2_prev(double gnorm2, double gnorm, double abs_sty, double alpha_prev,
                       double sigma);

StepProposal aos3(double gnorm2, const CurvatureInfo& curvature, double bb1, double bb2);

/// Non-positive curvature while the objective looks quadratic. `g_shifted`
/// may be empty when the forward-difference gradient is unavailable.
StepProposal aos4(std::span<const double> g, std::span<const double> g_shifted, double tau,
                  std::span<const double> s, std::span<const double> y, double alpha_prev,
                  double ratio, double xi3, double upsilon);

/// Forward-difference step for the gradient shift x - tau g.
double fd_tau(std::span<const double> x, std::span<const double> g);

/// Predicates that drive the dispatch, kept for trace replay.
struct DispatchFacts {
  double mu = std::numeric_limits<double>::infinity();
  std::optional<double> mu_prev;
  double sty = 0.0;
  double grad_ratio = 0.0;  // ||g_{k-1}||^2 / ||g_k||^2
  bool near_quadratic = false;
};

DispatchFacts classify(const PairMemory& memory, std::span<const double> g,
                       const SolverConfig& config);

/// Per-iteration cache for g(x - tau g) so that sigma retries do not pay for
/// the extra gradient twice. Call reset() whenever x changes.
struct StepScratch {
  Vector x_shifted;
  Vector g_shifted;
  double tau = 0.0;
  bool evaluated = false;
  bool finite = false;
  // |g^T (g(x - tau g) - g)|, NaN when not evaluated or not finite.
  double fd_curvature = std::numeric_limits<double>::quiet_NaN();

  void reset() {
    evaluated = false;
    finite = false;
    fd_curvature = std::numeric_limits<double>::quiet_NaN();
  }
};

struct StepInput {
  std::span<const double> x;
  double f = 0.0;
  std::span<const double> g;
  double sigma = 0.0;
};

/// Selects and clamps the trial stepsize for iteration k >= 1. Costs at most
/// one extra gradient evaluation (branches AOS2a and AOS4a), cached in
/// `scratch`.
StepProposal choose_stepsize(const StepInput& input, const PairMemory& memory,
                             const SolverConfig& config, const Problem& problem,
                             EvalCounters& counters, StepScratch& scratch);

/// The branch choose_stepsize takes for the given predicates. `fd_curvature`
/// is NaN when the shifted gradient was unavailable.
StepBranch expected_branch(const DispatchFacts& facts, double fd_curvature,
                           const SolverConfig& config);

}  // namespace gmaos
