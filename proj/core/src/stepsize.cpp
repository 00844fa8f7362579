#include "gmaos/stepsize.hpp"

#include <algorithm>
#include <cmath>

namespace gmaos {

std::string_view to_string(StepBranch branch) {
  switch (branch) {
    case StepBranch::kInitial: return "INITIAL";
    case StepBranch::kAos1: return "AOS1";
    case StepBranch::kAos2a: return "AOS2a";
    case StepBranch::kAos2b: return "AOS2b";
    case StepBranch::kAos3: return "AOS3";
    case StepBranch::kAos4a: return "AOS4a";
    case StepBranch::kAos4b: return "AOS4b";
    case StepBranch::kAos4c: return "AOS4c";
    case StepBranch::kBb1: return "BB1";
    case StepBranch::kBbFallback: return "BB_FALLBACK";
  }
  return "?";
}

double bb1(std::span<const double> s, std::span<const double> y) {
  return norm2_squared(s) / dot(s, y);
}

double bb2(std::span<const double> s, std::span<const double> y) {
  // Capped at bb1 so that rounding cannot invert the interval when s and y
  // are parallel.
  const double sty = dot(s, y);
  return std::min(sty / norm2_squared(y), norm2_squared(s) / sty);
}

double mu(double f_prev, double f_cur, std::span<const double> g_cur, std::span<const double> s,
          std::span<const double> y) {
  const double sty = dot(s, y);
  if (sty == 0.0) return std::numeric_limits<double>::infinity();
  return std::abs(2.0 * (f_prev - f_cur + dot(g_cur, s)) / sty - 1.0);
}

bool near_quadratic(double mu_k, std::optional<double> mu_prev, double c1, double c2) {
  if (mu_k <= c1) return true;
  return mu_prev.has_value() && std::max(mu_k, *mu_prev) <= c2;
}

double rbar(double f_prev, double f_cur, std::span<const double> g_prev,
            std::span<const double> g_cur, std::span<const double> s, double sty,
            double eta_bar1) {
  double gs = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) gs += (g_cur[i] + g_prev[i]) * s[i];
  const double raw = 3.0 * gs + 6.0 * (f_prev - f_cur);
  const double bound = eta_bar1 * sty;
  return std::min(std::max(raw, -bound), bound);
}

CurvatureInfo quad_form_B(std::span<const double> g, std::span<const double> s,
                          std::span<const double> y, double rbar, double xi1) {
  CurvatureInfo info;
  info.sty = dot(s, y);
  info.rbar = rbar;
  const double ss = norm2_squared(s);
  const double gs = dot(g, s);
  const double gg = norm2_squared(g);
  const double d = xi1 * norm2_squared(y) / info.sty;
  info.ybar_dot_g = dot(g, y) + (rbar / ss) * gs;
  info.s_dot_ybar = info.sty + rbar;
  // The projected term is >= 0 in exact arithmetic; roundoff can push it
  // slightly negative when g is parallel to s.
  const double projected = std::max(0.0, gg - gs * gs / ss);
  info.gBg = d * projected + info.ybar_dot_g * info.ybar_dot_g / info.s_dot_ybar;
  return info;
}

double aos1_unclamped(double gnorm2, double gnorm, double gBg, double sigma) {
  const double cubic = 4.0 * sigma * gnorm2 * gnorm2 * gnorm;
  return 2.0 * gnorm2 / (std::sqrt(gBg * gBg + cubic) + gBg);
}

StepProposal aos1(double gnorm2, double gnorm, double gBg, double sigma, double bb1,
                  double bb2) {
  const double raw = aos1_unclamped(gnorm2, gnorm, gBg, sigma);
  return {std::max(std::min(raw, bb1), bb2), StepBranch::kAos1};
}

StepProposal aos2_fd(std::span<const double> g, std::span<const double> g_shifted, double tau,
                     double sigma) {
  double gd = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) gd += g[i] * (g_shifted[i] - g[i]);
  const double h = std::abs(gd);
  const double gnorm2 = norm2_squared(g);
  const double gnorm = std::sqrt(gnorm2);
  const double cubic = 4.0 * tau * tau * sigma * gnorm2 * gnorm2 * gnorm;
  return {2.0 * tau * gnorm2 / (std::sqrt(h * h + cubic) + h), StepBranch::kAos2a};
}

StepProposal aos2_prev(double gnorm2, double gnorm, double abs_sty, double alpha_prev,
                       double sigma) {
  // Same root as 2 ||g||^2 a^2 / (sqrt(|sty|^2 + 4 a^4 sigma ||g||^5) + |sty|)
  // with a = alpha_prev, divided through by a^2 to avoid a^4.
  const double curv = abs_sty / (alpha_prev * alpha_prev);
  const double cubic = 4.0 * sigma * gnorm2 * gnorm2 * gnorm;
  return {2.0 * gnorm2 / (std::sqrt(curv * curv + cubic) + curv), StepBranch::kAos2b};
}

StepProposal aos3(double gnorm2, const CurvatureInfo& curvature, double bb1, double bb2) {
  const double raw = gnorm2 / curvature.gBg;
  return {std::max(std::min(raw, bb1), bb2), StepBranch::kAos3};
}

StepProposal aos4(std::span<const double> g, std::span<const double> g_shifted, double tau,
                  std::span<const double> s, std::span<const double> y, double alpha_prev,
                  double ratio, double xi3, double upsilon) {
  const double gnorm2 = norm2_squared(g);
  if (ratio < xi3 && !g_shifted.empty()) {
    double gd = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) gd += g[i] * (g_shifted[i] - g[i]);
    if (gd / tau != 0.0) return {gnorm2 * tau / std::abs(gd), StepBranch::kAos4a};
  }
  const double sty = dot(s, y);
  if (ratio >= xi3 && sty != 0.0) {
    return {gnorm2 * alpha_prev * alpha_prev / std::abs(sty), StepBranch::kAos4b};
  }
  return {upsilon * alpha_prev, StepBranch::kAos4c};
}

double fd_tau(std::span<const double> x, std::span<const double> g) {
  return 1e-8 * (1.0 + norm_inf(x)) / std::max(1.0, norm_inf(g));
}

DispatchFacts classify(const PairMemory& memory, std::span<const double> g,
                       const SolverConfig& config) {
  DispatchFacts facts;
  facts.mu = memory.mu;
  facts.mu_prev = memory.mu_prev;
  facts.sty = dot(memory.s, memory.y);
  facts.grad_ratio = norm2_squared(memory.g_prev) / norm2_squared(g);
  facts.near_quadratic = near_quadratic(facts.mu, facts.mu_prev, config.c1, config.c2);
  return facts;
}

namespace {

// Evaluates g(x - tau g) once per iterate.
void ensure_shifted(const StepInput& input, const Problem& problem, EvalCounters& counters,
                    StepScratch& scratch) {
  if (scratch.evaluated) return;
  const std::size_t n = input.x.size();
  scratch.x_shifted.resize(n);
  scratch.g_shifted.resize(n);
  scratch.tau = fd_tau(input.x, input.g);
  step_along(input.x, -scratch.tau, input.g, scratch.x_shifted);
  scratch.finite = gradient(problem, scratch.x_shifted, scratch.g_shifted, counters);
  scratch.evaluated = true;
  if (scratch.finite) {
    double gd = 0.0;
    for (std::size_t i = 0; i < n; ++i) gd += input.g[i] * (scratch.g_shifted[i] - input.g[i]);
    scratch.fd_curvature = std::isfinite(gd) ? std::abs(gd) : std::numeric_limits<double>::quiet_NaN();
    scratch.finite = std::isfinite(gd);
  }
}

double clamp_step(double alpha, const SolverConfig& config, double fallback) {
  if (std::isnan(alpha)) alpha = fallback;
  return std::max(std::min(alpha, config.lambda_max), config.lambda_min);
}

}  // namespace

StepProposal choose_stepsize(const StepInput& input, const PairMemory& memory,
                             const SolverConfig& config, const Problem& problem,
                             EvalCounters& counters, StepScratch& scratch) {
  const DispatchFacts facts = classify(memory, input.g, config);
  const double gnorm2 = norm2_squared(input.g);
  const double gnorm = std::sqrt(gnorm2);

  StepProposal proposal;
  if (facts.sty > 0.0) {
    const double r = rbar(memory.f_prev, input.f, memory.g_prev, input.g, memory.s, facts.sty,
                          config.eta_bar1);
    const CurvatureInfo curvature = quad_form_B(input.g, memory.s, memory.y, r, config.xi1);
    const double b1 = bb1(memory.s, memory.y);
    const double b2 = bb2(memory.s, memory.y);
    proposal = facts.near_quadratic ? aos3(gnorm2, curvature, b1, b2)
                                    : aos1(gnorm2, gnorm, curvature.gBg, input.sigma, b1, b2);
  } else if (!facts.near_quadratic) {
    if (facts.grad_ratio < config.xi2) {
      ensure_shifted(input, problem, counters, scratch);
    }
    if (facts.grad_ratio < config.xi2 && scratch.finite) {
      proposal = aos2_fd(input.g, scratch.g_shifted, scratch.tau, input.sigma);
    } else {
      proposal = aos2_prev(gnorm2, gnorm, std::abs(facts.sty), memory.alpha_prev, input.sigma);
    }
  } else {
    std::span<const double> shifted;
    if (facts.grad_ratio < config.xi3) {
      ensure_shifted(input, problem, counters, scratch);
      if (scratch.finite) shifted = scratch.g_shifted;
    }
    proposal = aos4(input.g, shifted, scratch.tau, memory.s, memory.y, memory.alpha_prev,
                    facts.grad_ratio, config.xi3, config.upsilon);
  }
  proposal.alpha = clamp_step(proposal.alpha, config, memory.alpha_prev);
  return proposal;
}

StepBranch expected_branch(const DispatchFacts& facts, double fd_curvature,
                           const SolverConfig& config) {
  const bool fd_ok = std::isfinite(fd_curvature);
  if (facts.sty > 0.0) return facts.near_quadratic ? StepBranch::kAos3 : StepBranch::kAos1;
  if (!facts.near_quadratic) {
    return (facts.grad_ratio < config.xi2 && fd_ok) ? StepBranch::kAos2a : StepBranch::kAos2b;
  }
  if (facts.grad_ratio < config.xi3 && fd_ok && fd_curvature != 0.0) return StepBranch::kAos4a;
  if (facts.grad_ratio >= config.xi3 && facts.sty != 0.0) return StepBranch::kAos4b;
  return StepBranch::kAos4c;
}

}  // namespace gmaos
