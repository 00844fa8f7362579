#include "gmaos/solver.hpp"

#include <time.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "gmaos/linesearch.hpp"
#include "gmaos/regularization.hpp"

namespace gmaos {

std::string_view to_string(RunStatus status) {
  switch (status) {
    case RunStatus::kConverged: return "converged";
    case RunStatus::kMaxIter: return "max_iter";
    case RunStatus::kMaxNf: return "max_nf";
    case RunStatus::kLinesearchFailure: return "linesearch_failure";
    case RunStatus::kDiverged: return "diverged";
  }
  return "?";
}

std::optional<RunStatus> parse_status(std::string_view text) {
  for (RunStatus s : {RunStatus::kConverged, RunStatus::kMaxIter, RunStatus::kMaxNf,
                      RunStatus::kLinesearchFailure, RunStatus::kDiverged}) {
    if (to_string(s) == text) return s;
  }
  return std::nullopt;
}

double initial_stepsize(std::span<const double> x0, double f0, std::span<const double> g0) {
  constexpr double kTiny = 1e-30;
  const double x_inf = norm_inf(x0);
  const double g_inf = norm_inf(g0);
  const double abs_f = std::abs(f0);
  if (x_inf < kTiny) {
    return abs_f >= kTiny ? 50.0 * abs_f / norm2_squared(g0) : 1.0;
  }
  if (g_inf >= 1e7) return std::min(1.0, std::max(x_inf / g_inf, 1.0 / g_inf));
  return std::min(1.0, x_inf / g_inf);
}

namespace {

double thread_cpu_seconds() {
  timespec ts{};
  if (clock_gettime(CLOCK_THREAD_CPUTIME_ID, &ts) != 0) return 0.0;
  return static_cast<double>(ts.tv_sec) + 1e-9 * static_cast<double>(ts.tv_nsec);
}

double clamp_to_bounds(double alpha, const SolverConfig& config) {
  return std::max(std::min(alpha, config.lambda_max), config.lambda_min);
}

enum class Method { kAos, kBb };

// Shared driver: the two methods differ only in Step 2 (stepsize selection)
// and in whether sigma is maintained.
class Driver {
 public:
  Driver(const Problem& problem, const SolverConfig& config, Method method)
      : problem_(problem), config_(config), method_(method), n_(problem.dimension) {}

  RunRecord run() {
    const auto wall_start = std::chrono::steady_clock::now();
    const double cpu_start = thread_cpu_seconds();

    record_.problem_name = problem_.name;
    record_.n = n_;
    record_.solver_name = std::string(method_ == Method::kAos ? kGmAosCr : kBb);
    record_.status = iterate();
    record_.iters = k_;
    record_.nf = counters_.nf;
    record_.ng = counters_.ng;
    record_.final_f = f_;
    record_.final_gnorm_inf = norm_inf(g_);

    record_.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
    record_.cpu_time_seconds = thread_cpu_seconds() - cpu_start;
    return std::move(record_);
  }

 private:
  // Evaluates f at x_k - alpha g_k into x_trial_.
  double trial_value(double alpha) {
    step_along(x_, -alpha, g_, x_trial_);
    return evaluate(problem_, x_trial_, counters_);
  }

  bool over_budget() const { return counters_.nf > config_.max_nf; }

  double safe_rho(double f_trial) const {
    // A non-finite trial value means the step overshot badly.
    if (!std::isfinite(f_trial)) return -std::numeric_limits<double>::infinity();
    return rho(nm_.C, f_, f_trial);
  }

  // Smallest value the Case-I proposal can take; past this point inflating
  // sigma cannot move alpha any more.
  double case1_floor(StepBranch branch) const {
    if (branch == StepBranch::kAos1) {
      return std::max(bb2(memory_.s, memory_.y), config_.lambda_min);
    }
    return config_.lambda_min;
  }

  RunStatus iterate() {
    x_ = problem_.start_point;
    g_.assign(n_, 0.0);
    x_trial_.assign(n_, 0.0);
    g_trial_.assign(n_, 0.0);

    f_ = evaluate(problem_, x_, counters_);
    const bool g_ok = gradient(problem_, x_, g_, counters_);
    if (!std::isfinite(f_) || !g_ok) return RunStatus::kDiverged;

    nm_ = make_nonmonotone_state(f_, n_, config_.c, config_.delta);
    reg_.sigma = config_.sigma0;
    reg_.gamma1 = config_.gamma1;
    reg_.gamma2 = config_.gamma2;
    reg_.gamma3 = config_.gamma3;
    reg_.v1 = config_.v1;
    reg_.v2 = config_.v2;

    for (;;) {
      if (norm_inf(g_) <= config_.epsilon) return RunStatus::kConverged;
      if (k_ >= config_.max_iter) return RunStatus::kMaxIter;
      if (over_budget()) return RunStatus::kMaxNf;
      if (const auto status = step()) return *status;
    }
  }

  // One pass of Steps 2-6. Returns a terminal status, or nothing when the
  // iterate was accepted.
  std::optional<RunStatus> step() {
    const double gnorm2 = norm2_squared(g_);
    TraceEntry entry;
    entry.k = k_;
    entry.f = f_;
    entry.C = nm_.C;
    entry.Q = nm_.Q;
    entry.gnorm_inf = norm_inf(g_);
    entry.gnorm2 = gnorm2;

    scratch_.reset();
    StepProposal proposal;
    DispatchFacts facts;
    double f_trial = std::numeric_limits<double>::quiet_NaN();
    bool have_trial = false;
    double rho_k = std::numeric_limits<double>::quiet_NaN();
    bool sigma_updated = false;

    // Step 2: trial stepsize.
    if (k_ == 0) {
      proposal = {clamp_to_bounds(initial_stepsize(x_, f_, g_), config_), StepBranch::kInitial};
    } else if (method_ == Method::kAos) {
      facts = classify(memory_, g_, config_);
      StepInput input{x_, f_, g_, reg_.sigma};
      proposal = choose_stepsize(input, memory_, config_, problem_, counters_, scratch_);
      if (!facts.near_quadratic) {
        f_trial = trial_value(proposal.alpha);
        rho_k = safe_rho(f_trial);
        while (rho_k <= config_.v1 && entry.retries < config_.max_inner_retries &&
               proposal.alpha > case1_floor(proposal.branch) && !over_budget()) {
          reg_ = inflate_sigma(reg_);
          ++entry.retries;
          input.sigma = reg_.sigma;
          const StepProposal next =
              choose_stepsize(input, memory_, config_, problem_, counters_, scratch_);
          if (next.alpha != proposal.alpha) {
            f_trial = trial_value(next.alpha);
            rho_k = safe_rho(f_trial);
          }
          proposal = next;
        }
        have_trial = true;
        entry.sigma = reg_.sigma;
        // Step 3 for the cubic branches.
        reg_ = update_sigma(reg_, rho_k, false);
        sigma_updated = true;
      }
    } else {
      const double sty = dot(memory_.s, memory_.y);
      facts.sty = sty;
      facts.grad_ratio = norm2_squared(memory_.g_prev) / gnorm2;
      proposal = sty > 0.0 ? StepProposal{bb1(memory_.s, memory_.y), StepBranch::kBb1}
                           : StepProposal{config_.upsilon * memory_.alpha_prev,
                                          StepBranch::kBbFallback};
      if (std::isnan(proposal.alpha)) proposal.alpha = memory_.alpha_prev;
      proposal.alpha = clamp_to_bounds(proposal.alpha, config_);
    }
    if (!sigma_updated) entry.sigma = reg_.sigma;

    // Step 4: nonmonotone line search.
    double alpha = proposal.alpha;
    if (!have_trial) f_trial = trial_value(alpha);
    while (!accept(f_trial, nm_.C, config_.delta, alpha, gnorm2)) {
      if (over_budget()) return RunStatus::kMaxNf;
      if (entry.backtracks >= config_.max_backtracks) return RunStatus::kLinesearchFailure;
      alpha = backtrack(alpha, f_, -gnorm2, f_trial);
      ++entry.backtracks;
      f_trial = trial_value(alpha);
    }
    if (!std::isfinite(f_trial)) return RunStatus::kDiverged;

    // Step 3 for the quadratic branches and k = 0, using the accepted trial.
    if (method_ == Method::kAos && !sigma_updated) {
      rho_k = safe_rho(f_trial);
      reg_ = update_sigma(reg_, rho_k, k_ > 0 && facts.near_quadratic);
    }

    if (!gradient(problem_, x_trial_, g_trial_, counters_)) return RunStatus::kDiverged;

    if (config_.record_trace) {
      entry.alpha_proposed = proposal.alpha;
      entry.alpha = alpha;
      entry.branch = proposal.branch;
      entry.sigma_next = reg_.sigma;
      entry.rho = rho_k;
      entry.mu = facts.mu;
      entry.mu_prev = facts.mu_prev;
      entry.sty = facts.sty;
      entry.grad_ratio = facts.grad_ratio;
      entry.near_quadratic = facts.near_quadratic;
      entry.fd_curvature = scratch_.fd_curvature;
      entry.f_next = f_trial;
      record_.trace.push_back(entry);
    }

    // Step 5.
    nm_ = update_QC(nm_, f_trial);

    // Step 6: accept and refresh the pair memory.
    memory_.s.resize(n_);
    memory_.y.resize(n_);
    difference(x_trial_, x_, memory_.s);
    difference(g_trial_, g_, memory_.y);
    memory_.g_prev = g_;
    memory_.f_prev = f_;
    memory_.alpha_prev = alpha;
    memory_.mu_prev = k_ > 0 ? std::optional<double>(memory_.mu) : std::nullopt;
    memory_.mu = mu(f_, f_trial, g_trial_, memory_.s, memory_.y);

    std::swap(x_, x_trial_);
    std::swap(g_, g_trial_);
    f_ = f_trial;
    ++k_;
    return std::nullopt;
  }

  const Problem& problem_;
  const SolverConfig& config_;
  Method method_;
  std::size_t n_;

  RunRecord record_;
  EvalCounters counters_;
  Vector x_, g_, x_trial_, g_trial_;
  double f_ = 0.0;
  std::int64_t k_ = 0;
  NonmonotoneState nm_;
  RegularizationState reg_;
  PairMemory memory_;
  StepScratch scratch_;
};

}  // namespace

RunRecord solve(const Problem& problem, const SolverConfig& config) {
  return Driver(problem, config, Method::kAos).run();
}

RunRecord solve_bb(const Problem& problem, const SolverConfig& config) {
  return Driver(problem, config, Method::kBb).run();
}

RunRecord run_solver(std::string_view solver_name, const Problem& problem,
                     const SolverConfig& config) {
  if (solver_name == kGmAosCr) return solve(problem, config);
  if (solver_name == kBb) return solve_bb(problem, config);
  throw std::invalid_argument("unknown solver '" + std::string(solver_name) + "'");
}

}  // namespace gmaos
