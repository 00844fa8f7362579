#include "gmaos/trajectory.hpp"

#include <cmath>
#include <sstream>

#include "gmaos/linesearch.hpp"

namespace gmaos {
namespace {

constexpr double kRelTol = 1e-12;

std::string describe(const RunRecord& record, std::int64_t k, const std::string& what) {
  std::ostringstream os;
  os.precision(17);
  os << record.solver_name << '/' << record.problem_name << " k=" << k << ": " << what;
  return os.str();
}

}  // namespace

TrajectoryReport check_trajectory(const RunRecord& record, const SolverConfig& config) {
  TrajectoryReport report;
  const double q_max = q_upper_bound(record.n, config.c);
  const bool aos = record.solver_name == kGmAosCr;

  for (std::size_t i = 0; i < record.trace.size(); ++i) {
    const TraceEntry& e = record.trace[i];
    ++report.steps_checked;
    auto fail = [&](const std::string& what) {
      report.violations.push_back(describe(record, e.k, what));
    };

    if (e.f > e.C + kRelTol * (1.0 + std::abs(e.C))) fail("f_k > C_k");
    if (e.Q > q_max) fail("Q_k above 1 + n/(1-c)");
    if (e.Q < 1.0) fail("Q_k < 1");
    if (!accept(e.f_next, e.C, config.delta, e.alpha, e.gnorm2)) {
      fail("acceptance inequality violated");
    }
    if (!(e.alpha > 0.0)) fail("non-positive stepsize");
    if (e.alpha_proposed < config.lambda_min || e.alpha_proposed > config.lambda_max) {
      fail("proposed stepsize outside [lambda_min, lambda_max]");
    }
    if (e.alpha > e.alpha_proposed) fail("line search increased the stepsize");

    if (i + 1 < record.trace.size()) {
      const TraceEntry& next = record.trace[i + 1];
      if (next.C > e.C + kRelTol * (1.0 + std::abs(e.C))) fail("C_{k+1} > C_k");
      if (next.f != e.f_next) fail("trace is not contiguous");
    }

    if (e.k == 0) {
      if (e.branch != StepBranch::kInitial) fail("k = 0 must use the initial stepsize");
      continue;
    }
    StepBranch expected;
    if (aos) {
      DispatchFacts facts;
      facts.mu = e.mu;
      facts.mu_prev = e.mu_prev;
      facts.sty = e.sty;
      facts.grad_ratio = e.grad_ratio;
      facts.near_quadratic = near_quadratic(e.mu, e.mu_prev, config.c1, config.c2);
      if (facts.near_quadratic != e.near_quadratic) fail("near-quadratic flag does not replay");
      expected = expected_branch(facts, e.fd_curvature, config);
    } else {
      expected = e.sty > 0.0 ? StepBranch::kBb1 : StepBranch::kBbFallback;
    }
    if (expected != e.branch) {
      fail("branch " + std::string(to_string(e.branch)) + " does not replay (expected " +
           std::string(to_string(expected)) + ")");
    }
  }
  return report;
}

}  // namespace gmaos
