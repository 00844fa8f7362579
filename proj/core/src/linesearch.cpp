#include "gmaos/linesearch.hpp"

namespace gmaos {

NonmonotoneState make_nonmonotone_state(double f0, std::size_t n, double c, double delta) {
  NonmonotoneState state;
  state.Q = 1.0;
  state.C = f0;
  state.k = 0;
  state.n = n;
  state.c = c;
  state.delta = delta;
  return state;
}

double eta(std::int64_t k, std::size_t n, double c) {
  const auto period = static_cast<std::int64_t>(n);
  return (k % period == period - 1) ? c : 1.0;
}

bool accept(double f_trial, double C, double delta, double alpha, double gnorm2) {
  return f_trial <= C - delta * alpha * gnorm2;
}

double backtrack(double alpha, double f0, double g_dot_d, double f_trial) {
  const double lo = 0.1 * alpha;
  const double hi = 0.9 * alpha;
  // Minimizer of the parabola through f0, slope g_dot_d at 0 and f_trial at alpha.
  const double denom = 2.0 * (f_trial - f0 - alpha * g_dot_d);
  if (denom > 0.0) {
    const double candidate = -g_dot_d * alpha * alpha / denom;
    if (candidate >= lo && candidate <= hi) return candidate;
  }
  return 0.5 * alpha;
}

NonmonotoneState update_QC(const NonmonotoneState& state, double f_new, double eta_k) {
  NonmonotoneState next = state;
  const double weighted = eta_k * state.Q;
  next.Q = weighted + 1.0;
  next.C = (weighted * state.C + f_new) / next.Q;
  next.k = state.k + 1;
  return next;
}

NonmonotoneState update_QC(const NonmonotoneState& state, double f_new) {
  return update_QC(state, f_new, eta(state.k, state.n, state.c));
}

double q_upper_bound(std::size_t n, double c) {
  return 1.0 + static_cast<double>(n) / (1.0 - c);
}

}  // namespace gmaos
