#pragma once

#include <cstddef>
#include <cstdint>

namespace gmaos {

/// Zhang-Hager reference value C_k and its weight Q_k.
struct NonmonotoneState {
  double Q = 1.0;
  double C = 0.0;
  std::int64_t k = 0;
  std::size_t n = 1;
  double c = 0.9999;
  double delta = 1e-4;
};

NonmonotoneState make_nonmonotone_state(double f0, std::size_t n, double c, double delta);

/// eta_k = c on the last iteration of every block of n, 1 otherwise.
double eta(std::int64_t k, std::size_t n, double c);

/// f_trial <= C - delta * alpha * ||g||^2
bool accept(double f_trial, double C, double delta, double alpha, double gnorm2);

/// Safeguarded quadratic-interpolation backtrack from (f0, g_dot_d) at 0 and
/// f_trial at alpha. The result always lies in [0.1 alpha, 0.9 alpha].
double backtrack(double alpha, double f0, double g_dot_d, double f_trial);

NonmonotoneState update_QC(const NonmonotoneState& state, double f_new, double eta_k);
NonmonotoneState update_QC(const NonmonotoneState& state, double f_new);

/// Upper bound 1 + n / (1 - c) on Q_k.
double q_upper_bound(std::size_t n, double c);

}  // namespace gmaos
