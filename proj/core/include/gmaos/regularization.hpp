#pragma once

namespace gmaos {

inline constexpr double kSigmaFloor = 1e-300;
inline constexpr double kSigmaCeiling = 1e300;

struct RegularizationState {
  double sigma = 50.0;
  double gamma1 = 1.35;
  double gamma2 = 1.5;
  double gamma3 = 5.625;
  double v1 = 0.1;
  double v2 = 0.9;
};

/// (C - f_trial) / (f_cur - f_trial). A zero denominator gives +inf when
/// C > f_trial and 0 otherwise.
double rho(double C, double f_cur, double f_trial);

/// sigma / gamma1 if rho > v2 or the near-quadratic test holds,
/// gamma2 * sigma if v1 <= rho <= v2, gamma3 * sigma otherwise.
RegularizationState update_sigma(const RegularizationState& state, double rho,
                                 bool near_quadratic);

RegularizationState inflate_sigma(const RegularizationState& state);

}  // namespace gmaos
