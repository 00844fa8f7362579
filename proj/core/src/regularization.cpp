#include "gmaos/regularization.hpp"

#include <algorithm>
#include <limits>

namespace gmaos {
namespace {

double clamp_sigma(double sigma) { return std::clamp(sigma, kSigmaFloor, kSigmaCeiling); }

}  // namespace

double rho(double C, double f_cur, double f_trial) {
  const double actual = f_cur - f_trial;
  const double reference = C - f_trial;
  if (actual == 0.0) return reference > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  return reference / actual;
}

RegularizationState update_sigma(const RegularizationState& state, double rho,
                                 bool near_quadratic) {
  RegularizationState next = state;
  if (rho > state.v2 || near_quadratic) {
    next.sigma = state.sigma / state.gamma1;
  } else if (rho >= state.v1 && rho <= state.v2) {
    next.sigma = state.gamma2 * state.sigma;
  } else {
    next.sigma = state.gamma3 * state.sigma;
  }
  next.sigma = clamp_sigma(next.sigma);
  return next;
}

RegularizationState inflate_sigma(const RegularizationState& state) {
  RegularizationState next = state;
  next.sigma = clamp_sigma(state.gamma3 * state.sigma);
  return next;
}

}  // namespace gmaos
