#pragma once

#include <cstdint>

namespace gmaos {

/// Every tunable of the GM_AOS(CR) iteration and of the BB baseline.
/// Defaults are the published parameter set; eta_bar1 and xi3 have no
/// published value and use 0.05 and 0.85.
struct SolverConfig {
  double epsilon = 1e-6;     // stop when ||g||_inf <= epsilon
  double delta = 1e-4;       // nonmonotone sufficient-decrease constant
  double c = 0.9999;         // eta_k value on the last step of each n-cycle
  double c1 = 1e-8;          // near-quadratic thresholds
  double c2 = 0.07;
  double xi1 = 1.07;         // scaling of the BFGS seed matrix
  double xi2 = 0.85;         // collinearity threshold, non-positive curvature (cubic)
  double xi3 = 0.85;         // collinearity threshold, non-positive curvature (quadratic)
  double eta_bar1 = 0.05;    // clamp on rbar relative to s^T y
  double gamma1 = 1.35;
  double gamma2 = 1.5;
  double gamma3 = 5.625;
  double v1 = 0.1;
  double v2 = 0.9;
  double lambda_min = 1e-30;
  double lambda_max = 1e30;
  double sigma0 = 50.0;
  double upsilon = 10.0;

  std::int64_t max_iter = 50000;
  std::int64_t max_nf = 80000;
  int max_inner_retries = 10;
  int max_backtracks = 60;

  bool record_trace = false;
};

}  // namespace gmaos
