#include "gmaos/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gmaos {

double evaluate(const Problem& problem, std::span<const double> x, EvalCounters& counters) {
  ++counters.nf;
  return problem.objective(x);
}

bool gradient(const Problem& problem, std::span<const double> x, std::span<double> out,
              EvalCounters& counters) {
  ++counters.ng;
  problem.gradient(x, out);
  return all_finite(out);
}

Vector gradient(const Problem& problem, std::span<const double> x, EvalCounters& counters) {
  Vector out(x.size());
  gradient(problem, x, out, counters);
  return out;
}

double check_gradient(const Problem& problem, std::span<const double> x, double h) {
  const std::size_t n = x.size();
  Vector g(n);
  problem.gradient(x, g);

  Vector probe(x.begin(), x.end());
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double step = h * (1.0 + std::abs(x[i]));
    probe[i] = x[i] + step;
    const double f_plus = problem.objective(probe);
    probe[i] = x[i] - step;
    const double f_minus = problem.objective(probe);
    probe[i] = x[i];
    // Use the realized spacing, not the nominal one.
    const double spacing = (x[i] + step) - (x[i] - step);
    const double central = (f_plus - f_minus) / spacing;
    const double err = std::abs(g[i] - central) / (1.0 + std::abs(g[i]));
    if (!std::isfinite(err)) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, err);
  }
  return worst;
}

}  // namespace gmaos
