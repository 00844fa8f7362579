#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>

#include "gmaos/vec.hpp"

namespace gmaos {

/// A smooth unconstrained objective with an analytic gradient oracle.
///
/// The callables must be pure: any evaluation bookkeeping lives in
/// EvalCounters, owned by the caller, so one Problem can be shared by
/// concurrent runs.
struct Problem {
  using Objective = std::function<double(std::span<const double>)>;
  using Gradient = std::function<void(std::span<const double>, std::span<double>)>;

  std::string name;
  std::size_t dimension = 0;
  Objective objective;
  Gradient gradient;
  Vector start_point;
};

struct EvalCounters {
  std::int64_t nf = 0;
  std::int64_t ng = 0;
};

/// f(x). Non-finite values are returned unchanged; the solvers map them to
/// the "diverged" status.
double evaluate(const Problem& problem, std::span<const double> x, EvalCounters& counters);

/// Writes grad f(x) into `out` and returns whether every component is finite.
bool gradient(const Problem& problem, std::span<const double> x, std::span<double> out,
              EvalCounters& counters);

Vector gradient(const Problem& problem, std::span<const double> x, EvalCounters& counters);

/// Largest relative discrepancy max_i |g_i - d_i| / (1 + |g_i|) between the
/// analytic gradient and central differences d_i with step h * (1 + |x_i|).
double check_gradient(const Problem& problem, std::span<const double> x, double h = 1e-6);

}  // namespace gmaos
