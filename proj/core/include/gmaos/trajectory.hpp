#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gmaos/config.hpp"
#include "gmaos/solver.hpp"

namespace gmaos {

struct TrajectoryReport {
  std::int64_t steps_checked = 0;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

/// Re-checks a recorded trace: f_k <= C_k, C_{k+1} <= C_k (relative 1e-12),
/// Q_k <= 1 + n / (1 - c), the acceptance inequality at every step, stepsize
/// bounds, and (for gm_aos_cr) that every branch tag replays from the
/// recorded predicates.
TrajectoryReport check_trajectory(const RunRecord& record, const SolverConfig& config);

}  // namespace gmaos
