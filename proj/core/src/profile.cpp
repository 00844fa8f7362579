#include "gmaos/bench.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <utility>

namespace gmaos {

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::kIters: return "iters";
    case Metric::kNf: return "nf";
    case Metric::kNg: return "ng";
    case Metric::kTime: return "time";
  }
  return "?";
}

std::optional<Metric> parse_metric(std::string_view text) {
  for (Metric m : {Metric::kIters, Metric::kNf, Metric::kNg, Metric::kTime}) {
    if (to_string(m) == text) return m;
  }
  return std::nullopt;
}

double ProfileCurve::at(double tau) const {
  double value = 0.0;
  for (const ProfilePoint& p : points) {
    if (p.tau > tau) break;
    value = p.fraction;
  }
  return value;
}

namespace {

// Costs are floored so that zero-cost runs (e.g. a start point that is
// already stationary) still give finite ratios.
double metric_value(const RunRecord& r, Metric metric) {
  switch (metric) {
    case Metric::kIters: return std::max(1.0, static_cast<double>(r.iters));
    case Metric::kNf: return std::max(1.0, static_cast<double>(r.nf));
    case Metric::kNg: return std::max(1.0, static_cast<double>(r.ng));
    case Metric::kTime: return std::max(1e-6, r.wall_time_seconds);
  }
  return 1.0;
}

}  // namespace

std::vector<ProfileCurve> performance_profile(std::span<const RunRecord> records,
                                              Metric metric) {
  using ProblemKey = std::pair<std::string, std::size_t>;
  std::set<std::string> solvers;
  std::set<ProblemKey> problems;
  std::map<std::pair<ProblemKey, std::string>, const RunRecord*> grid;
  for (const RunRecord& r : records) {
    solvers.insert(r.solver_name);
    problems.insert({r.problem_name, r.n});
    const auto [it, inserted] = grid.emplace(
        std::make_pair(ProblemKey{r.problem_name, r.n}, r.solver_name), &r);
    if (!inserted) {
      throw ProfileError("duplicate record for " + r.solver_name + " on " + r.problem_name);
    }
  }
  if (grid.size() != solvers.size() * problems.size()) {
    throw ProfileError("records do not cover the full solver x problem grid");
  }
  if (records.empty()) return {};

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::map<std::string, std::vector<double>> ratios;
  for (const ProblemKey& p : problems) {
    double best = kInf;
    for (const std::string& s : solvers) {
      const RunRecord& r = *grid.at({p, s});
      if (r.status == RunStatus::kConverged) best = std::min(best, metric_value(r, metric));
    }
    for (const std::string& s : solvers) {
      const RunRecord& r = *grid.at({p, s});
      const bool solved = r.status == RunStatus::kConverged;
      ratios[s].push_back(solved ? metric_value(r, metric) / best : kInf);
    }
  }

  std::set<double> taus{1.0};
  for (const auto& [s, rs] : ratios) {
    for (double r : rs) {
      if (std::isfinite(r)) taus.insert(r);
    }
  }

  const double count = static_cast<double>(problems.size());
  std::vector<ProfileCurve> curves;
  for (const std::string& s : solvers) {
    std::vector<double> rs = ratios.at(s);
    std::sort(rs.begin(), rs.end());
    ProfileCurve curve;
    curve.solver_name = s;
    curve.metric = metric;
    std::size_t covered = 0;
    for (double tau : taus) {
      while (covered < rs.size() && rs[covered] <= tau) ++covered;
      curve.points.push_back({tau, static_cast<double>(covered) / count});
    }
    curve.solved_fraction =
        static_cast<double>(std::count_if(rs.begin(), rs.end(),
                                          [](double r) { return std::isfinite(r); })) /
        count;
    curves.push_back(std::move(curve));
  }
  return curves;
}

}  // namespace gmaos
