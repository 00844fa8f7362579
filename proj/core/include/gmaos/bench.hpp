#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gmaos/config.hpp"
#include "gmaos/solver.hpp"

namespace gmaos {

struct ProblemSpec {
  std::string name;
  std::size_t n = 0;
};

struct BenchPlan {
  std::vector<ProblemSpec> problems;
  std::vector<std::string> solvers;
  SolverConfig config;
  unsigned threads = 1;
};

/// Thread count from GMAOS_THREADS, falling back to `fallback`.
unsigned threads_from_env(unsigned fallback = 1);

/// Runs every (problem, solver) pair. Records come back sorted by
/// (problem, n, solver). Throws std::invalid_argument for an empty plan,
/// unknown problems or solvers.
std::vector<RunRecord> run_suite(const BenchPlan& plan);

enum class Metric { kIters, kNf, kNg, kTime };

std::string_view to_string(Metric metric);
std::optional<Metric> parse_metric(std::string_view text);

struct ProfilePoint {
  double tau = 1.0;
  double fraction = 0.0;
};

struct ProfileCurve {
  std::string solver_name;
  Metric metric = Metric::kNf;
  std::vector<ProfilePoint> points;  // step curve, tau ascending
  double solved_fraction = 0.0;

  /// rho_s(tau) read off the step curve.
  double at(double tau) const;
};

class ProfileError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dolan-More performance profiles, one curve per solver, for records that
/// cover a full solver x problem grid. Unsolved runs get an infinite ratio.
std::vector<ProfileCurve> performance_profile(std::span<const RunRecord> records, Metric metric);

inline constexpr std::string_view kRecordsCsvHeader =
    "problem,n,solver,status,iters,nf,ng,time_s,final_f,final_gnorm_inf";
inline constexpr std::string_view kProfileCsvHeader = "metric,solver,tau,fraction";

void write_records_csv(const std::filesystem::path& path, std::span<const RunRecord> records);
std::vector<RunRecord> read_records_csv(const std::filesystem::path& path);
void write_profile_csv(const std::filesystem::path& path, std::span<const ProfileCurve> curves);
/// Step plot of one metric's curves, tau on a log2 axis.
void write_profile_svg(const std::filesystem::path& path, std::span<const ProfileCurve> curves);
void write_trace_csv(const std::filesystem::path& path, std::span<const RunRecord> records);

struct OutputPaths {
  std::optional<std::filesystem::path> records_csv;
  std::optional<std::filesystem::path> profile_csv;
  // One <prefix>_<metric>.svg per metric.
  std::optional<std::filesystem::path> plot_prefix;
  std::optional<std::filesystem::path> trace_csv;
};

void emit_outputs(std::span<const RunRecord> records, std::span<const ProfileCurve> curves,
                  const OutputPaths& paths);

}  // namespace gmaos
