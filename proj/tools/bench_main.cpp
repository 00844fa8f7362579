// bench: runs solver x problem grids, writes CSV results and Dolan-More
// performance profiles.
#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gmaos/bench.hpp"
#include "gmaos/test_problems.hpp"
#include "gmaos/trajectory.hpp"

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void print_catalog() {
  for (const gmaos::CatalogEntry& e : gmaos::problem_catalog()) {
    std::printf("%-20s block=%zu  %s\n", e.name.c_str(), e.block_size, e.description.c_str());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benchmark GM_AOS(CR) and the BB baseline on the native test suite"};

  std::string problems = "all";
  std::size_t n = 1000;
  std::string solvers = "gm_aos_cr,bb";
  gmaos::SolverConfig config;
  std::string csv_path;
  std::string profile_path;
  std::string plot_prefix;
  std::string trace_csv;
  bool trace = false;
  bool list_problems = false;

  app.add_option("--problems", problems, "Comma-separated problem names, or 'all'");
  app.add_option("--n", n, "Problem dimension")->check(CLI::PositiveNumber);
  app.add_option("--solvers", solvers, "Comma-separated solvers: gm_aos_cr,bb");
  app.add_option("--tol", config.epsilon, "Stop when ||g||_inf <= tol");
  app.add_option("--max-iter", config.max_iter, "Iteration cap");
  app.add_option("--max-nf", config.max_nf, "Function-evaluation cap");
  app.add_option("--sigma0", config.sigma0, "Initial cubic regularization parameter");
  app.add_option("--csv", csv_path, "Write per-run records to this CSV file");
  app.add_option("--profile", profile_path, "Write performance-profile curves to this CSV file");
  app.add_option("--plot", plot_prefix, "Write <prefix>_<metric>.svg profile plots");
  app.add_flag("--trace", trace, "Record traces and check trajectory invariants");
  app.add_option("--trace-csv", trace_csv, "Write recorded traces to this CSV file (implies --trace)");
  app.add_flag("--list-problems", list_problems, "List the problem catalog and exit");

  CLI11_PARSE(app, argc, argv);

  if (list_problems) {
    print_catalog();
    return 0;
  }

  try {
    gmaos::BenchPlan plan;
    plan.config = config;
    plan.config.record_trace = trace || !trace_csv.empty();
    plan.threads = gmaos::threads_from_env(1);
    plan.solvers = split_list(solvers);
    const std::vector<std::string> names =
        problems == "all" ? gmaos::problem_names() : split_list(problems);
    for (const std::string& name : names) plan.problems.push_back({name, n});

    const std::vector<gmaos::RunRecord> records = gmaos::run_suite(plan);

    std::printf("%-20s %-10s %-18s %8s %8s %8s %10s %12s\n", "problem", "solver", "status",
                "iters", "nf", "ng", "time_s", "gnorm_inf");
    for (const gmaos::RunRecord& r : records) {
      std::printf("%-20s %-10s %-18s %8lld %8lld %8lld %10.4f %12.3e\n", r.problem_name.c_str(),
                  r.solver_name.c_str(), std::string(gmaos::to_string(r.status)).c_str(),
                  static_cast<long long>(r.iters), static_cast<long long>(r.nf),
                  static_cast<long long>(r.ng), r.wall_time_seconds, r.final_gnorm_inf);
    }

    std::vector<gmaos::ProfileCurve> curves;
    for (gmaos::Metric m : {gmaos::Metric::kIters, gmaos::Metric::kNf, gmaos::Metric::kNg,
                            gmaos::Metric::kTime}) {
      for (auto& c : gmaos::performance_profile(records, m)) curves.push_back(std::move(c));
    }
    std::printf("\n%-10s %8s %10s %10s\n", "solver", "solved", "rho_nf(1)", "rho_nf(2)");
    for (const gmaos::ProfileCurve& c : curves) {
      if (c.metric != gmaos::Metric::kNf) continue;
      std::printf("%-10s %8.3f %10.3f %10.3f\n", c.solver_name.c_str(), c.solved_fraction,
                  c.at(1.0), c.at(2.0));
    }

    int exit_code = 0;
    if (plan.config.record_trace) {
      std::size_t violations = 0;
      for (const gmaos::RunRecord& r : records) {
        const gmaos::TrajectoryReport report = gmaos::check_trajectory(r, plan.config);
        for (const std::string& v : report.violations) std::fprintf(stderr, "%s\n", v.c_str());
        violations += report.violations.size();
      }
      std::printf("\ntrajectory invariants: %zu violation(s)\n", violations);
      if (violations > 0) exit_code = 2;
    }

    gmaos::OutputPaths paths;
    if (!csv_path.empty()) paths.records_csv = csv_path;
    if (!profile_path.empty()) paths.profile_csv = profile_path;
    if (!plot_prefix.empty()) paths.plot_prefix = plot_prefix;
    if (!trace_csv.empty()) paths.trace_csv = trace_csv;
    gmaos::emit_outputs(records, curves, paths);
    return exit_code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "bench: %s\n", e.what());
    return 1;
  }
}
