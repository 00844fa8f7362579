#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <string>

#include "gmaos/bench.hpp"

namespace gmaos {
namespace {

RunRecord record(std::string problem, std::string solver, std::int64_t nf,
                 RunStatus status = RunStatus::kConverged) {
  RunRecord r;
  r.problem_name = std::move(problem);
  r.n = 10;
  r.solver_name = std::move(solver);
  r.status = status;
  r.iters = nf;
  r.nf = nf;
  r.ng = nf;
  r.wall_time_seconds = 0.001 * static_cast<double>(nf);
  return r;
}

const ProfileCurve& curve_for(const std::vector<ProfileCurve>& curves, const std::string& s) {
  for (const ProfileCurve& c : curves) {
    if (c.solver_name == s) return c;
  }
  throw std::runtime_error("no curve for " + s);
}

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "gmaos_bench_test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::size_t line_count(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) ++n;
  return n;
}

TEST(Profile, TwoSolversTwoProblems) {
  // A costs (2, 3), B costs (4, 3): ratios A = (1, 1), B = (2, 1).
  const std::vector<RunRecord> records = {record("p1", "A", 2), record("p2", "A", 3),
                                          record("p1", "B", 4), record("p2", "B", 3)};
  const auto curves = performance_profile(records, Metric::kNf);
  ASSERT_EQ(curves.size(), 2u);
  const ProfileCurve& a = curve_for(curves, "A");
  const ProfileCurve& b = curve_for(curves, "B");
  EXPECT_DOUBLE_EQ(a.at(1.0), 1.0);
  EXPECT_DOUBLE_EQ(b.at(1.0), 0.5);
  EXPECT_DOUBLE_EQ(b.at(1.5), 0.5);
  EXPECT_DOUBLE_EQ(b.at(2.0), 1.0);
  EXPECT_DOUBLE_EQ(a.solved_fraction, 1.0);
  ASSERT_EQ(b.points.size(), 2u);
  EXPECT_DOUBLE_EQ(b.points[1].tau, 2.0);
}

TEST(Profile, FailuresNeverCount) {
  const std::vector<RunRecord> records = {
      record("p1", "A", 5), record("p2", "A", 5),
      record("p1", "B", 1, RunStatus::kMaxIter), record("p2", "B", 1, RunStatus::kDiverged)};
  const auto curves = performance_profile(records, Metric::kNf);
  const ProfileCurve& b = curve_for(curves, "B");
  for (const ProfilePoint& p : b.points) EXPECT_EQ(p.fraction, 0.0);
  EXPECT_EQ(b.at(1e300), 0.0);
  EXPECT_EQ(b.solved_fraction, 0.0);
  EXPECT_DOUBLE_EQ(curve_for(curves, "A").at(1.0), 1.0);
}

TEST(Profile, SingleSolverIsOneEverywhere) {
  const std::vector<RunRecord> records = {record("p1", "A", 7), record("p2", "A", 9)};
  const auto curves = performance_profile(records, Metric::kIters);
  ASSERT_EQ(curves.size(), 1u);
  EXPECT_DOUBLE_EQ(curves[0].at(1.0), 1.0);
  EXPECT_EQ(curves[0].metric, Metric::kIters);
}

TEST(Profile, EmptyInputGivesNoCurves) {
  EXPECT_TRUE(performance_profile({}, Metric::kNf).empty());
}

TEST(Profile, RejectsIncompleteGridAndDuplicates) {
  const std::vector<RunRecord> gap = {record("p1", "A", 1), record("p2", "A", 1),
                                      record("p1", "B", 1)};
  EXPECT_THROW(performance_profile(gap, Metric::kNf), ProfileError);
  const std::vector<RunRecord> dup = {record("p1", "A", 1), record("p1", "A", 2)};
  EXPECT_THROW(performance_profile(dup, Metric::kNf), ProfileError);
}

TEST(Profile, CurvesAreMonotoneAndBounded) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> cost(1, 50);
  std::bernoulli_distribution fails(0.2);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<RunRecord> records;
    for (int p = 0; p < 8; ++p) {
      for (const char* s : {"A", "B", "C"}) {
        records.push_back(record("p" + std::to_string(p), s, cost(rng),
                                 fails(rng) ? RunStatus::kMaxNf : RunStatus::kConverged));
      }
    }
    for (Metric m : {Metric::kIters, Metric::kNf, Metric::kNg, Metric::kTime}) {
      for (const ProfileCurve& c : performance_profile(records, m)) {
        double prev_tau = 0.0, prev_frac = 0.0;
        for (const ProfilePoint& p : c.points) {
          EXPECT_GT(p.tau, prev_tau);
          EXPECT_GE(p.tau, 1.0);
          EXPECT_GE(p.fraction, prev_frac);
          EXPECT_LE(p.fraction, 1.0);
          prev_tau = p.tau;
          prev_frac = p.fraction;
        }
        EXPECT_LE(prev_frac, c.solved_fraction + 1e-15);
      }
    }
  }
}

TEST(Profile, MetricNamesRoundTrip) {
  for (Metric m : {Metric::kIters, Metric::kNf, Metric::kNg, Metric::kTime}) {
    EXPECT_EQ(parse_metric(to_string(m)), m);
  }
  EXPECT_FALSE(parse_metric("flops").has_value());
}

BenchPlan small_plan() {
  BenchPlan plan;
  plan.problems = {{"sphere", 10}, {"ext_rosenbrock", 10}};
  plan.solvers = {"gm_aos_cr", "bb"};
  return plan;
}

TEST(RunSuite, RecordsAreSortedAndComplete) {
  const auto records = run_suite(small_plan());
  ASSERT_EQ(records.size(), 4u);
  EXPECT_EQ(records[0].problem_name, "ext_rosenbrock");
  EXPECT_EQ(records[0].solver_name, "bb");
  EXPECT_EQ(records[1].solver_name, "gm_aos_cr");
  EXPECT_EQ(records[3].problem_name, "sphere");
  for (const RunRecord& r : records) {
    EXPECT_EQ(r.status, RunStatus::kConverged);
    EXPECT_EQ(r.n, 10u);
  }
}

TEST(RunSuite, ThreadCountDoesNotChangeResults) {
  BenchPlan plan = small_plan();
  const auto serial = run_suite(plan);
  plan.threads = 3;
  const auto parallel = run_suite(plan);
  ASSERT_EQ(serial.size(), parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    EXPECT_EQ(serial[i].problem_name, parallel[i].problem_name);
    EXPECT_EQ(serial[i].solver_name, parallel[i].solver_name);
    EXPECT_EQ(serial[i].iters, parallel[i].iters);
    EXPECT_EQ(serial[i].nf, parallel[i].nf);
    EXPECT_EQ(serial[i].final_f, parallel[i].final_f);
  }
}

TEST(RunSuite, IterationCapIsReported) {
  BenchPlan plan;
  plan.problems = {{"gen_rosenbrock", 50}};
  plan.solvers = {"gm_aos_cr"};
  plan.config.max_iter = 3;
  const auto records = run_suite(plan);
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].status, RunStatus::kMaxIter);
}

TEST(RunSuite, RejectsInvalidPlans) {
  BenchPlan plan = small_plan();
  plan.solvers = {"lbfgs"};
  EXPECT_THROW(run_suite(plan), std::invalid_argument);
  plan = small_plan();
  plan.problems = {{"no_such_problem", 10}};
  EXPECT_THROW(run_suite(plan), std::invalid_argument);
  plan = small_plan();
  plan.problems = {{"ext_rosenbrock", 9}};
  EXPECT_THROW(run_suite(plan), std::invalid_argument);
  plan = small_plan();
  plan.problems.clear();
  EXPECT_THROW(run_suite(plan), std::invalid_argument);
}

TEST(ThreadsFromEnv, ParsesVariable) {
  ::setenv("GMAOS_THREADS", "4", 1);
  EXPECT_EQ(threads_from_env(1), 4u);
  ::setenv("GMAOS_THREADS", "zero", 1);
  EXPECT_EQ(threads_from_env(2), 2u);
  ::unsetenv("GMAOS_THREADS");
  EXPECT_EQ(threads_from_env(1), 1u);
}

TEST(Csv, RecordsRoundTripExactly) {
  auto records = run_suite(small_plan());
  records[0].final_f = 0.1 + 0.2;
  records[1].final_f = std::numeric_limits<double>::denorm_min();
  records[2].status = RunStatus::kLinesearchFailure;
  const auto path = scratch_dir() / "records.csv";
  write_records_csv(path, records);
  EXPECT_EQ(line_count(path), 5u);
  const auto back = read_records_csv(path);
  ASSERT_EQ(back.size(), records.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].problem_name, records[i].problem_name);
    EXPECT_EQ(back[i].n, records[i].n);
    EXPECT_EQ(back[i].solver_name, records[i].solver_name);
    EXPECT_EQ(back[i].status, records[i].status);
    EXPECT_EQ(back[i].iters, records[i].iters);
    EXPECT_EQ(back[i].nf, records[i].nf);
    EXPECT_EQ(back[i].ng, records[i].ng);
    EXPECT_EQ(back[i].wall_time_seconds, records[i].wall_time_seconds);
    EXPECT_EQ(back[i].final_f, records[i].final_f);
    EXPECT_EQ(back[i].final_gnorm_inf, records[i].final_gnorm_inf);
  }
}

TEST(Csv, EmptyProfileWritesHeaderOnly) {
  const auto path = scratch_dir() / "profile_empty.csv";
  write_profile_csv(path, {});
  std::ifstream in(path);
  std::string line;
  ASSERT_TRUE(std::getline(in, line));
  EXPECT_EQ(line, kProfileCsvHeader);
  EXPECT_FALSE(std::getline(in, line));
}

TEST(Csv, ReportsBadInput) {
  const auto dir = scratch_dir();
  EXPECT_THROW(read_records_csv(dir / "missing.csv"), std::runtime_error);
  {
    std::ofstream out(dir / "bad.csv");
    out << kRecordsCsvHeader << "\nsphere,10,bb,converged,x,1,1,0,0,0\n";
  }
  try {
    read_records_csv(dir / "bad.csv");
    FAIL() << "expected an error";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("bad.csv:2"), std::string::npos) << e.what();
  }
  EXPECT_THROW(write_records_csv(dir / "bad.csv" / "nested.csv", {}), std::runtime_error);
}

TEST(Outputs, EmitsEveryRequestedFile) {
  BenchPlan plan = small_plan();
  plan.config.record_trace = true;
  const auto records = run_suite(plan);
  std::vector<ProfileCurve> curves = performance_profile(records, Metric::kNf);
  const auto more = performance_profile(records, Metric::kTime);
  curves.insert(curves.end(), more.begin(), more.end());

  const auto dir = scratch_dir() / "out";
  std::filesystem::remove_all(dir);
  OutputPaths paths;
  paths.records_csv = dir / "records.csv";
  paths.profile_csv = dir / "profile.csv";
  paths.plot_prefix = dir / "profile";
  paths.trace_csv = dir / "trace.csv";
  emit_outputs(records, curves, paths);

  EXPECT_EQ(line_count(*paths.records_csv), 5u);
  std::size_t points = 0;
  for (const ProfileCurve& c : curves) points += c.points.size();
  EXPECT_EQ(line_count(*paths.profile_csv), points + 1);
  std::size_t steps = 0;
  for (const RunRecord& r : records) steps += r.trace.size();
  EXPECT_EQ(line_count(*paths.trace_csv), steps + 1);
  for (const char* svg : {"profile_nf.svg", "profile_time.svg"}) {
    std::ifstream in(dir / svg);
    ASSERT_TRUE(in) << svg;
    std::string first;
    std::getline(in, first);
    EXPECT_EQ(first.rfind("<svg", 0), 0u);
  }
}

}  // namespace
}  // namespace gmaos
