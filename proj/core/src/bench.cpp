#include "gmaos/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <tuple>

#include "gmaos/test_problems.hpp"

namespace gmaos {

unsigned threads_from_env(unsigned fallback) {
  const char* raw = std::getenv("GMAOS_THREADS");
  if (raw == nullptr || *raw == '\0') return fallback;
  char* end = nullptr;
  const long value = std::strtol(raw, &end, 10);
  if (end == raw || *end != '\0' || value < 1) return fallback;
  return static_cast<unsigned>(value);
}

std::vector<RunRecord> run_suite(const BenchPlan& plan) {
  if (plan.problems.empty()) throw std::invalid_argument("bench plan has no problems");
  if (plan.solvers.empty()) throw std::invalid_argument("bench plan has no solvers");
  for (const std::string& s : plan.solvers) {
    if (s != kGmAosCr && s != kBb) throw std::invalid_argument("unknown solver '" + s + "'");
  }

  std::vector<Problem> problems;
  problems.reserve(plan.problems.size());
  for (const ProblemSpec& spec : plan.problems) problems.push_back(make_problem(spec.name, spec.n));

  struct Task {
    const Problem* problem;
    const std::string* solver;
  };
  std::vector<Task> tasks;
  for (const Problem& p : problems) {
    for (const std::string& s : plan.solvers) tasks.push_back({&p, &s});
  }

  std::vector<RunRecord> records(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        records[i] = run_solver(*tasks[i].solver, *tasks[i].problem, plan.config);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  const unsigned threads =
      std::max(1u, std::min<unsigned>(plan.threads, static_cast<unsigned>(tasks.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  std::sort(records.begin(), records.end(), [](const RunRecord& a, const RunRecord& b) {
    return std::tie(a.problem_name, a.n, a.solver_name) <
           std::tie(b.problem_name, b.n, b.solver_name);
  });
  return records;
}

}  // namespace gmaos
