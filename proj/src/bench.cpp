#include "accwb/bench.hpp"

#include <atomic>
#include <chrono>
#include <iomanip>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "accwb/error.hpp"
#include "accwb/generators.hpp"

namespace accwb {

Circuit bench_instance(const BenchSpec& spec, std::size_t n, std::size_t instance) {
  Rng rng(spec.seed * 1000003 + n * 1009 + instance);
  if (spec.suite == "sym-and") {
    SymAndSpec s;
    s.n = n;
    s.children = 2 * n;
    return sym_and_circuit(s, rng);
  }
  if (spec.suite == "acc-depth-3") {
    LayeredSpec s;
    s.n = n;
    s.depth = 3;
    s.width = 4;
    return layered_acc_circuit(s, rng);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown bench suite '" + spec.suite + "'");
}

std::vector<BenchRow> run_bench(const BenchSpec& spec) {
  if (spec.n_min > spec.n_max) throw Error(ErrorKind::InvalidArgument, "empty n range");
  struct Job {
    std::size_t n, instance;
  };
  std::vector<Job> jobs;
  for (std::size_t n = spec.n_min; n <= spec.n_max; ++n)
    for (std::size_t i = 0; i < spec.instances; ++i) jobs.push_back({n, i});
  std::vector<BenchRow> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_lock;
  auto worker = [&] {
    for (std::size_t idx; (idx = next++) < jobs.size();) {
      try {
        const Circuit c = bench_instance(spec, jobs[idx].n, jobs[idx].instance);
        AccSatParams params;
        params.k = spec.k;
        params.decomposition.k_budget = spec.k_budget;
        const auto start = std::chrono::steady_clock::now();
        const SatResult r = acc_sat(c, params);
        const auto stop = std::chrono::steady_clock::now();
        BenchRow& row = rows[idx];
        row.family = spec.suite;
        row.n = jobs[idx].n;
        row.instance = jobs[idx].instance;
        row.size = c.size();
        row.satisfiable = r.satisfiable;
        row.metrics = r.metrics;
        row.brute_work = static_cast<std::uint64_t>(c.size()) << row.n;
        row.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
      } catch (...) {
        std::lock_guard lock(failure_lock);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < std::max<std::size_t>(1, spec.jobs); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

BenchSummary summarize(const std::vector<BenchRow>& rows) {
  std::map<std::size_t, BenchSummary::PerN> by_n;
  for (const BenchRow& r : rows) {
    auto& p = by_n[r.n];
    p.n = r.n;
    p.acc_work += r.metrics.total_work();
    p.brute_work += r.brute_work;
  }
  BenchSummary s;
  for (auto& [n, p] : by_n) {
    p.ratio = p.brute_work == 0 ? 0 : static_cast<double>(p.acc_work) / static_cast<double>(p.brute_work);
    s.per_n.push_back(p);
  }
  for (std::size_t k = s.per_n.size(); k-- > 0;) {
    if (s.per_n[k].ratio >= 1) break;
    s.n0 = s.per_n[k].n;
  }
  s.monotone = true;
  for (std::size_t k = 1; k < s.per_n.size(); ++k) s.monotone &= s.per_n[k].ratio < s.per_n[k - 1].ratio;
  return s;
}

std::string bench_to_tsv(const std::vector<BenchRow>& rows, const BenchSummary& summary, bool wall_time) {
  std::ostringstream out;
  out << "family\tn\tinstance\tsize\tverdict\tk\tK\teval_points\tgate_evals\tmonomial_ops\ttable_entries\t"
         "blowup_gates\tacc_work\tbrute_work\tfallback";
  if (wall_time) out << "\twall_ms";
  out << '\n';
  for (const BenchRow& r : rows) {
    const SatMetrics& m = r.metrics;
    out << r.family << '\t' << r.n << '\t' << r.instance << '\t' << r.size << '\t' << (r.satisfiable ? "SAT" : "UNSAT")
        << '\t' << m.k << '\t' << m.K << '\t' << m.eval_points << '\t' << m.gate_evals << '\t' << m.monomial_ops
        << '\t' << m.table_entries << '\t' << m.blowup_gates << '\t' << m.total_work() << '\t' << r.brute_work << '\t'
        << (m.fallback ? 1 : 0);
    if (wall_time) out << '\t' << std::fixed << std::setprecision(2) << r.wall_ms << std::defaultfloat;
    out << '\n';
  }
  for (const auto& p : summary.per_n)
    out << "# n=" << p.n << " acc_work=" << p.acc_work << " brute_work=" << p.brute_work << " ratio=" << std::fixed
        << std::setprecision(6) << p.ratio << std::defaultfloat << '\n';
  out << "# n0=" << (summary.n0 ? std::to_string(*summary.n0) : std::string("none"))
      << " monotone=" << (summary.monotone ? "yes" : "no") << '\n';
  return out.str();
}

}  // namespace accwb
