#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "accwb/acc_sat.hpp"

namespace accwb {

struct BenchSpec {
  /// "sym-and" or "acc-depth-3".
  std::string suite = "sym-and";
  std::size_t n_min = 16;
  std::size_t n_max = 24;
  std::size_t instances = 3;
  std::uint64_t seed = 1;
  std::optional<std::size_t> k;
  std::uint64_t k_budget = std::uint64_t{1} << 26;
  std::size_t jobs = 1;
};

struct BenchRow {
  std::string family;
  std::size_t n = 0;
  std::size_t instance = 0;
  std::size_t size = 0;
  bool satisfiable = false;
  SatMetrics metrics;
  /// Gate evaluations of exhaustive enumeration: size * 2^n.
  std::uint64_t brute_work = 0;
  double wall_ms = 0;
};

struct BenchSummary {
  struct PerN {
    std::size_t n = 0;
    std::uint64_t acc_work = 0;
    std::uint64_t brute_work = 0;
    double ratio = 0;
  };
  std::vector<PerN> per_n;
  /// Smallest n from which every larger n in the sweep has ratio < 1.
  std::optional<std::size_t> n0;
  /// Ratio strictly decreasing over the whole sweep.
  bool monotone = false;
};

/// Circuit for one bench instance; deterministic in (suite, n, instance, seed).
Circuit bench_instance(const BenchSpec& spec, std::size_t n, std::size_t instance);

std::vector<BenchRow> run_bench(const BenchSpec& spec);
BenchSummary summarize(const std::vector<BenchRow>& rows);

/// Tab-separated table with a header line, then "# ..." summary lines.
/// Wall time is the only nondeterministic column and can be left out.
std::string bench_to_tsv(const std::vector<BenchRow>& rows, const BenchSummary& summary, bool wall_time = true);

}  // namespace accwb
