#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "accwb/circuit.hpp"
#include "accwb/decompose.hpp"

namespace accwb {

enum class BlowupPolicy {
  /// Fix the k highest-index inputs.
  HighestIndex,
  /// Fix the k inputs with the largest fanout (ties go to the higher index).
  Fanout,
};

struct Blowup {
  /// OR of the 2^k restrictions, inputs = the free variables in order.
  Circuit circuit;
  /// Gate count before constant folding.
  std::size_t unfolded_size = 0;
  std::vector<std::size_t> fixed;
  std::vector<std::size_t> free;
};

Blowup blowup(const Circuit& circuit, std::size_t k, BlowupPolicy policy = BlowupPolicy::HighestIndex,
              bool fold = true);

/// blowup(...).circuit.
Circuit k_blowup(const Circuit& circuit, std::size_t k, BlowupPolicy policy = BlowupPolicy::HighestIndex,
                 bool fold = true);

struct AccSatParams {
  DecompositionParams decomposition{.verify = false};
  /// Explicit k; when unset the planning formula is used.
  std::optional<std::size_t> k;
  BlowupPolicy policy = BlowupPolicy::HighestIndex;
  /// Fall back to brute force (flagged in the metrics) for circuits outside
  /// the decomposition class.
  bool allow_fallback = true;
  std::size_t brute_cap = kDefaultEnumerationCap;
};

struct SatMetrics {
  std::size_t k = 0;
  std::uint64_t K = 0;
  std::uint64_t pre_merge_terms = 0;
  std::uint64_t eval_points = 0;
  std::uint64_t gate_evals = 0;
  std::uint64_t monomial_ops = 0;
  std::uint64_t table_entries = 0;
  std::uint64_t blowup_gates = 0;
  bool fallback = false;

  /// Everything counted above that costs work.
  std::uint64_t total_work() const {
    return eval_points + gate_evals + monomial_ops + table_entries + blowup_gates;
  }
};

struct SatResult {
  bool satisfiable = false;
  std::optional<Bits> witness;
  SatMetrics metrics;
  std::vector<StageRecord> trace;
};

/// k = floor(n^{1/(2f)}) with f from estimate_f (or the params' estimate),
/// lowered until 2^k * s fits the K budget, clamped to [0, n]. An explicit k
/// is returned as is when within [0, n].
std::size_t choose_k(const CircuitStats& stats, const AccSatParams& params);

SatResult acc_sat(const Circuit& circuit, const AccSatParams& params = {});

enum class SatBackend { Brute, Acc };

const char* to_string(SatBackend backend);
SatBackend parse_backend(std::string_view name);

/// Satisfiability of `circuit` by the chosen backend. Brute reports its counts
/// in eval_points / gate_evals with fallback unset.
SatResult solve_sat(const Circuit& circuit, SatBackend backend, const AccSatParams& params = {});

enum class GapVerdict { Unsat, Dense };

struct GapResult {
  GapVerdict verdict = GapVerdict::Unsat;
  /// 1-points of the blown-up circuit.
  std::uint64_t count = 0;
  SatMetrics metrics;
};

/// Under the promise "unsatisfiable or accepts at least half the inputs".
/// Outside the promise, Dense means only "count > 0".
GapResult gap_sat(const Circuit& circuit, const AccSatParams& params = {});

}  // namespace accwb
