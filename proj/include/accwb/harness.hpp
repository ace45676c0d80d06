#pragma once

#include <optional>
#include <string>
#include <vector>

#include "accwb/acc_sat.hpp"
#include "accwb/consistency.hpp"
#include "accwb/succinct.hpp"

namespace accwb {

struct StageReport {
  std::string stage;
  std::size_t circuit_size = 0;
  std::size_t circuit_inputs = 0;
  std::size_t acc_depth = 0;
  bool passed = true;
  SatMetrics metrics;
};

struct HarnessReport {
  bool accepted = false;
  /// Name of the stage that rejected, empty on acceptance.
  std::string rejected_at;
  std::optional<std::uint64_t> violated_clause;
  std::optional<Bits> exposing_input;
  std::optional<GateId> exposing_gate;
  std::vector<StageReport> stages;

  /// One "stage=..." line per stage, then "verdict=ACCEPT|REJECT ...".
  std::string to_text() const;
};

/// Builds D from (x, W) and accepts iff NOT D is unsatisfiable.
HarnessReport satalg3(const Circuit& x, const Circuit& W, const ClauseEncoding& enc,
                      SatBackend backend = SatBackend::Brute, const AccSatParams& params = {});

/// x' = C with j hardwired to the output gate j* of to_tuple_form(x).
Circuit output_projection(const Circuit& x, const WireValueCandidate& c);

/// Stage "consistency": NOT E' must be unsatisfiable. Stage "clause-check":
/// satalg3 on (x', W).
HarnessReport satalg5(const Circuit& x, const Circuit& W, const WireValueCandidate& c, const ClauseEncoding& enc,
                      SatBackend backend = SatBackend::Brute, const AccSatParams& params = {});

/// Enumerates the truth tables of witnesses with 0..max_inputs inputs (at
/// most 3) in order of size then table value and returns the first one that
/// satisfies T(x), realized as a ROM circuit.
std::optional<Circuit> search_witness(const Circuit& x, const ClauseEncoding& enc, std::size_t max_inputs = 3,
                                      std::optional<std::uint64_t> V = std::nullopt);

}  // namespace accwb
