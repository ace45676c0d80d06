#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "accwb/acc_sat.hpp"
#include "accwb/circuit.hpp"

namespace accwb {

/// Gate type tags. The two-bit code is the enum value, first bit the high one.
enum class GateTag : std::uint8_t { Input = 0, And = 1, Or = 2, Not = 3 };

const char* to_string(GateTag tag);

/// <j, j1, j2, g>. j1 = j2 = 0 for inputs; NOT uses j1 only and has j2 = 0.
struct GateTuple {
  GateId j = 0;
  GateId j1 = 0;
  GateId j2 = 0;
  GateTag g = GateTag::Input;

  bool operator==(const GateTuple&) const = default;
};

/// The circuit the tuples describe: constants eliminated, fan-in two, no MOD.
/// Gate numbers in tuples, candidates and E' all refer to this form. Throws
/// UnsupportedGate on MOD gates.
Circuit to_tuple_form(const Circuit& x);

/// One tuple per gate of to_tuple_form(x), in gate order.
std::vector<GateTuple> tuples(const Circuit& x);

/// Rebuilds a circuit from tuples.
Circuit circuit_from_tuples(std::size_t n_inputs, const std::vector<GateTuple>& tuples, GateId output);

/// Bits needed for a gate number j in 1..s carried as j - 1.
std::size_t gate_index_bits(std::size_t s);

/// G_x as a bundle of single-output circuits on the j - 1 bits. The j1 and
/// j2 fields also carry their gate number minus one (0 when the slot is
/// unused), so they can feed a candidate's j input directly.
struct GxBundle {
  std::size_t j_bits = 0;
  std::vector<Circuit> j1;   // most significant bit first
  std::vector<Circuit> j2;
  std::vector<Circuit> tag;  // two bits

  struct Entry {
    std::uint64_t j1 = 0;
    std::uint64_t j2 = 0;
    GateTag g = GateTag::Input;
  };
  /// Reads the three fields back by evaluating the bundle on j (1-based).
  Entry lookup(GateId j) const;
};

GxBundle build_gx(const Circuit& x);

/// t(b1, b2, b, g) = 1 iff g(b1, b2) = b; NOT ignores b2, INPUT is always 1.
bool gate_check_t(bool b1, bool b2, bool b, GateTag g);

/// t as a circuit with inputs b1, b2, b, g_hi, g_lo.
Circuit gate_check_circuit();

/// C(i, j) claims the value of gate j of to_tuple_form(x) on input i. Inputs:
/// the n bits of i, then j - 1 in j_bits bits, most significant first.
struct WireValueCandidate {
  Circuit circuit;
  std::size_t n = 0;
  std::size_t s = 0;
  std::size_t j_bits = 0;

  bool value(std::span<const std::uint8_t> i, GateId j) const;
};

/// Correct candidate: x's own gates on i, selected by a multiplexer on j.
WireValueCandidate make_wire_value_circuit(const Circuit& x);

/// Candidate whose output on the single point (i, j) is flipped.
WireValueCandidate corrupt_candidate(const WireValueCandidate& c, std::uint64_t i, GateId j);

/// Candidate defined by an explicit table over (i, j - 1), e.g. a guess.
WireValueCandidate candidate_from_table(const TruthTable& table, std::size_t n, std::size_t s);

enum class ConsistencyLayout {
  /// E'(i): the conjunction over j unrolled with j hardwired, n inputs.
  Unrolled,
  /// E(i, j) with j - 1 as extra inputs, G_x and t as in the figure. Values of
  /// j - 1 at or past s give 1.
  JInput,
};

Circuit build_consistency_circuit(const Circuit& x, const WireValueCandidate& c,
                                  ConsistencyLayout layout = ConsistencyLayout::Unrolled);

struct WireCheck {
  bool correct = true;
  /// Input on which the candidate is wrong, and the first wrong gate there.
  std::optional<Bits> exposing_input;
  std::optional<GateId> exposing_gate;
  SatMetrics metrics;
  std::size_t consistency_size = 0;
};

WireCheck verify_wire_circuit(const Circuit& x, const WireValueCandidate& c, SatBackend backend = SatBackend::Brute,
                              const AccSatParams& params = {},
                              ConsistencyLayout layout = ConsistencyLayout::Unrolled);

}  // namespace accwb
