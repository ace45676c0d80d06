#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "accwb/truth_table.hpp"

namespace accwb {

/// Gate ids are 1-based and topological; 0 is never a valid gate.
using GateId = std::uint32_t;

/// Bit sequences (assignments, traces) hold one 0/1 value per byte.
using Bits = std::vector<std::uint8_t>;

/// Table materialization limit: 2^24 points.
inline constexpr std::size_t kDefaultEnumerationCap = 24;

enum class GateKind : std::uint8_t { Input, Const, Not, And, Or, Mod };

const char* to_string(GateKind kind);

struct Gate {
  GateId id = 0;
  GateKind kind = GateKind::Input;
  /// Input index for Input, the bit for Const, the modulus for Mod; 0 otherwise.
  std::uint32_t param = 0;
  std::vector<GateId> fanin;

  bool operator==(const Gate&) const = default;
};

/// Immutable gate DAG with unbounded fan-in AND/OR/MOD_m gates and a single
/// output. Gates 1..n are INPUT 0..n-1 in order; every fanin id is smaller than
/// the id of the gate using it. The constructor enforces all of this.
class Circuit {
 public:
  Circuit(std::string name, std::size_t n_inputs, std::vector<Gate> gates, GateId output);

  const std::string& name() const noexcept { return name_; }
  std::size_t n_inputs() const noexcept { return n_inputs_; }
  std::size_t size() const noexcept { return gates_.size(); }
  std::span<const Gate> gates() const noexcept { return gates_; }
  const Gate& gate(GateId id) const { return gates_.at(id - 1); }
  GateId output() const noexcept { return output_; }

  Circuit renamed(std::string name) const;

  bool operator==(const Circuit&) const = default;

 private:
  std::string name_;
  std::size_t n_inputs_;
  std::vector<Gate> gates_;
  GateId output_;
};

/// Incremental construction. Input gates are created up front; every add_*
/// returns the id of the new gate.
class CircuitBuilder {
 public:
  explicit CircuitBuilder(std::size_t n_inputs, std::string name = "c");

  std::size_t n_inputs() const noexcept { return n_inputs_; }
  std::size_t size() const noexcept { return gates_.size(); }
  GateId input(std::size_t index) const;

  GateId add(GateKind kind, std::uint32_t param, std::vector<GateId> fanin);
  GateId add_const(bool value) { return add(GateKind::Const, value ? 1 : 0, {}); }
  GateId add_not(GateId a) { return add(GateKind::Not, 0, {a}); }
  GateId add_and(std::vector<GateId> fanin) { return add(GateKind::And, 0, std::move(fanin)); }
  GateId add_or(std::vector<GateId> fanin) { return add(GateKind::Or, 0, std::move(fanin)); }
  GateId add_mod(std::uint32_t modulus, std::vector<GateId> fanin) {
    return add(GateKind::Mod, modulus, std::move(fanin));
  }
  GateId add_xor(GateId a, GateId b);
  GateId add_xnor(GateId a, GateId b);

  /// Shared constant gates, created on first use.
  GateId const_gate(bool value);

  /// Inlines a copy of `circuit`, wiring its input k to input_map[k]. Returns
  /// the id that now carries the copy's output.
  GateId append(const Circuit& circuit, std::span<const GateId> input_map);

  Circuit build(GateId output) &&;

 private:
  std::size_t n_inputs_;
  std::string name_;
  std::vector<Gate> gates_;
  GateId const_ids_[2] = {0, 0};
};

/// Multiplexer on `select` (most significant first) over `leaves`: the output
/// is leaves[v] for select value v, or 0 when v is past the end.
GateId add_mux_tree(CircuitBuilder& b, std::span<const GateId> select, std::span<const GateId> leaves);

struct CircuitStats {
  std::size_t size = 0;
  std::size_t depth = 0;
  /// Depth counting only AND/OR/MOD gates; NOT gates are free, as in the
  /// usual ACC depth convention.
  std::size_t acc_depth = 0;
  std::size_t wires = 0;
  std::size_t n_inputs = 0;
  std::set<std::uint32_t> moduli;

  /// Largest modulus, or 2 for MOD-free circuits.
  std::uint32_t max_modulus() const { return moduli.empty() ? 2 : *moduli.rbegin(); }
};

CircuitStats stats(const Circuit& circuit);

bool evaluate(const Circuit& circuit, std::span<const std::uint8_t> assignment);

/// Value of every gate on `assignment`; entry j - 1 belongs to gate j.
Bits wire_trace(const Circuit& circuit, std::span<const std::uint8_t> assignment);

TruthTable truth_table(const Circuit& circuit, std::size_t cap = kDefaultEnumerationCap);

/// outer applied pointwise to the outputs of `inner`, which share one arity.
Circuit compose(const Circuit& outer, std::span<const Circuit> inner);

/// Equivalent circuit in which every AND/OR has exactly two fanins.
/// MOD gates are rejected.
Circuit normalize_fanin2(const Circuit& circuit);

/// Constant propagation followed by removal of gates the output cannot see.
/// At most one CONST gate of each value survives.
Circuit fold_constants(const Circuit& circuit);

/// Drops gates not reachable from the output (inputs always stay).
Circuit remove_dead_gates(const Circuit& circuit);

/// CONST-free equivalent: folds constants, then realizes any remaining
/// constant as x1 AND NOT x1 / x1 OR NOT x1. Needs at least one input when a
/// constant survives folding.
Circuit eliminate_constants(const Circuit& circuit);

/// De Morgan normal form: NOT gates end up only directly above inputs or
/// above MOD gates. Dead gates are removed.
Circuit push_negations(const Circuit& circuit);

/// Rewrites every MOD_a gate to MOD_L with L the lcm of the circuit's moduli,
/// repeating each fanin L / a times. The identity for the case {2, 3} is
/// MOD_2 = MOD_6 on tripled inputs, MOD_3 = MOD_6 on doubled inputs.
Circuit unify_moduli(const Circuit& circuit);

/// NOT placed on top of the output.
Circuit negate(const Circuit& circuit);

/// Read-only memory circuit: a multiplexer tree over hardwired bits whose
/// truth table equals `table` (shared identical subtrees, constant leaves).
Circuit rom_circuit(const TruthTable& table, std::string name = "rom");

/// Projection onto input `index` (0-based) of an n-input circuit.
Circuit projection(std::size_t n_inputs, std::size_t index);
Circuit constant_circuit(std::size_t n_inputs, bool value);

/// Lexicographic helpers: x1 is the most significant bit of the index.
Bits index_to_assignment(std::uint64_t index, std::size_t n);
std::uint64_t assignment_to_index(std::span<const std::uint8_t> assignment);
std::string bits_to_string(std::span<const std::uint8_t> bits);
Bits bits_from_string(std::string_view text);

/// Bit-parallel evaluation of 64 consecutive table indices at once.
class BlockSimulator {
 public:
  explicit BlockSimulator(const Circuit& circuit);

  /// Evaluates indices base .. base + 63 (base must be a multiple of 64, or 0
  /// when the circuit has fewer than 6 inputs). Lane l of the result holds the
  /// output on index base + l; lanes past 2^n are zero.
  std::uint64_t run(std::uint64_t base);

  /// Per-gate lane words of the last run, entry j - 1 for gate j.
  std::span<const std::uint64_t> values() const noexcept { return values_; }

 private:
  const Circuit* circuit_;
  std::vector<std::uint64_t> values_;
  std::vector<std::uint64_t> residues_;
};

}  // namespace accwb
