#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "accwb/circuit.hpp"
#include "accwb/cnf.hpp"
#include "accwb/succinct.hpp"

namespace accwb {

enum class Move : std::uint8_t { Left, Right, Stay };

struct Transition {
  std::size_t state = 0;
  std::size_t symbol = 0;
  std::size_t next = 0;
  std::size_t write = 0;
  Move move = Move::Stay;

  bool operator==(const Transition&) const = default;
};

/// One-tape nondeterministic machine. States and symbols are numbered in
/// order of first appearance; symbol names are single characters so that an
/// input string spells symbols directly. The accept state has no outgoing
/// transitions and is treated as absorbing.
struct NTM {
  std::vector<std::string> states;
  std::vector<char> symbols;
  std::size_t start = 0;
  std::size_t accept = 0;
  std::size_t blank = 0;
  std::vector<Transition> transitions;

  std::size_t symbol_index(char c) const;
};

/// Machine text format, one directive per line ('#' starts a comment):
///   start <state>
///   accept <state>
///   blank <symbol>
///   symbols <symbol>...   (optional; symbols used in transitions are added)
///   <state> <symbol> -> <state> <symbol> <L|R|S>
NTM parse_ntm(std::string_view text);
std::string ntm_to_text(const NTM& m);

inline constexpr std::size_t kDefaultStepCap = 12;

/// Whether some path of at most t steps reaches the accept state. The tape
/// has cells 1..t with the head on cell 1 and the input from cell 1 on; a
/// move off either end ends that path without acceptance.
bool ntm_accepts(const NTM& m, std::string_view input, std::size_t t, std::size_t cap = kDefaultStepCap);

/// Where each kind of variable of the tableau formula lives. Variable numbers
/// are the concatenation (row, column - 1, slot) in (row_bits, col_bits,
/// slot_bits) bits; slot 0 is never used, so no variable is 0.
struct TableauLayout {
  std::size_t t = 0;
  std::size_t row_bits = 0;
  std::size_t col_bits = 0;
  std::size_t slot_bits = 0;
  std::size_t template_bits = 0;
  std::size_t n_templates = 0;
  std::uint64_t V = 0;

  // Slot numbers.
  std::size_t symbol_slot(std::size_t a) const { return 1 + a; }
  std::size_t state_slot(std::size_t q) const { return 1 + n_symbols + q; }
  /// "No head here" is state number n_states.
  std::size_t no_head_slot() const { return state_slot(n_states); }
  std::size_t transition_slot(std::size_t tau) const { return 1 + n_symbols + n_states + 1 + tau; }

  std::size_t n_symbols = 0;
  std::size_t n_states = 0;

  std::uint64_t variable(std::size_t row, std::size_t col, std::size_t slot) const {
    return (((static_cast<std::uint64_t>(row) << col_bits) | (col - 1)) << slot_bits) | slot;
  }
  /// Bits of a variable number: row_bits + col_bits + slot_bits.
  std::size_t var_bits() const { return row_bits + col_bits + slot_bits; }
  /// Clause index bits: (row, column - 1, template).
  std::size_t clause_bits() const { return row_bits + col_bits + template_bits; }
};

TableauLayout tableau_layout(const NTM& m, std::string_view input, std::size_t t);

/// Smallest encoding that fits the tableau variables.
ClauseEncoding tableau_encoding(const TableauLayout& layout);

/// Tableau of rows 0..t and columns 1..t, clauses in (row, column, template)
/// order. Satisfiable iff ntm_accepts(m, input, t).
Formula3CNF tableau_to_3cnf(const NTM& m, std::string_view input, std::size_t t, std::size_t cap = kDefaultStepCap);

/// Circuit on (row, column - 1, template, field, bit) whose table decodes to
/// tableau_to_3cnf(m, input, t) once pad clauses are dropped. Literal fields
/// are computed by adders and comparators on the index subfields; only the
/// per-template constants and the input string are tabulated.
Circuit clause_generator_circuit(const NTM& m, std::string_view input, std::size_t t, const ClauseEncoding& enc,
                                 std::size_t cap = kDefaultStepCap);

struct Configuration {
  std::size_t state = 0;
  std::size_t head = 1;
  std::vector<std::size_t> tape;  // cells 1..t at positions 0..t-1

  bool operator==(const Configuration&) const = default;
};

/// Rows of the tableau read back from a model of tableau_to_3cnf.
std::vector<Configuration> decode_tableau(const NTM& m, std::string_view input, std::size_t t, const CnfModel& model);

/// Whether `rows` starts in the initial configuration, each row follows from
/// the previous by a transition (or repeats it once accepted), and the last
/// row accepts.
bool replay_path(const NTM& m, std::string_view input, std::size_t t, const std::vector<Configuration>& rows);

}  // namespace accwb
