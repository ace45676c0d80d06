#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "accwb/circuit.hpp"
#include "accwb/cnf.hpp"
#include "accwb/generators.hpp"

namespace accwb {

/// How a truth table spells a 3-CNF. Clause i occupies table indices
/// [i * record_width, (i + 1) * record_width): four fields of L bits, the
/// first three holding literals and the fourth all zero. A literal field is,
/// from its first bit on: L - w - 1 zero pad bits, the sign bit (1 = negated),
/// and the w-bit variable index, most significant bit first. Index 0 marks an
/// absent literal; a clause with no literal at all is padding.
struct ClauseEncoding {
  std::size_t w = 1;
  std::size_t L = 2;
  std::size_t record_width = 8;
  std::size_t record_bits = 3;  // log2(record_width)
  std::size_t field_bits = 1;   // log2(L)

  std::uint64_t max_var() const { return (std::uint64_t{1} << w) - 1; }
  /// Clause-index bits of a table with `table_inputs` inputs.
  std::size_t clause_count_bits(std::size_t table_inputs) const;
};

ClauseEncoding make_encoding(std::size_t w);

/// Decodes T(x). The variable count is `V` when given (indices above it are
/// a decode error), otherwise 2^w - 1.
Formula3CNF decode_formula(const Circuit& x, const ClauseEncoding& enc, std::optional<std::uint64_t> V = std::nullopt,
                           std::size_t cap = kDefaultEnumerationCap);

/// ROM circuit whose table decodes to f. The clause index gets enough bits
/// for all clauses, and at least `min_clause_bits`.
Circuit encode_formula(const Formula3CNF& f, const ClauseEncoding& enc, std::size_t min_clause_bits = 0);

/// Circuit with ceil(log2 |bits|) inputs whose table starts with `bits`, the
/// rest zero.
Circuit encode_assignment(const Bits& bits);

/// Value W assigns to variable v: T(W)[v - 1], or 0 past the end of T(W).
bool witness_value(const Circuit& W, std::uint64_t v);

struct WitnessCheck {
  bool satisfied = true;
  std::optional<std::uint64_t> violated_clause;
  std::uint64_t records = 0;
  /// Most table bits held at once while streaming.
  std::size_t peak_buffered_bits = 0;
};

/// Streams the clauses of T(x) one record at a time and checks each against W.
/// Stops at the first violated clause.
WitnessCheck check_witness_detailed(const Circuit& x, const Circuit& W, const ClauseEncoding& enc,
                                    std::optional<std::uint64_t> V = std::nullopt,
                                    std::size_t cap = kDefaultEnumerationCap);

bool check_witness(const Circuit& x, const Circuit& W, const ClauseEncoding& enc,
                   std::optional<std::uint64_t> V = std::nullopt);

/// D(i) = 1 iff clause i of T(x) is satisfied by W or is padding. Built from
/// 3 (w + 1) copies of x (one per sign or index bit of each literal field)
/// and 3 copies of W.
Circuit build_clause_check_circuit(const Circuit& x, const Circuit& W, const ClauseEncoding& enc);

/// Decode, then decide the 3-CNF by complete search.
bool succinct_brute(const Circuit& x, const ClauseEncoding& enc, std::optional<std::uint64_t> V = std::nullopt);

/// Random 3-CNF over V variables all of whose clauses are satisfied by the
/// returned assignment.
std::pair<Formula3CNF, Bits> planted_formula(std::uint64_t V, std::size_t clauses, Rng& rng);

/// Uniformly random 3-CNF, no planted model.
Formula3CNF random_formula(std::uint64_t V, std::size_t clauses, Rng& rng);

}  // namespace accwb
