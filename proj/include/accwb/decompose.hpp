#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "accwb/circuit.hpp"
#include "accwb/error.hpp"
#include "accwb/multilinear.hpp"

namespace accwb {

struct Literal {
  std::size_t var = 0;
  bool positive = true;

  bool operator==(const Literal&) const = default;
};

/// Exact 0/1 polynomial of the AND of the literals: the product of x_i and
/// (1 - x_i) factors, expanded. Variables must be distinct.
MultilinearPoly and_to_monomials(std::size_t n_vars, const std::vector<Literal>& literals);

struct DecompositionParams {
  /// Hard cap on the monomial count of h (and of every intermediate polynomial).
  std::uint64_t k_budget = std::uint64_t{1} << 26;
  /// Hard cap on the number of entries of a symmetric lookup table.
  std::uint64_t table_budget = std::uint64_t{1} << 26;
  /// Largest accepted depth, counted without NOT gates.
  std::size_t depth_limit = 4;
  /// Gates over exact children are expanded exactly when the expansion is
  /// estimated to stay within this many terms.
  std::uint64_t exact_expand_cap = 4096;
  bool normalize = true;
  bool unify_moduli = true;
  bool sym_collapse = true;
  /// Exponent used for the logged K bound; 0 derives it from estimate_f.
  double f_estimate = 0;
  /// Check the result against the circuit: exhaustively for n <= 14, on
  /// random points otherwise.
  bool verify = true;
  std::uint64_t verify_points = 10000;
  std::uint64_t verify_seed = 1;
};

struct StageRecord {
  std::string name;
  std::size_t gates = 0;
  std::uint64_t monomials = 0;
};

struct Decomposition {
  SymFunction g{0, 0, {0}};
  MultilinearPoly h;
  /// Monomials of h after merging.
  std::uint64_t K = 0;
  /// Terms emitted for the top-level sum before merging.
  std::uint64_t pre_merge_terms = 0;
  std::vector<StageRecord> trace;
  /// Lookup-table entries computed while building g.
  std::uint64_t table_entries = 0;
  /// Which construction produced the result: "sym-and" or "depth-reduction".
  std::string method;
  double f_estimate = 1;
  /// log2 of 2^{(log2 s)^f}, the asymptotic K target for comparison.
  double log2_k_target = 0;
};

/// Failure that carries the stages completed so far.
class DecompositionError : public Error {
 public:
  DecompositionError(ErrorKind kind, const std::string& message, std::vector<StageRecord> trace,
                     std::uint64_t attained)
      : Error(kind, message), trace_(std::move(trace)), attained_(attained) {}

  const std::vector<StageRecord>& trace() const noexcept { return trace_; }
  std::uint64_t attained() const noexcept { return attained_; }

 private:
  std::vector<StageRecord> trace_;
  std::uint64_t attained_;
};

/// Depth-2 form: a top AND/OR/MOD gate (optionally under one NOT) whose
/// children are literals, constants, or ANDs of literals and constants.
struct SymAndChild {
  bool is_const = false;
  bool value = false;
  std::vector<Literal> literals;
};

struct SymAndForm {
  GateKind top = GateKind::Or;
  std::uint32_t modulus = 0;
  bool negated = false;
  std::vector<SymAndChild> children;
};

std::optional<SymAndForm> match_sym_and(const Circuit& circuit);

Decomposition decompose_sym_and(const Circuit& circuit, const DecompositionParams& params = {});

Decomposition decompose_acc(const Circuit& circuit, const DecompositionParams& params = {});

/// Planning exponent: max(1, (d - 1) * floor(log2 m)). Monotone in both.
double estimate_f(std::size_t depth, std::uint32_t modulus);

/// First mismatch between g(h(x)) and the circuit, if any.
std::optional<Bits> check_decomposition(const Circuit& circuit, const Decomposition& d,
                                        std::uint64_t random_points = 10000, std::uint64_t seed = 1);

/// One "stage=<name> gates=<s> monomials=<K>" line per stage.
std::string trace_to_text(const std::vector<StageRecord>& trace);

}  // namespace accwb
