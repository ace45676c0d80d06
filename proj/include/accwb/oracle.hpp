#pragma once

#include <cstdint>
#include <optional>

#include "accwb/circuit.hpp"

namespace accwb {

/// Work done by an exhaustive scan: points visited and gate evaluations
/// (points times circuit size).
struct BruteMetrics {
  std::uint64_t points = 0;
  std::uint64_t gate_evals = 0;
};

/// Lexicographically least satisfying assignment, if any.
std::optional<Bits> brute_sat(const Circuit& circuit, std::size_t cap = kDefaultEnumerationCap,
                              BruteMetrics* metrics = nullptr);

std::uint64_t brute_count(const Circuit& circuit, std::size_t cap = kDefaultEnumerationCap,
                          BruteMetrics* metrics = nullptr);

/// Least input on which the two circuits differ, if any.
std::optional<Bits> brute_equiv(const Circuit& a, const Circuit& b, std::size_t cap = kDefaultEnumerationCap);

}  // namespace accwb
