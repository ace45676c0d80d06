#include "accwb/oracle.hpp"

#include <bit>

#include "accwb/error.hpp"

namespace accwb {

namespace {

void check_cap(const Circuit& c, std::size_t cap) {
  if (c.n_inputs() > cap)
    throw Error(ErrorKind::ResourceLimit, "circuit '" + c.name() + "' has " + std::to_string(c.n_inputs()) +
                                              " inputs, enumeration cap is " + std::to_string(cap));
}

std::uint64_t block_count(std::size_t n) { return n >= 6 ? (std::uint64_t{1} << (n - 6)) : 1; }

std::uint64_t block_points(std::size_t n) { return n >= 6 ? 64 : (std::uint64_t{1} << n); }

}  // namespace

std::optional<Bits> brute_sat(const Circuit& circuit, std::size_t cap, BruteMetrics* metrics) {
  check_cap(circuit, cap);
  const std::size_t n = circuit.n_inputs();
  BlockSimulator sim(circuit);
  const std::uint64_t blocks = block_count(n);
  for (std::uint64_t b = 0; b < blocks; ++b) {
    const std::uint64_t lanes = sim.run(b * 64);
    if (metrics) {
      metrics->points += block_points(n);
      metrics->gate_evals += block_points(n) * circuit.size();
    }
    if (lanes != 0) return index_to_assignment(b * 64 + static_cast<std::uint64_t>(std::countr_zero(lanes)), n);
  }
  return std::nullopt;
}

std::uint64_t brute_count(const Circuit& circuit, std::size_t cap, BruteMetrics* metrics) {
  check_cap(circuit, cap);
  const std::size_t n = circuit.n_inputs();
  BlockSimulator sim(circuit);
  std::uint64_t total = 0;
  const std::uint64_t blocks = block_count(n);
  for (std::uint64_t b = 0; b < blocks; ++b) total += static_cast<std::uint64_t>(std::popcount(sim.run(b * 64)));
  if (metrics) {
    metrics->points += std::uint64_t{1} << n;
    metrics->gate_evals += (std::uint64_t{1} << n) * circuit.size();
  }
  return total;
}

std::optional<Bits> brute_equiv(const Circuit& a, const Circuit& b, std::size_t cap) {
  if (a.n_inputs() != b.n_inputs())
    throw Error(ErrorKind::InputArity, "circuits have different input counts (" + std::to_string(a.n_inputs()) +
                                           " vs " + std::to_string(b.n_inputs()) + ")");
  check_cap(a, cap);
  const std::size_t n = a.n_inputs();
  BlockSimulator sa(a), sb(b);
  const std::uint64_t blocks = block_count(n);
  for (std::uint64_t blk = 0; blk < blocks; ++blk) {
    const std::uint64_t diff = sa.run(blk * 64) ^ sb.run(blk * 64);
    if (diff != 0)
      return index_to_assignment(blk * 64 + static_cast<std::uint64_t>(std::countr_zero(diff)), n);
  }
  return std::nullopt;
}

}  // namespace accwb
