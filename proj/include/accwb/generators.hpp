#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "accwb/circuit.hpp"

namespace accwb {

/// Seeded source with platform-independent bounded draws (the standard
/// distributions are not reproducible across library implementations).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform in [lo, hi].
  std::int64_t range(std::int64_t lo, std::int64_t hi);
  bool coin() { return (engine_() >> 63) != 0; }
  bool chance(double p) { return static_cast<double>(engine_() >> 11) * 0x1.0p-53 < p; }
  Bits bits(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

struct RandomCircuitSpec {
  std::size_t n = 4;
  /// Non-input gates.
  std::size_t gates = 10;
  std::size_t max_fanin = 3;
  bool allow_mod = false;
  std::vector<std::uint32_t> moduli{2, 3};
  bool allow_const = false;
};

/// Arbitrary DAG; the output is the last gate. MOD-free unless allow_mod.
Circuit random_circuit(const RandomCircuitSpec& spec, Rng& rng);

struct SymAndSpec {
  std::size_t n = 8;
  std::size_t children = 16;
  std::size_t min_literals = 1;
  std::size_t max_literals = 3;
  GateKind top = GateKind::Mod;
  std::uint32_t modulus = 6;
  double negative_fraction = 0.5;
};

/// Symmetric top gate over ANDs of literals.
Circuit sym_and_circuit(const SymAndSpec& spec, Rng& rng);

struct LayeredSpec {
  std::size_t n = 8;
  /// Depth counting AND/OR/MOD gates; at least 2.
  std::size_t depth = 3;
  /// Gates per internal layer.
  std::size_t width = 4;
  std::size_t fanin = 3;
  std::uint32_t modulus = 6;
  /// Mix MOD_2 and MOD_3 gates instead of a single modulus.
  bool mixed_moduli = false;
};

/// Layered ACC circuit of exactly the requested depth: ANDs of literals at the
/// bottom, then layers cycling through MOD, OR, AND, under one MOD top gate.
Circuit layered_acc_circuit(const LayeredSpec& spec, Rng& rng);

}  // namespace accwb
