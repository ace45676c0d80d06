#include "accwb/generators.hpp"

#include <algorithm>

#include "accwb/error.hpp"

namespace accwb {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorKind::InvalidArgument, "empty range");
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = engine_();
    if (r >= threshold) return r % bound;
  }
}

std::int64_t Rng::range(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw Error(ErrorKind::InvalidArgument, "empty range");
  return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

Bits Rng::bits(std::size_t n) {
  Bits out(n);
  for (auto& b : out) b = coin() ? 1 : 0;
  return out;
}

Circuit random_circuit(const RandomCircuitSpec& spec, Rng& rng) {
  if (spec.n == 0 && spec.gates == 0) throw Error(ErrorKind::InvalidArgument, "circuit would be empty");
  CircuitBuilder b(spec.n, "random");
  for (std::size_t k = 0; k < spec.gates; ++k) {
    const std::size_t avail = b.size();
    auto pick = [&] { return static_cast<GateId>(rng.below(avail) + 1); };
    std::uint64_t choice = rng.below(spec.allow_mod ? 5 : 4);
    if (avail == 0 || (spec.allow_const && rng.chance(0.05))) {
      b.add_const(rng.coin());
      continue;
    }
    if (choice == 0) {
      b.add_not(pick());
      continue;
    }
    const std::size_t fanin = static_cast<std::size_t>(rng.range(1, static_cast<std::int64_t>(std::max<std::size_t>(spec.max_fanin, 1))));
    std::vector<GateId> in;
    for (std::size_t f = 0; f < fanin; ++f) in.push_back(pick());
    // Favour recent gates so the output depends on most of the circuit.
    if (avail > spec.n && rng.coin()) in[0] = static_cast<GateId>(avail);
    if (choice == 1)
      b.add_and(std::move(in));
    else if (choice == 2 || choice == 3)
      b.add_or(std::move(in));
    else
      b.add_mod(spec.moduli[rng.below(spec.moduli.size())], std::move(in));
  }
  const auto out = static_cast<GateId>(b.size());
  return std::move(b).build(out);
}

namespace {

class LiteralPool {
 public:
  explicit LiteralPool(CircuitBuilder& b) : b_(b), negated_(b.n_inputs(), 0) {}

  GateId get(std::size_t var, bool positive) {
    if (positive) return b_.input(var);
    if (negated_[var] == 0) negated_[var] = b_.add_not(b_.input(var));
    return negated_[var];
  }

  /// Distinct variables, random polarities.
  std::vector<GateId> draw(std::size_t count, double negative_fraction, Rng& rng) {
    const std::size_t n = b_.n_inputs();
    std::vector<std::size_t> vars(n);
    for (std::size_t i = 0; i < n; ++i) vars[i] = i;
    count = std::min(count, n);
    for (std::size_t i = 0; i < count; ++i) std::swap(vars[i], vars[i + rng.below(n - i)]);
    std::vector<GateId> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(get(vars[i], !rng.chance(negative_fraction)));
    return out;
  }

 private:
  CircuitBuilder& b_;
  std::vector<GateId> negated_;
};

}  // namespace

Circuit sym_and_circuit(const SymAndSpec& spec, Rng& rng) {
  if (spec.n == 0 || spec.children == 0) throw Error(ErrorKind::InvalidArgument, "sym-and needs inputs and children");
  if (spec.min_literals < 1 || spec.max_literals < spec.min_literals)
    throw Error(ErrorKind::InvalidArgument, "bad literal count range");
  CircuitBuilder b(spec.n, "symand");
  LiteralPool pool(b);
  std::vector<GateId> children;
  for (std::size_t c = 0; c < spec.children; ++c) {
    const auto count = static_cast<std::size_t>(
        rng.range(static_cast<std::int64_t>(spec.min_literals), static_cast<std::int64_t>(spec.max_literals)));
    auto lits = pool.draw(count, spec.negative_fraction, rng);
    children.push_back(lits.size() == 1 ? lits[0] : b.add_and(std::move(lits)));
  }
  const GateId top = b.add(spec.top, spec.top == GateKind::Mod ? spec.modulus : 0, std::move(children));
  return std::move(b).build(top);
}

Circuit layered_acc_circuit(const LayeredSpec& spec, Rng& rng) {
  if (spec.n == 0 || spec.depth < 2 || spec.width == 0 || spec.fanin == 0)
    throw Error(ErrorKind::InvalidArgument, "layered circuits need n >= 1, depth >= 2, width >= 1, fanin >= 1");
  CircuitBuilder b(spec.n, "layered");
  LiteralPool pool(b);
  auto modulus = [&] { return spec.mixed_moduli ? (rng.coin() ? 2U : 3U) : spec.modulus; };

  std::vector<GateId> layer;
  for (std::size_t k = 0; k < spec.width; ++k) {
    auto lits = pool.draw(std::max<std::size_t>(2, std::min(spec.fanin, spec.n)), 0.5, rng);
    layer.push_back(b.add_and(std::move(lits)));
  }
  const GateKind cycle[3] = {GateKind::Mod, GateKind::Or, GateKind::And};
  for (std::size_t level = 2; level < spec.depth; ++level) {
    const GateKind kind = cycle[(level - 2) % 3];
    std::vector<GateId> next;
    for (std::size_t k = 0; k < spec.width; ++k) {
      std::vector<GateId> in;
      // The first fanin comes from the layer directly below so depth is exact.
      in.push_back(layer[k % layer.size()]);
      for (std::size_t f = 1; f < spec.fanin; ++f) in.push_back(layer[rng.below(layer.size())]);
      if (rng.chance(0.25)) in.push_back(pool.get(rng.below(spec.n), rng.coin()));
      next.push_back(b.add(kind, kind == GateKind::Mod ? modulus() : 0, std::move(in)));
    }
    layer = std::move(next);
  }
  const GateId top = b.add_mod(modulus(), layer);
  return std::move(b).build(top);
}

}  // namespace accwb
