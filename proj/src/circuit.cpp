#include "accwb/circuit.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <optional>

#include "accwb/error.hpp"

namespace accwb {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InputArity: return "input-arity";
    case ErrorKind::ResourceLimit: return "resource-limit";
    case ErrorKind::Composition: return "composition";
    case ErrorKind::UnsupportedGate: return "unsupported-gate";
    case ErrorKind::InvalidCircuit: return "invalid-circuit";
    case ErrorKind::Syntax: return "syntax";
    case ErrorKind::Semantic: return "semantic";
    case ErrorKind::Format: return "format";
    case ErrorKind::Range: return "range";
    case ErrorKind::NotSymAnd: return "not-sym-and";
    case ErrorKind::UnsupportedDepth: return "unsupported-depth";
    case ErrorKind::Decode: return "decode";
    case ErrorKind::Encoding: return "encoding";
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::Internal: return "internal";
  }
  return "unknown";
}

const char* to_string(GateKind kind) {
  switch (kind) {
    case GateKind::Input: return "INPUT";
    case GateKind::Const: return "CONST";
    case GateKind::Not: return "NOT";
    case GateKind::And: return "AND";
    case GateKind::Or: return "OR";
    case GateKind::Mod: return "MOD";
  }
  return "?";
}

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::InvalidCircuit, what); }

void check_gate(const Gate& g, std::size_t n_inputs, std::size_t position) {
  const std::string where = "gate " + std::to_string(g.id) + ": ";
  if (g.id != position + 1) invalid(where + "ids must be 1..s in order");
  if (position < n_inputs) {
    if (g.kind != GateKind::Input || g.param != position)
      invalid(where + "the first n gates must be INPUT 0..n-1");
  } else if (g.kind == GateKind::Input) {
    invalid(where + "INPUT gate after the input block");
  }
  for (GateId f : g.fanin)
    if (f == 0 || f >= g.id) invalid(where + "fanin " + std::to_string(f) + " is not an earlier gate");
  switch (g.kind) {
    case GateKind::Input:
    case GateKind::Const:
      if (!g.fanin.empty()) invalid(where + "INPUT/CONST gates take no fanin");
      if (g.kind == GateKind::Const && g.param > 1) invalid(where + "CONST must be 0 or 1");
      break;
    case GateKind::Not:
      if (g.fanin.size() != 1) invalid(where + "NOT takes exactly one fanin");
      break;
    case GateKind::And:
    case GateKind::Or:
      if (g.fanin.empty()) invalid(where + "AND/OR need at least one fanin");
      break;
    case GateKind::Mod:
      if (g.fanin.empty()) invalid(where + "MOD needs at least one fanin");
      if (g.param < 2) invalid(where + "MOD modulus must be at least 2");
      break;
  }
}

bool gate_value(const Gate& g, const Bits& values) {
  switch (g.kind) {
    case GateKind::Input: return false;  // filled by the caller
    case GateKind::Const: return g.param != 0;
    case GateKind::Not: return !values[g.fanin[0] - 1];
    case GateKind::And:
      return std::all_of(g.fanin.begin(), g.fanin.end(), [&](GateId f) { return values[f - 1] != 0; });
    case GateKind::Or:
      return std::any_of(g.fanin.begin(), g.fanin.end(), [&](GateId f) { return values[f - 1] != 0; });
    case GateKind::Mod: {
      std::size_t sum = 0;
      for (GateId f : g.fanin) sum += values[f - 1];
      return sum % g.param == 0;
    }
  }
  return false;
}

void check_arity(const Circuit& c, std::size_t got) {
  if (got != c.n_inputs())
    throw Error(ErrorKind::InputArity, "assignment has " + std::to_string(got) + " bits, circuit '" +
                                           c.name() + "' has " + std::to_string(c.n_inputs()) +
                                           " inputs");
}

std::vector<bool> reachable_from_output(const Circuit& c) {
  std::vector<bool> live(c.size() + 1, false);
  live[c.output()] = true;
  for (std::size_t id = c.size(); id >= 1; --id) {
    if (!live[id]) continue;
    for (GateId f : c.gate(static_cast<GateId>(id)).fanin) live[f] = true;
  }
  return live;
}

}  // namespace

Circuit::Circuit(std::string name, std::size_t n_inputs, std::vector<Gate> gates, GateId output)
    : name_(std::move(name)), n_inputs_(n_inputs), gates_(std::move(gates)), output_(output) {
  if (gates_.size() < n_inputs_) invalid("fewer gates than inputs");
  for (std::size_t i = 0; i < gates_.size(); ++i) check_gate(gates_[i], n_inputs_, i);
  if (output_ == 0 || output_ > gates_.size()) invalid("output refers to a missing gate");
}

Circuit Circuit::renamed(std::string name) const {
  Circuit copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

// ---------------------------------------------------------------------------
// Builder

CircuitBuilder::CircuitBuilder(std::size_t n_inputs, std::string name)
    : n_inputs_(n_inputs), name_(std::move(name)) {
  gates_.reserve(n_inputs);
  for (std::size_t k = 0; k < n_inputs; ++k)
    gates_.push_back(Gate{static_cast<GateId>(k + 1), GateKind::Input, static_cast<std::uint32_t>(k), {}});
}

GateId CircuitBuilder::input(std::size_t index) const {
  if (index >= n_inputs_) throw Error(ErrorKind::InvalidArgument, "input index out of range");
  return static_cast<GateId>(index + 1);
}

GateId CircuitBuilder::add(GateKind kind, std::uint32_t param, std::vector<GateId> fanin) {
  if (kind == GateKind::Input) throw Error(ErrorKind::InvalidArgument, "inputs are created by the builder");
  Gate g{static_cast<GateId>(gates_.size() + 1), kind, param, std::move(fanin)};
  check_gate(g, n_inputs_, gates_.size());
  gates_.push_back(std::move(g));
  return gates_.back().id;
}

GateId CircuitBuilder::add_xor(GateId a, GateId b) {
  const GateId na = add_not(a), nb = add_not(b);
  return add_or({add_and({a, nb}), add_and({na, b})});
}

GateId CircuitBuilder::add_xnor(GateId a, GateId b) {
  const GateId na = add_not(a), nb = add_not(b);
  return add_or({add_and({a, b}), add_and({na, nb})});
}

GateId CircuitBuilder::const_gate(bool value) {
  GateId& slot = const_ids_[value ? 1 : 0];
  if (slot == 0) slot = add_const(value);
  return slot;
}

GateId CircuitBuilder::append(const Circuit& circuit, std::span<const GateId> input_map) {
  if (input_map.size() != circuit.n_inputs())
    throw Error(ErrorKind::Composition, "input map size does not match the appended circuit");
  std::vector<GateId> map(circuit.size() + 1, 0);
  for (const Gate& g : circuit.gates()) {
    if (g.kind == GateKind::Input) {
      map[g.id] = input_map[g.param];
      continue;
    }
    std::vector<GateId> fanin;
    fanin.reserve(g.fanin.size());
    for (GateId f : g.fanin) fanin.push_back(map[f]);
    map[g.id] = add(g.kind, g.param, std::move(fanin));
  }
  return map[circuit.output()];
}

Circuit CircuitBuilder::build(GateId output) && {
  return Circuit(std::move(name_), n_inputs_, std::move(gates_), output);
}

// ---------------------------------------------------------------------------
// Evaluation

bool evaluate(const Circuit& circuit, std::span<const std::uint8_t> assignment) {
  const Bits trace = wire_trace(circuit, assignment);
  return trace[circuit.output() - 1] != 0;
}

Bits wire_trace(const Circuit& circuit, std::span<const std::uint8_t> assignment) {
  check_arity(circuit, assignment.size());
  Bits values(circuit.size(), 0);
  for (const Gate& g : circuit.gates())
    values[g.id - 1] = g.kind == GateKind::Input ? (assignment[g.param] != 0) : gate_value(g, values);
  return values;
}

namespace {
constexpr std::uint64_t kLanePattern[6] = {
    0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
    0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL,
};
}  // namespace

BlockSimulator::BlockSimulator(const Circuit& circuit)
    : circuit_(&circuit), values_(circuit.size(), 0) {
  std::uint32_t max_mod = 0;
  for (const Gate& g : circuit.gates())
    if (g.kind == GateKind::Mod) max_mod = std::max(max_mod, g.param);
  residues_.assign(max_mod, 0);
}

std::uint64_t BlockSimulator::run(std::uint64_t base) {
  const Circuit& c = *circuit_;
  const std::size_t n = c.n_inputs();
  const std::uint64_t lanes = n >= 6 ? ~std::uint64_t{0} : (std::uint64_t{1} << (std::uint64_t{1} << n)) - 1;
  for (const Gate& g : c.gates()) {
    std::uint64_t v = 0;
    switch (g.kind) {
      case GateKind::Input: {
        const std::size_t pos = n - 1 - g.param;
        v = pos < 6 ? kLanePattern[pos] : (((base >> pos) & 1U) ? ~std::uint64_t{0} : 0);
        break;
      }
      case GateKind::Const: v = g.param ? ~std::uint64_t{0} : 0; break;
      case GateKind::Not: v = ~values_[g.fanin[0] - 1]; break;
      case GateKind::And:
        v = ~std::uint64_t{0};
        for (GateId f : g.fanin) v &= values_[f - 1];
        break;
      case GateKind::Or:
        for (GateId f : g.fanin) v |= values_[f - 1];
        break;
      case GateKind::Mod: {
        // One-hot residue per lane, advanced by each fanin.
        const std::uint32_t m = g.param;
        std::fill(residues_.begin(), residues_.begin() + m, 0);
        residues_[0] = ~std::uint64_t{0};
        for (GateId f : g.fanin) {
          const std::uint64_t w = values_[f - 1];
          const std::uint64_t last = residues_[m - 1];
          for (std::uint32_t r = m - 1; r > 0; --r)
            residues_[r] = (residues_[r] & ~w) | (residues_[r - 1] & w);
          residues_[0] = (residues_[0] & ~w) | (last & w);
        }
        v = residues_[0];
        break;
      }
    }
    values_[g.id - 1] = v;
  }
  return values_[c.output() - 1] & lanes;
}

TruthTable truth_table(const Circuit& circuit, std::size_t cap) {
  if (circuit.n_inputs() > cap)
    throw Error(ErrorKind::ResourceLimit, "circuit has " + std::to_string(circuit.n_inputs()) +
                                              " inputs, enumeration cap is " + std::to_string(cap));
  TruthTable table(circuit.n_inputs());
  BlockSimulator sim(circuit);
  auto words = table.words();
  for (std::size_t w = 0; w < words.size(); ++w) words[w] = sim.run(static_cast<std::uint64_t>(w) * 64);
  return table;
}

// ---------------------------------------------------------------------------
// Structural transforms

Circuit compose(const Circuit& outer, std::span<const Circuit> inner) {
  if (outer.n_inputs() != inner.size())
    throw Error(ErrorKind::Composition, "outer circuit has " + std::to_string(outer.n_inputs()) +
                                            " inputs but " + std::to_string(inner.size()) +
                                            " inner circuits were given");
  const std::size_t arity = inner.empty() ? 0 : inner.front().n_inputs();
  for (const Circuit& c : inner)
    if (c.n_inputs() != arity)
      throw Error(ErrorKind::Composition, "inner circuits must share one input arity");
  CircuitBuilder b(arity, outer.name());
  std::vector<GateId> identity(arity);
  std::iota(identity.begin(), identity.end(), GateId{1});
  std::vector<GateId> outputs;
  outputs.reserve(inner.size());
  for (const Circuit& c : inner) outputs.push_back(b.append(c, identity));
  const GateId out = b.append(outer, outputs);
  return std::move(b).build(out);
}

Circuit normalize_fanin2(const Circuit& circuit) {
  CircuitBuilder b(circuit.n_inputs(), circuit.name());
  std::vector<GateId> map(circuit.size() + 1, 0);
  for (const Gate& g : circuit.gates()) {
    switch (g.kind) {
      case GateKind::Input: map[g.id] = g.id; break;
      case GateKind::Const: map[g.id] = b.add_const(g.param != 0); break;
      case GateKind::Not: map[g.id] = b.add_not(map[g.fanin[0]]); break;
      case GateKind::And:
      case GateKind::Or: {
        GateId acc = map[g.fanin[0]];
        if (g.fanin.size() == 1) {
          acc = b.add(g.kind, 0, {acc, acc});
        } else {
          for (std::size_t k = 1; k < g.fanin.size(); ++k) acc = b.add(g.kind, 0, {acc, map[g.fanin[k]]});
        }
        map[g.id] = acc;
        break;
      }
      case GateKind::Mod:
        throw Error(ErrorKind::UnsupportedGate,
                    "gate " + std::to_string(g.id) + ": MOD gates have no fan-in-2 tuple form");
    }
  }
  return std::move(b).build(map[circuit.output()]);
}

Circuit remove_dead_gates(const Circuit& circuit) {
  const auto live = reachable_from_output(circuit);
  CircuitBuilder b(circuit.n_inputs(), circuit.name());
  std::vector<GateId> map(circuit.size() + 1, 0);
  for (const Gate& g : circuit.gates()) {
    if (g.kind == GateKind::Input) {
      map[g.id] = g.id;
      continue;
    }
    if (!live[g.id]) continue;
    std::vector<GateId> fanin;
    fanin.reserve(g.fanin.size());
    for (GateId f : g.fanin) fanin.push_back(map[f]);
    map[g.id] = b.add(g.kind, g.param, std::move(fanin));
  }
  return std::move(b).build(map[circuit.output()]);
}

Circuit fold_constants(const Circuit& circuit) {
  struct Ref {
    bool is_const = false;
    bool value = false;
    GateId id = 0;
  };
  const auto live = reachable_from_output(circuit);
  CircuitBuilder b(circuit.n_inputs(), circuit.name());
  std::vector<Ref> ref(circuit.size() + 1);
  for (const Gate& g : circuit.gates()) {
    if (g.kind == GateKind::Input) {
      ref[g.id] = Ref{false, false, g.id};
      continue;
    }
    if (!live[g.id]) continue;
    Ref r;
    switch (g.kind) {
      case GateKind::Input: break;
      case GateKind::Const: r = Ref{true, g.param != 0, 0}; break;
      case GateKind::Not: {
        const Ref a = ref[g.fanin[0]];
        r = a.is_const ? Ref{true, !a.value, 0} : Ref{false, false, b.add_not(a.id)};
        break;
      }
      case GateKind::And:
      case GateKind::Or: {
        // AND: a 0 dominates, 1s vanish. OR is the dual.
        const bool dominant = g.kind == GateKind::Or;
        std::vector<GateId> rest;
        bool dominated = false;
        for (GateId f : g.fanin) {
          const Ref a = ref[f];
          if (!a.is_const)
            rest.push_back(a.id);
          else if (a.value == dominant)
            dominated = true;
        }
        if (dominated)
          r = Ref{true, dominant, 0};
        else if (rest.empty())
          r = Ref{true, !dominant, 0};
        else
          r = Ref{false, false, b.add(g.kind, 0, std::move(rest))};
        break;
      }
      case GateKind::Mod: {
        std::vector<GateId> rest;
        std::uint32_t ones = 0;
        for (GateId f : g.fanin) {
          const Ref a = ref[f];
          if (!a.is_const)
            rest.push_back(a.id);
          else if (a.value)
            ones = (ones + 1) % g.param;
        }
        if (rest.empty()) {
          r = Ref{true, ones == 0, 0};
        } else {
          if (ones != 0) {
            const GateId one = b.const_gate(true);
            rest.insert(rest.end(), ones, one);
          }
          r = Ref{false, false, b.add_mod(g.param, std::move(rest))};
        }
        break;
      }
    }
    ref[g.id] = r;
  }
  const Ref out = ref[circuit.output()];
  const GateId out_id = out.is_const ? b.const_gate(out.value) : out.id;
  return remove_dead_gates(std::move(b).build(out_id));
}

Circuit eliminate_constants(const Circuit& circuit) {
  const Circuit folded = fold_constants(circuit);
  const bool has_const = std::any_of(folded.gates().begin(), folded.gates().end(),
                                     [](const Gate& g) { return g.kind == GateKind::Const; });
  if (!has_const) return folded;
  if (folded.n_inputs() == 0)
    throw Error(ErrorKind::UnsupportedGate, "a constant circuit without inputs has no CONST-free form");
  CircuitBuilder b(folded.n_inputs(), folded.name());
  std::vector<GateId> map(folded.size() + 1, 0);
  GateId not_x1 = 0;
  for (const Gate& g : folded.gates()) {
    if (g.kind == GateKind::Input) {
      map[g.id] = g.id;
      continue;
    }
    if (g.kind == GateKind::Const) {
      if (not_x1 == 0) not_x1 = b.add_not(b.input(0));
      map[g.id] = g.param ? b.add_or({b.input(0), not_x1}) : b.add_and({b.input(0), not_x1});
      continue;
    }
    std::vector<GateId> fanin;
    for (GateId f : g.fanin) fanin.push_back(map[f]);
    map[g.id] = b.add(g.kind, g.param, std::move(fanin));
  }
  return std::move(b).build(map[folded.output()]);
}

Circuit push_negations(const Circuit& circuit) {
  CircuitBuilder b(circuit.n_inputs(), circuit.name());
  // memo[polarity][id]
  std::vector<GateId> memo[2] = {std::vector<GateId>(circuit.size() + 1, 0),
                                 std::vector<GateId>(circuit.size() + 1, 0)};
  std::function<GateId(GateId, bool)> lower = [&](GateId id, bool negated) -> GateId {
    GateId& slot = memo[negated ? 1 : 0][id];
    if (slot != 0) return slot;
    const Gate& g = circuit.gate(id);
    GateId out = 0;
    switch (g.kind) {
      case GateKind::Input: out = negated ? b.add_not(id) : id; break;
      case GateKind::Const: out = b.const_gate((g.param != 0) != negated); break;
      case GateKind::Not: out = lower(g.fanin[0], !negated); break;
      case GateKind::And:
      case GateKind::Or: {
        std::vector<GateId> fanin;
        for (GateId f : g.fanin) fanin.push_back(lower(f, negated));
        const bool is_and = (g.kind == GateKind::And) != negated;
        out = is_and ? b.add_and(std::move(fanin)) : b.add_or(std::move(fanin));
        break;
      }
      case GateKind::Mod: {
        if (negated) {
          out = b.add_not(lower(id, false));
        } else {
          std::vector<GateId> fanin;
          for (GateId f : g.fanin) fanin.push_back(lower(f, false));
          out = b.add_mod(g.param, std::move(fanin));
        }
        break;
      }
    }
    slot = out;
    return out;
  };
  const GateId out = lower(circuit.output(), false);
  return remove_dead_gates(std::move(b).build(out));
}

Circuit unify_moduli(const Circuit& circuit) {
  const auto moduli = stats(circuit).moduli;
  if (moduli.size() <= 1) return circuit;
  std::uint32_t lcm = 1;
  for (auto m : moduli) {
    lcm = std::lcm(lcm, m);
    if (lcm > (1U << 20)) throw Error(ErrorKind::ResourceLimit, "lcm of moduli is too large");
  }
  std::vector<Gate> gates(circuit.gates().begin(), circuit.gates().end());
  for (Gate& g : gates) {
    if (g.kind != GateKind::Mod || g.param == lcm) continue;
    const std::uint32_t repeat = lcm / g.param;
    std::vector<GateId> fanin;
    fanin.reserve(g.fanin.size() * repeat);
    for (GateId f : g.fanin) fanin.insert(fanin.end(), repeat, f);
    g.fanin = std::move(fanin);
    g.param = lcm;
  }
  return Circuit(circuit.name(), circuit.n_inputs(), std::move(gates), circuit.output());
}

Circuit negate(const Circuit& circuit) {
  std::vector<Gate> gates(circuit.gates().begin(), circuit.gates().end());
  const auto id = static_cast<GateId>(gates.size() + 1);
  gates.push_back(Gate{id, GateKind::Not, 0, {circuit.output()}});
  return Circuit(circuit.name(), circuit.n_inputs(), std::move(gates), id);
}

CircuitStats stats(const Circuit& circuit) {
  CircuitStats s;
  s.size = circuit.size();
  s.n_inputs = circuit.n_inputs();
  std::vector<std::size_t> depth(circuit.size() + 1, 0), acc(circuit.size() + 1, 0);
  for (const Gate& g : circuit.gates()) {
    s.wires += g.fanin.size();
    if (g.kind == GateKind::Mod) s.moduli.insert(g.param);
    std::size_t d = 0, a = 0;
    for (GateId f : g.fanin) {
      d = std::max(d, depth[f]);
      a = std::max(a, acc[f]);
    }
    if (!g.fanin.empty()) {
      depth[g.id] = d + 1;
      acc[g.id] = g.kind == GateKind::Not ? a : a + 1;
    }
  }
  s.depth = depth[circuit.output()];
  s.acc_depth = acc[circuit.output()];
  return s;
}

// ---------------------------------------------------------------------------
// Small constructors

Circuit projection(std::size_t n_inputs, std::size_t index) {
  CircuitBuilder b(n_inputs, "proj");
  return std::move(b).build(b.input(index));
}

Circuit constant_circuit(std::size_t n_inputs, bool value) {
  CircuitBuilder b(n_inputs, value ? "one" : "zero");
  const GateId c = b.add_const(value);
  return std::move(b).build(c);
}

GateId add_mux_tree(CircuitBuilder& b, std::span<const GateId> select, std::span<const GateId> leaves) {
  std::vector<GateId> negated(select.size(), 0);
  // 0 stands for the constant 0 below.
  std::function<GateId(std::size_t, std::uint64_t)> build = [&](std::size_t level, std::uint64_t start) -> GateId {
    if (start >= leaves.size()) return 0;
    if (level == select.size()) return leaves[start];
    const std::uint64_t half = std::uint64_t{1} << (select.size() - level - 1);
    const GateId lo = build(level + 1, start);
    const GateId hi = build(level + 1, start + half);
    if (lo == hi) return lo;
    const GateId sel = select[level];
    if (negated[level] == 0) negated[level] = b.add_not(sel);
    if (hi == 0) return b.add_and({negated[level], lo});
    if (lo == 0) return b.add_and({sel, hi});
    return b.add_or({b.add_and({negated[level], lo}), b.add_and({sel, hi})});
  };
  const GateId out = build(0, 0);
  return out == 0 ? b.const_gate(false) : out;
}

Circuit rom_circuit(const TruthTable& table, std::string name) {
  const std::size_t n = table.n_inputs();
  CircuitBuilder b(n, std::move(name));
  std::vector<GateId> negated(n, 0);
  auto not_of = [&](std::size_t var) {
    if (negated[var] == 0) negated[var] = b.add_not(b.input(var));
    return negated[var];
  };
  // Identical subtables at the same depth share one gate.
  std::map<std::pair<std::size_t, std::vector<std::uint64_t>>, GateId> shared;
  struct Node {
    bool is_const;
    bool value;
    GateId id;
  };
  std::function<Node(std::size_t, std::uint64_t)> build = [&](std::size_t var, std::uint64_t start) -> Node {
    const std::uint64_t len = std::uint64_t{1} << (n - var);
    bool any = false, all = true;
    std::vector<std::uint64_t> key((len + 63) / 64, 0);
    for (std::uint64_t i = 0; i < len; ++i) {
      const bool bit = table.get(start + i);
      any |= bit;
      all &= bit;
      if (bit) key[i >> 6] |= std::uint64_t{1} << (i & 63);
    }
    if (!any) return Node{true, false, 0};
    if (all) return Node{true, true, 0};
    auto it = shared.find({var, key});
    if (it != shared.end()) return Node{false, false, it->second};
    const Node lo = build(var + 1, start);
    const Node hi = build(var + 1, start + len / 2);
    const GateId x = b.input(var);
    auto id_of = [&](const Node& node) { return node.is_const ? b.const_gate(node.value) : node.id; };
    GateId out;
    if (hi.is_const && lo.is_const) {
      out = hi.value ? x : not_of(var);  // hi != lo here
    } else if (!hi.is_const && !lo.is_const && hi.id == lo.id) {
      out = hi.id;
    } else if (hi.is_const) {
      out = hi.value ? b.add_or({x, id_of(lo)}) : b.add_and({not_of(var), id_of(lo)});
    } else if (lo.is_const) {
      out = lo.value ? b.add_or({not_of(var), id_of(hi)}) : b.add_and({x, id_of(hi)});
    } else {
      out = b.add_or({b.add_and({x, hi.id}), b.add_and({not_of(var), lo.id})});
    }
    shared.emplace(std::make_pair(var, std::move(key)), out);
    return Node{false, false, out};
  };
  const Node root = build(0, 0);
  const GateId out = root.is_const ? b.add_const(root.value) : root.id;
  return std::move(b).build(out);
}

Bits index_to_assignment(std::uint64_t index, std::size_t n) {
  Bits bits(n, 0);
  for (std::size_t i = 0; i < n; ++i) bits[i] = static_cast<std::uint8_t>((index >> (n - 1 - i)) & 1U);
  return bits;
}

std::uint64_t assignment_to_index(std::span<const std::uint8_t> assignment) {
  std::uint64_t index = 0;
  for (auto bit : assignment) index = (index << 1) | (bit ? 1U : 0U);
  return index;
}

std::string bits_to_string(std::span<const std::uint8_t> bits) {
  std::string s;
  s.reserve(bits.size());
  for (auto bit : bits) s.push_back(bit ? '1' : '0');
  return s;
}

Bits bits_from_string(std::string_view text) {
  Bits bits;
  bits.reserve(text.size());
  for (char ch : text) {
    if (ch != '0' && ch != '1') throw Error(ErrorKind::InvalidArgument, "bit strings may only contain 0 and 1");
    bits.push_back(ch == '1' ? 1 : 0);
  }
  return bits;
}

}  // namespace accwb
