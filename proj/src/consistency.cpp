#include "accwb/consistency.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "accwb/error.hpp"

namespace accwb {

namespace {

std::vector<GateId> constant_bits(CircuitBuilder& b, std::uint64_t value, std::size_t width) {
  std::vector<GateId> out;
  for (std::size_t k = 0; k < width; ++k) out.push_back(b.const_gate(((value >> (width - 1 - k)) & 1U) != 0));
  return out;
}

std::vector<GateId> append_all(CircuitBuilder& b, const std::vector<Circuit>& circuits,
                               std::span<const GateId> inputs) {
  std::vector<GateId> out;
  for (const Circuit& c : circuits) out.push_back(b.append(c, inputs));
  return out;
}

GateId append_candidate(CircuitBuilder& b, const WireValueCandidate& c, std::span<const GateId> i,
                        std::span<const GateId> j) {
  std::vector<GateId> map(i.begin(), i.end());
  map.insert(map.end(), j.begin(), j.end());
  return b.append(c.circuit, map);
}

void check_candidate(const Circuit& form, const WireValueCandidate& c) {
  const std::size_t j_bits = gate_index_bits(form.size());
  if (c.n != form.n_inputs() || c.j_bits != j_bits || c.circuit.n_inputs() != c.n + c.j_bits)
    throw Error(ErrorKind::InputArity, "candidate arity " + std::to_string(c.circuit.n_inputs()) + " does not match " +
                                           std::to_string(form.n_inputs()) + " + " + std::to_string(j_bits));
}

}  // namespace

const char* to_string(GateTag tag) {
  switch (tag) {
    case GateTag::Input: return "INPUT";
    case GateTag::And: return "AND";
    case GateTag::Or: return "OR";
    case GateTag::Not: return "NOT";
  }
  return "?";
}

Circuit to_tuple_form(const Circuit& x) {
  for (const Gate& g : x.gates())
    if (g.kind == GateKind::Mod)
      throw Error(ErrorKind::UnsupportedGate, "gate " + std::to_string(g.id) + ": MOD gates have no tuple form");
  return normalize_fanin2(eliminate_constants(x));
}

std::vector<GateTuple> tuples(const Circuit& x) {
  const Circuit form = to_tuple_form(x);
  std::vector<GateTuple> out;
  out.reserve(form.size());
  for (const Gate& g : form.gates()) {
    GateTuple t{g.id, 0, 0, GateTag::Input};
    switch (g.kind) {
      case GateKind::Input: break;
      case GateKind::Not: t.g = GateTag::Not; t.j1 = g.fanin[0]; break;
      case GateKind::And: t.g = GateTag::And; t.j1 = g.fanin[0]; t.j2 = g.fanin[1]; break;
      case GateKind::Or: t.g = GateTag::Or; t.j1 = g.fanin[0]; t.j2 = g.fanin[1]; break;
      default: throw Error(ErrorKind::Internal, "unexpected gate in tuple form");
    }
    out.push_back(t);
  }
  return out;
}

Circuit circuit_from_tuples(std::size_t n_inputs, const std::vector<GateTuple>& ts, GateId output) {
  CircuitBuilder b(n_inputs, "tuples");
  for (const GateTuple& t : ts) {
    if (t.j <= n_inputs) {
      if (t.g != GateTag::Input) throw Error(ErrorKind::InvalidCircuit, "tuple for an input gate is not INPUT");
      continue;
    }
    switch (t.g) {
      case GateTag::Not: b.add_not(t.j1); break;
      case GateTag::And: b.add_and({t.j1, t.j2}); break;
      case GateTag::Or: b.add_or({t.j1, t.j2}); break;
      case GateTag::Input: throw Error(ErrorKind::InvalidCircuit, "INPUT tuple past the inputs");
    }
  }
  return std::move(b).build(output);
}

std::size_t gate_index_bits(std::size_t s) {
  return s <= 1 ? 0 : static_cast<std::size_t>(std::bit_width(s - 1));
}

GxBundle::Entry GxBundle::lookup(GateId j) const {
  const Bits sel = index_to_assignment(j - 1, j_bits);
  auto read = [&](const std::vector<Circuit>& bits) {
    std::uint64_t v = 0;
    for (const Circuit& c : bits) v = (v << 1) | (evaluate(c, sel) ? 1U : 0U);
    return v;
  };
  return Entry{read(j1), read(j2), static_cast<GateTag>(read(tag))};
}

GxBundle build_gx(const Circuit& x) {
  const std::vector<GateTuple> ts = tuples(x);
  GxBundle out;
  out.j_bits = gate_index_bits(ts.size());
  auto field = [&](std::size_t width, auto get) {
    std::vector<Circuit> bits;
    for (std::size_t k = 0; k < width; ++k) {
      TruthTable table(out.j_bits);
      for (std::size_t idx = 0; idx < ts.size(); ++idx)
        table.set(idx, ((get(ts[idx]) >> (width - 1 - k)) & 1U) != 0);
      bits.push_back(rom_circuit(table, "gx"));
    }
    return bits;
  };
  out.j1 = field(out.j_bits, [](const GateTuple& t) -> std::uint64_t { return t.j1 == 0 ? 0 : t.j1 - 1; });
  out.j2 = field(out.j_bits, [](const GateTuple& t) -> std::uint64_t { return t.j2 == 0 ? 0 : t.j2 - 1; });
  out.tag = field(2, [](const GateTuple& t) -> std::uint64_t { return static_cast<std::uint64_t>(t.g); });
  return out;
}

bool gate_check_t(bool b1, bool b2, bool b, GateTag g) {
  switch (g) {
    case GateTag::Input: return true;
    case GateTag::And: return (b1 && b2) == b;
    case GateTag::Or: return (b1 || b2) == b;
    case GateTag::Not: return !b1 == b;
  }
  return false;
}

Circuit gate_check_circuit() {
  CircuitBuilder b(5, "t");
  const GateId b1 = b.input(0), b2 = b.input(1), v = b.input(2), hi = b.input(3), lo = b.input(4);
  const GateId not_hi = b.add_not(hi), not_lo = b.add_not(lo);
  const GateId ok_and = b.add_xnor(v, b.add_and({b1, b2}));
  const GateId ok_or = b.add_xnor(v, b.add_or({b1, b2}));
  const GateId ok_not = b.add_xor(v, b1);
  const GateId out = b.add_or({b.add_and({not_hi, not_lo}), b.add_and({not_hi, lo, ok_and}),
                               b.add_and({hi, not_lo, ok_or}), b.add_and({hi, lo, ok_not})});
  return std::move(b).build(out);
}

bool WireValueCandidate::value(std::span<const std::uint8_t> i, GateId j) const {
  Bits point(i.begin(), i.end());
  const Bits sel = index_to_assignment(j - 1, j_bits);
  point.insert(point.end(), sel.begin(), sel.end());
  return evaluate(circuit, point);
}

WireValueCandidate make_wire_value_circuit(const Circuit& x) {
  const Circuit form = to_tuple_form(x);
  const std::size_t n = form.n_inputs(), s = form.size(), j_bits = gate_index_bits(s);
  CircuitBuilder b(n + j_bits, "wires");
  std::vector<GateId> map(s + 1, 0);
  for (const Gate& g : form.gates()) {
    if (g.kind == GateKind::Input) {
      map[g.id] = b.input(g.param);
      continue;
    }
    std::vector<GateId> fanin;
    for (GateId f : g.fanin) fanin.push_back(map[f]);
    map[g.id] = b.add(g.kind, g.param, std::move(fanin));
  }
  std::vector<GateId> select;
  for (std::size_t k = 0; k < j_bits; ++k) select.push_back(b.input(n + k));
  const GateId out = add_mux_tree(b, select, std::span<const GateId>(map).subspan(1));
  return WireValueCandidate{std::move(b).build(out), n, s, j_bits};
}

WireValueCandidate corrupt_candidate(const WireValueCandidate& c, std::uint64_t i, GateId j) {
  if (i >= (std::uint64_t{1} << c.n) || j < 1 || j > c.s)
    throw Error(ErrorKind::Range, "point (" + std::to_string(i) + ", " + std::to_string(j) + ") outside the candidate");
  const std::size_t arity = c.circuit.n_inputs();
  const std::uint64_t point = (i << c.j_bits) | (j - 1);
  CircuitBuilder b(arity, c.circuit.name());
  std::vector<GateId> inputs;
  for (std::size_t k = 0; k < arity; ++k) inputs.push_back(b.input(k));
  const GateId orig = b.append(c.circuit, inputs);
  std::vector<GateId> lits;
  for (std::size_t k = 0; k < arity; ++k)
    lits.push_back(((point >> (arity - 1 - k)) & 1U) ? inputs[k] : b.add_not(inputs[k]));
  const GateId here = lits.empty() ? b.const_gate(true) : b.add_and(std::move(lits));
  WireValueCandidate out = c;
  out.circuit = std::move(b).build(b.add_xor(orig, here));
  return out;
}

WireValueCandidate candidate_from_table(const TruthTable& table, std::size_t n, std::size_t s) {
  const std::size_t j_bits = gate_index_bits(s);
  if (table.n_inputs() != n + j_bits)
    throw Error(ErrorKind::InputArity, "candidate table arity does not match n + j bits");
  return WireValueCandidate{rom_circuit(table, "candidate"), n, s, j_bits};
}

Circuit build_consistency_circuit(const Circuit& x, const WireValueCandidate& c, ConsistencyLayout layout) {
  const Circuit form = to_tuple_form(x);
  check_candidate(form, c);
  const std::vector<GateTuple> ts = tuples(x);
  const std::size_t n = form.n_inputs(), s = form.size();
  const Circuit t = gate_check_circuit();

  if (layout == ConsistencyLayout::Unrolled) {
    CircuitBuilder b(n, "econs");
    std::vector<GateId> i;
    for (std::size_t k = 0; k < n; ++k) i.push_back(b.input(k));
    std::vector<GateId> claim(s + 1, 0);
    for (GateId j = 1; j <= s; ++j) claim[j] = append_candidate(b, c, i, constant_bits(b, j - 1, c.j_bits));
    std::vector<GateId> conjuncts;
    for (const GateTuple& tp : ts) {
      if (tp.j <= n) {
        conjuncts.push_back(b.add_xnor(claim[tp.j], i[tp.j - 1]));
        continue;
      }
      const auto tag = constant_bits(b, static_cast<std::uint64_t>(tp.g), 2);
      const GateId args[] = {claim[tp.j1], tp.j2 == 0 ? b.const_gate(false) : claim[tp.j2], claim[tp.j], tag[0],
                             tag[1]};
      conjuncts.push_back(b.append(t, args));
    }
    const GateId out = b.add_and(std::move(conjuncts));
    return fold_constants(std::move(b).build(out));
  }

  const GxBundle gx = build_gx(x);
  CircuitBuilder b(n + c.j_bits, "econs-j");
  std::vector<GateId> i, j;
  for (std::size_t k = 0; k < n; ++k) i.push_back(b.input(k));
  for (std::size_t k = 0; k < c.j_bits; ++k) j.push_back(b.input(n + k));
  const auto j1 = append_all(b, gx.j1, j);
  const auto j2 = append_all(b, gx.j2, j);
  const auto tag = append_all(b, gx.tag, j);
  const GateId here = append_candidate(b, c, i, j);
  const GateId args[] = {append_candidate(b, c, i, j1), append_candidate(b, c, i, j2), here, tag[0], tag[1]};
  const GateId local = b.append(t, args);
  const GateId is_input = b.add_and({b.add_not(tag[0]), b.add_not(tag[1])});
  const GateId input_ok = b.add_or({b.add_not(is_input), b.add_xnor(here, add_mux_tree(b, j, i))});
  TruthTable in_range(c.j_bits);
  for (std::uint64_t k = 0; k < s; ++k) in_range.set(k, true);
  const GateId valid = b.append(rom_circuit(in_range), j);
  const GateId out = b.add_or({b.add_not(valid), b.add_and({input_ok, local})});
  return std::move(b).build(out);
}

WireCheck verify_wire_circuit(const Circuit& x, const WireValueCandidate& c, SatBackend backend,
                              const AccSatParams& params, ConsistencyLayout layout) {
  const Circuit e = build_consistency_circuit(x, c, layout);
  WireCheck out;
  out.consistency_size = e.size();
  const SatResult r = solve_sat(negate(e), backend, params);
  out.metrics = r.metrics;
  out.correct = !r.satisfiable;
  if (r.satisfiable) {
    const Circuit form = to_tuple_form(x);
    Bits i(r.witness->begin(), r.witness->begin() + static_cast<std::ptrdiff_t>(form.n_inputs()));
    const Bits trace = wire_trace(form, i);
    for (GateId j = 1; j <= form.size(); ++j)
      if (c.value(i, j) != (trace[j - 1] != 0)) {
        out.exposing_gate = j;
        break;
      }
    out.exposing_input = std::move(i);
  }
  return out;
}

}  // namespace accwb
