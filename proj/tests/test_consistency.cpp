#include <doctest.h>

#include "accwb/consistency.hpp"
#include "accwb/error.hpp"
#include "accwb/oracle.hpp"
#include "support.hpp"

using namespace accwb;
using testsupport::naive_trace;
using testsupport::point;

namespace {

Circuit and2() {
  CircuitBuilder b(2, "and2");
  return std::move(b).build(b.add_and({1, 2}));
}

Circuit not1() {
  CircuitBuilder b(1, "not1");
  return std::move(b).build(b.add_not(1));
}

std::vector<Circuit> corpus(std::size_t max_n, int per_n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Circuit> out{and2(), not1(), projection(3, 1)};
  for (std::size_t n = 1; n <= max_n; ++n)
    for (int r = 0; r < per_n; ++r) {
      RandomCircuitSpec spec;
      spec.n = n;
      spec.gates = static_cast<std::size_t>(rng.range(1, 8));
      spec.allow_const = rng.chance(0.2);
      out.push_back(random_circuit(spec, rng));
    }
  return out;
}

}  // namespace

TEST_CASE("tuples of small circuits") {
  const auto ts = tuples(and2());
  REQUIRE(ts.size() == 3);
  CHECK(ts[0] == GateTuple{1, 0, 0, GateTag::Input});
  CHECK(ts[1] == GateTuple{2, 0, 0, GateTag::Input});
  CHECK(ts[2] == GateTuple{3, 1, 2, GateTag::And});
  CHECK(tuples(projection(1, 0)) == std::vector<GateTuple>{{1, 0, 0, GateTag::Input}});
  CHECK(tuples(not1())[1] == GateTuple{2, 1, 0, GateTag::Not});

  CircuitBuilder b(2);
  const Circuit mod = std::move(b).build(b.add_mod(2, {1, 2}));
  CHECK_THROWS_AS(tuples(mod), Error);
}

TEST_CASE("rebuilding from tuples keeps the truth table") {
  for (const Circuit& x : corpus(7, 15, 11)) {
    const auto ts = tuples(x);
    const Circuit form = to_tuple_form(x);
    for (const GateTuple& t : ts) {
      CHECK(t.j1 < t.j);
      CHECK(t.j2 < t.j);
      if (t.g == GateTag::Not) CHECK(t.j2 == 0);
    }
    const Circuit back = circuit_from_tuples(x.n_inputs(), ts, form.output());
    CHECK(testsupport::naive_table(back) == testsupport::naive_table(x));
  }
}

TEST_CASE("G_x lookups") {
  const GxBundle gx = build_gx(and2());
  CHECK(gx.j_bits == 2);
  const auto e3 = gx.lookup(3);
  CHECK(e3.j1 + 1 == 1);
  CHECK(e3.j2 + 1 == 2);
  CHECK(e3.g == GateTag::And);
  const auto e1 = gx.lookup(1);
  CHECK(e1.g == GateTag::Input);
  CHECK(e1.j1 == 0);
  CHECK(e1.j2 == 0);

  for (const Circuit& x : corpus(6, 10, 12)) {
    const auto ts = tuples(x);
    const GxBundle bundle = build_gx(x);
    for (const GateTuple& t : ts) {
      const auto e = bundle.lookup(t.j);
      CHECK(e.g == t.g);
      CHECK(e.j1 == (t.j1 == 0 ? 0 : t.j1 - 1));
      CHECK(e.j2 == (t.j2 == 0 ? 0 : t.j2 - 1));
    }
  }
}

TEST_CASE("gate predicate t") {
  CHECK(gate_check_t(true, false, true, GateTag::Or));
  CHECK_FALSE(gate_check_t(true, false, true, GateTag::And));
  const Circuit t = gate_check_circuit();
  for (int tag = 0; tag < 4; ++tag)
    for (int bits = 0; bits < 8; ++bits) {
      const bool b1 = bits & 4, b2 = bits & 2, b = bits & 1;
      bool want = true;
      switch (static_cast<GateTag>(tag)) {
        case GateTag::Input: want = true; break;
        case GateTag::And: want = (b1 && b2) == b; break;
        case GateTag::Or: want = (b1 || b2) == b; break;
        case GateTag::Not: want = (!b1) == b; break;
      }
      CHECK(gate_check_t(b1, b2, b, static_cast<GateTag>(tag)) == want);
      CHECK(evaluate(t, Bits{b1, b2, b, static_cast<std::uint8_t>(tag >> 1), static_cast<std::uint8_t>(tag & 1)}) ==
            want);
    }
}

TEST_CASE("wire-value circuit examples") {
  const WireValueCandidate n = make_wire_value_circuit(not1());
  CHECK(n.circuit.n_inputs() == 2);
  CHECK(n.value(Bits{0}, 2));
  CHECK_FALSE(n.value(Bits{1}, 2));
  const WireValueCandidate a = make_wire_value_circuit(and2());
  CHECK(a.value(Bits{1, 1}, 3));
  CHECK_FALSE(a.value(Bits{1, 0}, 3));
}

TEST_CASE("wire-value circuit matches the gate trace") {
  for (const Circuit& x : corpus(8, 6, 13)) {
    const Circuit form = to_tuple_form(x);
    const WireValueCandidate c = make_wire_value_circuit(x);
    CHECK(c.circuit.n_inputs() == x.n_inputs() + gate_index_bits(form.size()));
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << x.n_inputs()); ++i) {
      const Bits p = point(i, x.n_inputs());
      const auto trace = naive_trace(form, p);
      for (GateId j = 1; j <= form.size(); ++j) REQUIRE(c.value(p, j) == (trace[j] != 0));
    }
  }
}

TEST_CASE("correct candidates pass both layouts") {
  for (const Circuit& x : corpus(8, 6, 14)) {
    const WireValueCandidate c = make_wire_value_circuit(x);
    const Circuit e = build_consistency_circuit(x, c);
    CHECK(e.n_inputs() == x.n_inputs());
    CHECK_FALSE(brute_sat(negate(e)).has_value());
    CHECK_FALSE(brute_sat(negate(build_consistency_circuit(x, c, ConsistencyLayout::JInput))).has_value());
    CHECK(verify_wire_circuit(x, c).correct);
  }
}

TEST_CASE("input-only circuit needs only the input conjuncts") {
  const Circuit x = projection(3, 2);
  const WireValueCandidate c = make_wire_value_circuit(x);
  CHECK(to_tuple_form(x).size() == 3);
  CHECK(verify_wire_circuit(x, c).correct);
  // A candidate that inverts input 1 everywhere is caught on the first input.
  TruthTable table(3 + c.j_bits);
  for (std::uint64_t i = 0; i < 8; ++i)
    for (GateId j = 1; j <= 3; ++j) table.set((i << c.j_bits) | (j - 1), point(i, 3)[j - 1] != (j == 1));
  const WireCheck r = verify_wire_circuit(x, candidate_from_table(table, 3, 3));
  CHECK_FALSE(r.correct);
  CHECK(r.exposing_gate == GateId{1});
}

TEST_CASE("every single-entry corruption is rejected") {
  for (const Circuit& x : corpus(6, 2, 15)) {
    const Circuit form = to_tuple_form(x);
    const WireValueCandidate good = make_wire_value_circuit(x);
    const std::uint64_t points = std::uint64_t{1} << x.n_inputs();
    for (std::uint64_t i = 0; i < points; ++i)
      for (GateId j = 1; j <= form.size(); ++j) {
        const WireValueCandidate bad = corrupt_candidate(good, i, j);
        const auto hit = brute_sat(negate(build_consistency_circuit(x, bad)));
        REQUIRE(hit.has_value());
        CHECK(assignment_to_index(*hit) == i);
      }
  }
}

TEST_CASE("corruption is exposed end to end by both backends and layouts") {
  Rng rng(16);
  for (const Circuit& x : corpus(6, 3, 17)) {
    const Circuit form = to_tuple_form(x);
    const std::uint64_t i = rng.below(std::uint64_t{1} << x.n_inputs());
    const GateId j = static_cast<GateId>(rng.range(1, static_cast<std::int64_t>(form.size())));
    const WireValueCandidate bad = corrupt_candidate(make_wire_value_circuit(x), i, j);
    for (auto backend : {SatBackend::Brute, SatBackend::Acc})
      for (auto layout : {ConsistencyLayout::Unrolled, ConsistencyLayout::JInput}) {
        const WireCheck r = verify_wire_circuit(x, bad, backend, {}, layout);
        CHECK_FALSE(r.correct);
        REQUIRE(r.exposing_input.has_value());
        CHECK(assignment_to_index(*r.exposing_input) == i);
        CHECK(r.exposing_gate == j);
      }
  }
}

TEST_CASE("E' = 1 forces the output claim") {
  Rng rng(18);
  for (const Circuit& x : corpus(8, 3, 19)) {
    const Circuit form = to_tuple_form(x);
    // Random tables are mostly wrong; the implication must still hold.
    const std::size_t arity = x.n_inputs() + gate_index_bits(form.size());
    for (int round = 0; round < 4; ++round) {
      TruthTable table(arity);
      const WireValueCandidate good = make_wire_value_circuit(x);
      const TruthTable base = truth_table(good.circuit);
      for (std::uint64_t k = 0; k < table.size(); ++k) table.set(k, rng.chance(0.05) ? !base.get(k) : base.get(k));
      const WireValueCandidate c = candidate_from_table(table, x.n_inputs(), form.size());
      const Circuit e = build_consistency_circuit(x, c);
      for (std::uint64_t i = 0; i < (std::uint64_t{1} << x.n_inputs()); ++i) {
        const Bits p = point(i, x.n_inputs());
        if (evaluate(e, p)) REQUIRE(c.value(p, form.output()) == testsupport::naive_eval(x, p));
      }
    }
  }
}

TEST_CASE("arity mismatch") {
  const WireValueCandidate c = make_wire_value_circuit(and2());
  CHECK_THROWS_AS(build_consistency_circuit(not1(), c), Error);
}
