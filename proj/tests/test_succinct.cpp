#include <doctest.h>

#include "accwb/error.hpp"
#include "accwb/oracle.hpp"
#include "accwb/succinct.hpp"
#include "support.hpp"

using namespace accwb;

namespace {

/// Direct check against a fully materialized assignment.
bool materialized_check(const Formula3CNF& f, const Circuit& W) {
  CnfModel model(f.V);
  for (std::uint64_t v = 1; v <= f.V; ++v) {
    const std::uint64_t idx = v - 1;
    model[v - 1] = idx < (std::uint64_t{1} << W.n_inputs()) && testsupport::naive_eval(W, testsupport::point(idx, W.n_inputs()));
  }
  return formula_satisfied(f, model);
}

Bits corrupt(const Formula3CNF& f, Bits plant, Rng& rng) {
  // Flip the variables of a random clause so that clause fails.
  const Clause& c = f.clauses[rng.below(f.clauses.size())];
  for (const CnfLiteral& l : c) plant[l.var - 1] = l.negated ? 1 : 0;
  return plant;
}

}  // namespace

TEST_CASE("encoding layout") {
  const ClauseEncoding e = make_encoding(2);
  CHECK(e.L == 4);
  CHECK(e.record_width == 16);
  CHECK(e.record_bits == 4);
  CHECK(make_encoding(3).L == 4);
  CHECK(make_encoding(4).L == 8);
  CHECK(make_encoding(7).record_width == 32);
  CHECK(e.clause_count_bits(9) == 5);
  CHECK_THROWS_AS(make_encoding(0), Error);
}

TEST_CASE("a hand-spelled ROM decodes to its clause") {
  // not z1 | z2 | not z3 with w = 2: fields "0 1 01", "0 0 10", "0 1 11", "0000".
  const Circuit x = rom_circuit(TruthTable::from_string("0101001001110000"));
  const Formula3CNF f = decode_formula(x, make_encoding(2), 3);
  REQUIRE(f.clauses.size() == 1);
  CHECK(f.clauses[0] == Clause{{1, true}, {2, false}, {3, true}});
}

TEST_CASE("all-zero table is the empty formula") {
  const Formula3CNF f = decode_formula(constant_circuit(6, false), make_encoding(2));
  CHECK(f.clauses.empty());
  CHECK(f.V == 3);
}

TEST_CASE("malformed records are decode errors") {
  auto kind = [](const std::string& table, std::optional<std::uint64_t> V = std::nullopt) {
    try {
      decode_formula(rom_circuit(TruthTable::from_string(table)), make_encoding(2), V);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Internal;
  };
  CHECK(kind("1001000000000000") == ErrorKind::Decode);  // pad bit
  CHECK(kind("0100000000000000") == ErrorKind::Decode);  // sign without index
  CHECK(kind("0001000000000001") == ErrorKind::Decode);  // fourth field
  CHECK(kind("0011000000000000", 2) == ErrorKind::Decode);  // index above V
  CHECK(kind("0011000000000000", 3) == ErrorKind::Internal);
  CHECK_THROWS_AS(decode_formula(projection(3, 0), make_encoding(2)), Error);
}

TEST_CASE("encode then decode is the identity") {
  Rng rng(1);
  for (int round = 0; round < 100; ++round) {
    const std::size_t w = static_cast<std::size_t>(rng.range(1, 5));
    const std::uint64_t V = static_cast<std::uint64_t>(rng.range(1, static_cast<std::int64_t>((1u << w) - 1)));
    const Formula3CNF f = random_formula(V, static_cast<std::size_t>(rng.range(0, 20)), rng);
    const ClauseEncoding enc = make_encoding(w);
    CHECK(decode_formula(encode_formula(f, enc), enc, V) == f);
  }
  CHECK(truth_table(encode_formula(Formula3CNF{3, {}}, make_encoding(2))).count_ones() == 0);
  CHECK_THROWS_AS(encode_formula(Formula3CNF{4, {{{4, false}}}}, make_encoding(2)), Error);
  CHECK_THROWS_AS(encode_formula(Formula3CNF{3, {{}}}, make_encoding(2)), Error);
}

TEST_CASE("encode_assignment") {
  const Circuit one = encode_assignment(Bits{1});
  CHECK(one.n_inputs() == 0);
  CHECK(truth_table(one).to_string() == "1");
  CHECK(truth_table(encode_assignment(Bits{1, 0})).to_string() == "10");
  Rng rng(2);
  const Bits bits = rng.bits(37);
  const Circuit w = encode_assignment(bits);
  CHECK(w.n_inputs() == 6);
  const TruthTable t = truth_table(w);
  for (std::size_t i = 0; i < 64; ++i) CHECK(t.get(i) == (i < 37 && bits[i]));
}

TEST_CASE("check_witness examples") {
  const ClauseEncoding enc = make_encoding(2);
  CHECK(check_witness(constant_circuit(5, false), constant_circuit(1, false), enc));
  const Circuit unit = encode_formula(Formula3CNF{1, {{{1, false}}}}, enc);
  CHECK_FALSE(check_witness(unit, encode_assignment(Bits{0}), enc));
  CHECK(check_witness(unit, encode_assignment(Bits{1}), enc));
}

TEST_CASE("check_witness matches the materialized check and streams") {
  Rng rng(3);
  for (int round = 0; round < 60; ++round) {
    const std::size_t w = static_cast<std::size_t>(rng.range(2, 5));
    const std::uint64_t V = (1u << w) - 1;
    auto [f, plant] = planted_formula(V, static_cast<std::size_t>(rng.range(1, 30)), rng);
    const ClauseEncoding enc = make_encoding(w);
    const Circuit x = encode_formula(f, enc);
    const Circuit good = encode_assignment(plant);
    const WitnessCheck ok = check_witness_detailed(x, good, enc);
    CHECK(ok.satisfied);
    CHECK(ok.peak_buffered_bits == 64 + enc.record_width);
    const Circuit bad = encode_assignment(corrupt(f, plant, rng));
    const WitnessCheck r = check_witness_detailed(x, bad, enc);
    CHECK(r.satisfied == materialized_check(f, bad));
    CHECK_FALSE(r.satisfied);
    REQUIRE(r.violated_clause.has_value());
  }
}

TEST_CASE("D accepts exactly the satisfied and padding clauses") {
  Rng rng(4);
  for (int round = 0; round < 60; ++round) {
    const std::size_t w = static_cast<std::size_t>(rng.range(1, 4));
    const std::uint64_t V = (1u << w) - 1;
    auto [f, plant] = planted_formula(V, static_cast<std::size_t>(rng.range(1, 12)), rng);
    const ClauseEncoding enc = make_encoding(w);
    const Circuit x = encode_formula(f, enc, static_cast<std::size_t>(rng.range(0, 2)));
    Bits assignment = rng.coin() ? plant : rng.bits(V);
    // Witnesses with fewer or more inputs than w exercise the range logic.
    if (rng.coin() && assignment.size() > 1) assignment.resize(assignment.size() / 2);
    const Circuit W = encode_assignment(assignment);
    const Circuit D = build_clause_check_circuit(x, W, enc);
    const std::size_t c = x.n_inputs() - enc.record_bits;
    CHECK(D.n_inputs() == c);
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << c); ++i) {
      bool want = true;
      if (i < f.clauses.size()) {
        CnfModel model(V);
        for (std::uint64_t v = 1; v <= V; ++v) model[v - 1] = v - 1 < assignment.size() && assignment[v - 1];
        want = clause_satisfied(f.clauses[i], model);
      }
      REQUIRE(evaluate(D, testsupport::point(i, c)) == want);
    }
    const auto violated = brute_sat(negate(D));
    const WitnessCheck chk = check_witness_detailed(x, W, enc);
    CHECK(violated.has_value() == !chk.satisfied);
    if (violated) CHECK(assignment_to_index(*violated) == *chk.violated_clause);
  }
}

TEST_CASE("D for the empty formula is constant one") {
  const ClauseEncoding enc = make_encoding(2);
  const Circuit D = build_clause_check_circuit(constant_circuit(6, false), encode_assignment(Bits{0, 1}), enc);
  CHECK_FALSE(brute_sat(negate(D)).has_value());
}

TEST_CASE("D copies x once per sign and index bit and W once per literal") {
  const ClauseEncoding enc = make_encoding(3);
  Rng rng(5);
  auto [f, plant] = planted_formula(7, 5, rng);
  const Circuit x = encode_formula(f, enc);
  const Circuit W = encode_assignment(plant);
  const Circuit D = build_clause_check_circuit(x, W, enc);
  const std::size_t x_gates = x.size() - x.n_inputs();
  const std::size_t w_gates = W.size() - W.n_inputs();
  CHECK(D.size() >= 3 * (enc.w + 1) * x_gates + 3 * w_gates);
}

TEST_CASE("cnf solvers agree") {
  Rng rng(6);
  for (int round = 0; round < 300; ++round) {
    const Formula3CNF f = random_formula(static_cast<std::uint64_t>(rng.range(1, 12)), static_cast<std::size_t>(rng.range(0, 40)), rng);
    const auto a = solve_cnf(f);
    const auto b = brute_cnf(f);
    REQUIRE(a.has_value() == b.has_value());
    if (a) CHECK(formula_satisfied(f, *a));
  }
  CHECK(solve_cnf(Formula3CNF{0, {}}).has_value());
  CHECK_FALSE(solve_cnf(Formula3CNF{1, {{{1, false}}, {{1, true}}}}).has_value());
}

TEST_CASE("succinct_brute") {
  const ClauseEncoding enc = make_encoding(2);
  CHECK(succinct_brute(constant_circuit(4, false), enc));
  CHECK_FALSE(succinct_brute(encode_formula(Formula3CNF{1, {{{1, false}}, {{1, true}}}}, enc), enc, 1));

  Rng rng(7);
  for (int round = 0; round < 200; ++round) {
    const std::uint64_t V = static_cast<std::uint64_t>(rng.range(1, 7));
    const Formula3CNF f = random_formula(V, static_cast<std::size_t>(rng.range(1, 24)), rng);
    const Circuit x = encode_formula(f, make_encoding(3));
    bool any = false;
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << V) && !any; ++a)
      any = check_witness(x, encode_assignment(testsupport::point(a, V)), make_encoding(3), V);
    CHECK(succinct_brute(x, make_encoding(3), V) == any);
  }
}
