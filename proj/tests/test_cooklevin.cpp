#include <doctest.h>

#include <filesystem>
#include <functional>

#include "accwb/circuit_io.hpp"
#include "accwb/cooklevin.hpp"
#include "accwb/error.hpp"
#include "support.hpp"

using namespace accwb;

namespace {

NTM machine(const std::string& name) {
  return parse_ntm(read_file(std::string(ACCWB_MACHINE_DIR) + "/" + name + ".tm"));
}

std::vector<std::string> machine_names() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(ACCWB_MACHINE_DIR)) out.push_back(e.path().stem().string());
  std::sort(out.begin(), out.end());
  return out;
}

/// Depth-first enumeration of every path, no state merging.
bool enumerate_paths(const NTM& m, std::vector<std::size_t> tape, std::size_t head, std::size_t state,
                     std::size_t steps_left) {
  if (state == m.accept) return true;
  if (steps_left == 0) return false;
  for (const Transition& tr : m.transitions) {
    if (tr.state != state || tr.symbol != tape[head]) continue;
    if ((tr.move == Move::Left && head == 0) || (tr.move == Move::Right && head + 1 == tape.size())) continue;
    auto next = tape;
    next[head] = tr.write;
    const std::size_t h = tr.move == Move::Left ? head - 1 : tr.move == Move::Right ? head + 1 : head;
    if (enumerate_paths(m, next, h, tr.next, steps_left - 1)) return true;
  }
  return false;
}

bool path_oracle(const NTM& m, const std::string& input, std::size_t t) {
  std::vector<std::size_t> tape(t, m.blank);
  for (std::size_t k = 0; k < input.size(); ++k) tape[k] = m.symbol_index(input[k]);
  return enumerate_paths(m, tape, 0, m.start, t);
}

std::vector<std::string> inputs_up_to(std::size_t len) {
  std::vector<std::string> out{""};
  for (std::size_t l = 1; l <= len; ++l)
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << l); ++v) {
      std::string s;
      for (std::size_t k = 0; k < l; ++k) s += ((v >> (l - 1 - k)) & 1U) ? '1' : '0';
      out.push_back(s);
    }
  return out;
}

NTM random_machine(Rng& rng) {
  std::string text = "start q0\naccept acc\nblank _\nsymbols 0 1\n";
  const int states = static_cast<int>(rng.range(1, 3));
  const int moves = static_cast<int>(rng.range(2, 8));
  const char* sym = "01_";
  const char* mv = "LRS";
  for (int k = 0; k < moves; ++k) {
    const auto from = "q" + std::to_string(rng.below(static_cast<std::uint64_t>(states)));
    const auto to = rng.chance(0.25) ? std::string("acc") : "q" + std::to_string(rng.below(static_cast<std::uint64_t>(states)));
    text += from + " " + sym[rng.below(3)] + " -> " + to + " " + sym[rng.below(3)] + " " + mv[rng.below(3)] + "\n";
  }
  return parse_ntm(text);
}

}  // namespace

TEST_CASE("machine parsing") {
  const NTM m = machine("even_ones");
  CHECK(m.states.size() == 3);
  CHECK(m.states[m.start] == "even");
  CHECK(m.symbols[m.blank] == '_');
  CHECK(m.transitions.size() == 5);
  CHECK(parse_ntm(ntm_to_text(m)).transitions == m.transitions);

  auto kind = [](const std::string& text) {
    try {
      parse_ntm(text);
    } catch (const ParseError& e) {
      return e.kind();
    }
    return ErrorKind::Internal;
  };
  CHECK(kind("start a\naccept b\n") == ErrorKind::Semantic);
  CHECK(kind("start a\naccept b\nblank _\na 0 -> b 1 X\n") == ErrorKind::Syntax);
  CHECK(kind("start a\naccept b\nblank _\nb 0 -> a 0 S\n") == ErrorKind::Semantic);
  CHECK(kind("start a\naccept b\nblank __\n") == ErrorKind::Semantic);
  CHECK(kind("start a\nstart c\naccept b\nblank _\n") == ErrorKind::Semantic);
  CHECK(kind("start a\naccept b\nblank _\na 0 b 1 R\n") == ErrorKind::Syntax);
}

TEST_CASE("ntm_accepts examples") {
  CHECK(ntm_accepts(machine("accept_now"), "", 1));
  CHECK_FALSE(ntm_accepts(machine("no_moves"), "01", 3));
  CHECK_FALSE(ntm_accepts(machine("spin"), "1", 8));
  CHECK(ntm_accepts(machine("find_one"), "001", 3));
  CHECK_FALSE(ntm_accepts(machine("find_one"), "0", 1));
  CHECK_FALSE(ntm_accepts(machine("find_one"), "000", 6));
  CHECK(ntm_accepts(machine("even_ones"), "0110", 5));
  CHECK_FALSE(ntm_accepts(machine("even_ones"), "0110", 4));
  CHECK(ntm_accepts(machine("guess_write"), "11", 3));
  CHECK_FALSE(ntm_accepts(machine("guess_write"), "10", 8));
  CHECK_THROWS_AS(ntm_accepts(machine("spin"), "1", 13), Error);
  CHECK_THROWS_AS(ntm_accepts(machine("spin"), "111", 2), Error);
  CHECK_THROWS_AS(ntm_accepts(machine("spin"), "2", 2), Error);
}

TEST_CASE("ntm_accepts matches path enumeration") {
  for (const auto& name : machine_names()) {
    const NTM m = machine(name);
    for (std::size_t t = 1; t <= 6; ++t)
      for (const auto& in : inputs_up_to(std::min<std::size_t>(t, 3)))
        CHECK_MESSAGE(ntm_accepts(m, in, t) == path_oracle(m, in, t), name << " '" << in << "' t=" << t);
  }
  Rng rng(21);
  for (int r = 0; r < 40; ++r) {
    const NTM m = random_machine(rng);
    for (std::size_t t = 1; t <= 5; ++t)
      for (const auto& in : inputs_up_to(std::min<std::size_t>(t, 2)))
        CHECK(ntm_accepts(m, in, t) == path_oracle(m, in, t));
  }
}

TEST_CASE("tableau formula is 3-CNF over the layout") {
  const NTM m = machine("bounce");
  const Formula3CNF f = tableau_to_3cnf(m, "01", 4);
  const TableauLayout L = tableau_layout(m, "01", 4);
  CHECK(f.V == L.V);
  for (const Clause& c : f.clauses) {
    CHECK(!c.empty());
    CHECK(c.size() <= 3);
    for (const CnfLiteral& l : c) {
      CHECK(l.var >= 1);
      CHECK(l.var <= f.V);
    }
  }
  CHECK(solve_cnf(tableau_to_3cnf(machine("accept_now"), "", 1)).has_value());
  CHECK_FALSE(solve_cnf(tableau_to_3cnf(machine("spin"), "0", 5)).has_value());
}

TEST_CASE("tableau satisfiability equals acceptance, and models replay") {
  std::vector<std::pair<NTM, std::string>> cases;
  for (const auto& name : machine_names())
    for (const auto& in : inputs_up_to(2)) cases.emplace_back(machine(name), in);
  Rng rng(22);
  for (int r = 0; r < 10; ++r) cases.emplace_back(random_machine(rng), "0" + std::string(rng.coin() ? "1" : ""));
  for (const auto& [m, in] : cases)
    for (std::size_t t = std::max<std::size_t>(1, in.size()); t <= 5; ++t) {
      const Formula3CNF f = tableau_to_3cnf(m, in, t);
      const auto model = solve_cnf(f);
      const bool accepts = ntm_accepts(m, in, t);
      REQUIRE(model.has_value() == accepts);
      if (model) CHECK(replay_path(m, in, t, decode_tableau(m, in, t, *model)));
    }
}

TEST_CASE("replay rejects a broken path") {
  const NTM m = machine("even_ones");
  const auto model = solve_cnf(tableau_to_3cnf(m, "11", 4));
  REQUIRE(model.has_value());
  auto rows = decode_tableau(m, "11", 4, *model);
  CHECK(replay_path(m, "11", 4, rows));
  rows[2].tape[0] = m.symbol_index('0');
  CHECK_FALSE(replay_path(m, "11", 4, rows));
}

TEST_CASE("generator circuit decodes to the tableau formula") {
  for (const auto& name : machine_names())
    for (std::size_t t : {1, 2, 3, 5}) {
      const NTM m = machine(name);
      const std::string in = t >= 2 ? "10" : "1";
      const TableauLayout L = tableau_layout(m, in, t);
      const ClauseEncoding enc = tableau_encoding(L);
      const Circuit x = clause_generator_circuit(m, in, t, enc);
      CHECK(x.n_inputs() == L.clause_bits() + enc.record_bits);
      REQUIRE_MESSAGE(decode_formula(x, enc, L.V) == tableau_to_3cnf(m, in, t), name << " t=" << t);
    }
  const NTM m = machine("bounce");
  CHECK_THROWS_AS(clause_generator_circuit(m, "0", 3, make_encoding(3)), Error);
  // A wider encoding than needed still decodes to the same formula.
  const TableauLayout L = tableau_layout(m, "0", 3);
  const ClauseEncoding wide = make_encoding(L.var_bits() + 3);
  CHECK(decode_formula(clause_generator_circuit(m, "0", 3, wide), wide, L.V) == tableau_to_3cnf(m, "0", 3));
}

TEST_CASE("end to end through the succinct decoder") {
  for (const auto& name : machine_names())
    for (const std::string in : {"0", "11", "01"})
      for (std::size_t t : {2, 3, 4}) {
        const NTM m = machine(name);
        const TableauLayout L = tableau_layout(m, in, t);
        const ClauseEncoding enc = tableau_encoding(L);
        CHECK_MESSAGE(succinct_brute(clause_generator_circuit(m, in, t, enc), enc, L.V) == ntm_accepts(m, in, t),
                      name << " '" << in << "' t=" << t);
      }
}

TEST_CASE("t and t + 1 differ only in constants") {
  const NTM m = machine("bounce");
  for (std::size_t t : {5, 6, 9, 10}) {
    const TableauLayout a = tableau_layout(m, "01", t), b = tableau_layout(m, "01", t + 1);
    if (a.var_bits() != b.var_bits() || a.clause_bits() != b.clause_bits()) continue;
    const Circuit x = clause_generator_circuit(m, "01", t, tableau_encoding(a), 16);
    const Circuit y = clause_generator_circuit(m, "01", t + 1, tableau_encoding(b), 16);
    REQUIRE(x.size() == y.size());
    std::size_t differing = 0;
    for (GateId g = 1; g <= x.size(); ++g) {
      const Gate& p = x.gate(g);
      const Gate& q = y.gate(g);
      CHECK(p.kind == q.kind);
      CHECK(p.fanin == q.fanin);
      if (p.param != q.param) {
        CHECK(p.kind == GateKind::Const);
        ++differing;
      }
    }
    CHECK(differing > 0);
  }
}

TEST_CASE("generator size grows slowly with t") {
  const NTM m = machine("bounce");
  std::vector<std::size_t> sizes;
  for (std::size_t t = 2; t <= 256; t *= 2) {
    const TableauLayout L = tableau_layout(m, "01", t);
    sizes.push_back(clause_generator_circuit(m, "01", t, tableau_encoding(L), 256).size());
  }
  for (std::size_t k = 1; k < sizes.size(); ++k) {
    const double log_t = static_cast<double>(k);  // t = 2^k
    MESSAGE("t=" << (2u << (k - 1)) << " size=" << sizes[k - 1] << " -> " << sizes[k]);
    CHECK(static_cast<double>(sizes[k]) <= static_cast<double>(sizes[k - 1]) + 120.0 * log_t);
  }
}
