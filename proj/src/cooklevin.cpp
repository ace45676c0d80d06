#include "accwb/cooklevin.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>

#include "accwb/error.hpp"

namespace accwb {

namespace {

// ---------------------------------------------------------------- parsing

struct Token {
  std::string text;
  std::size_t column;
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    if (pos >= line.size() || line[pos] == '#') break;
    const std::size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != '#') ++pos;
    out.push_back({line.substr(start, pos - start), start + 1});
  }
  return out;
}

class MachineParser {
 public:
  NTM parse(std::string_view text) {
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      std::string line(text.substr(start, end - start));
      if (!line.empty() && line.back() == '\r') line.pop_back();
      ++line_no;
      directive(line_no, tokenize(line));
      if (end == text.size()) break;
      start = end + 1;
    }
    if (!start_) throw ParseError(ErrorKind::Semantic, line_no, 1, "missing 'start' directive");
    if (!accept_) throw ParseError(ErrorKind::Semantic, line_no, 1, "missing 'accept' directive");
    if (!blank_) throw ParseError(ErrorKind::Semantic, line_no, 1, "missing 'blank' directive");
    m_.start = *start_;
    m_.accept = *accept_;
    m_.blank = *blank_;
    for (const auto& [tr, line, column] : pending_) {
      if (tr.state == m_.accept)
        throw ParseError(ErrorKind::Semantic, line, column, "the accept state may not have transitions");
      m_.transitions.push_back(tr);
    }
    return m_;
  }

 private:
  std::size_t state(const std::string& name) {
    auto it = std::find(m_.states.begin(), m_.states.end(), name);
    if (it != m_.states.end()) return static_cast<std::size_t>(it - m_.states.begin());
    m_.states.push_back(name);
    return m_.states.size() - 1;
  }

  std::size_t symbol(std::size_t line, const Token& tok) {
    if (tok.text.size() != 1) throw ParseError(ErrorKind::Semantic, line, tok.column, "symbols are single characters");
    auto it = std::find(m_.symbols.begin(), m_.symbols.end(), tok.text[0]);
    if (it != m_.symbols.end()) return static_cast<std::size_t>(it - m_.symbols.begin());
    m_.symbols.push_back(tok.text[0]);
    return m_.symbols.size() - 1;
  }

  void once(std::optional<std::size_t>& slot, std::size_t value, std::size_t line, const Token& tok) {
    if (slot) throw ParseError(ErrorKind::Semantic, line, tok.column, "duplicate '" + tok.text + "' directive");
    slot = value;
  }

  void directive(std::size_t line, const std::vector<Token>& toks) {
    if (toks.empty()) return;
    const std::string& head = toks[0].text;
    if (head == "start" || head == "accept" || head == "blank") {
      if (toks.size() != 2)
        throw ParseError(ErrorKind::Syntax, line, toks[0].column, "'" + head + "' takes one argument");
      if (head == "start") once(start_, state(toks[1].text), line, toks[0]);
      if (head == "accept") once(accept_, state(toks[1].text), line, toks[0]);
      if (head == "blank") once(blank_, symbol(line, toks[1]), line, toks[0]);
      return;
    }
    if (head == "symbols") {
      for (std::size_t k = 1; k < toks.size(); ++k) symbol(line, toks[k]);
      return;
    }
    if (toks.size() != 6 || toks[2].text != "->")
      throw ParseError(ErrorKind::Syntax, line, toks[0].column,
                       "expected '<state> <symbol> -> <state> <symbol> <L|R|S>'");
    Transition tr;
    tr.state = state(toks[0].text);
    tr.symbol = symbol(line, toks[1]);
    tr.next = state(toks[3].text);
    tr.write = symbol(line, toks[4]);
    const std::string& mv = toks[5].text;
    if (mv == "L")
      tr.move = Move::Left;
    else if (mv == "R")
      tr.move = Move::Right;
    else if (mv == "S")
      tr.move = Move::Stay;
    else
      throw ParseError(ErrorKind::Syntax, line, toks[5].column, "move must be L, R or S");
    for (const auto& p : pending_)
      if (std::get<0>(p) == tr) return;
    pending_.emplace_back(tr, line, toks[0].column);
  }

  NTM m_;
  std::optional<std::size_t> start_, accept_, blank_;
  std::vector<std::tuple<Transition, std::size_t, std::size_t>> pending_;
};

// ---------------------------------------------------------------- execution

void check_run(const NTM& m, std::string_view input, std::size_t t, std::size_t cap) {
  if (t == 0) throw Error(ErrorKind::InvalidArgument, "the step bound must be at least 1");
  if (t > cap)
    throw Error(ErrorKind::ResourceLimit, "step bound " + std::to_string(t) + " exceeds the cap " + std::to_string(cap));
  if (input.size() > t) throw Error(ErrorKind::InvalidArgument, "input longer than the tape");
  for (char c : input) m.symbol_index(c);
}

Configuration initial(const NTM& m, std::string_view input, std::size_t t) {
  Configuration c{m.start, 1, std::vector<std::size_t>(t, m.blank)};
  for (std::size_t k = 0; k < input.size(); ++k) c.tape[k] = m.symbol_index(input[k]);
  return c;
}

std::vector<Configuration> successors(const NTM& m, const Configuration& c) {
  std::vector<Configuration> out;
  const std::size_t t = c.tape.size();
  for (const Transition& tr : m.transitions) {
    if (tr.state != c.state || tr.symbol != c.tape[c.head - 1]) continue;
    std::size_t head = c.head;
    if (tr.move == Move::Left) {
      if (head == 1) continue;
      --head;
    } else if (tr.move == Move::Right) {
      if (head == t) continue;
      ++head;
    }
    Configuration next = c;
    next.tape[c.head - 1] = tr.write;
    next.state = tr.next;
    next.head = head;
    out.push_back(std::move(next));
  }
  return out;
}

auto config_key(const Configuration& c) { return std::tie(c.state, c.head, c.tape); }

// ---------------------------------------------------------------- templates

enum Atom : std::uint32_t {
  RowZero = 1,
  RowBefore = 2,  // i < t
  RowLast = 4,    // i == t
  ColFirst = 8,
  ColNotFirst = 16,
  ColNotLast = 32,
  ColLast = 64,
};
constexpr int kAtoms = 7;

struct Lit {
  bool neg = false;
  int di = 0;
  int dj = 0;
  std::size_t slot = 0;
};

struct Template {
  std::uint32_t atoms = 0;
  int init_symbol = -1;
  std::vector<Lit> lits;
};

struct Plan {
  TableauLayout layout;
  std::vector<Template> templates;
  std::vector<Transition> moves;  // machine transitions plus accept stutters
};

Lit pos(std::size_t slot, int di = 0, int dj = 0) { return Lit{false, di, dj, slot}; }
Lit neg(std::size_t slot, int di = 0, int dj = 0) { return Lit{true, di, dj, slot}; }

Plan make_plan(const NTM& m, std::size_t t) {
  Plan p;
  TableauLayout& L = p.layout;
  L.t = t;
  L.n_symbols = m.symbols.size();
  L.n_states = m.states.size();
  p.moves = m.transitions;
  for (std::size_t a = 0; a < L.n_symbols; ++a) p.moves.push_back({m.accept, a, m.accept, a, Move::Stay});
  std::size_t next_slot = L.transition_slot(p.moves.size());
  const std::size_t prefix = next_slot++;
  const std::size_t accept_chain = next_slot++;
  auto& ts = p.templates;
  auto add = [&](std::uint32_t atoms, std::vector<Lit> lits) { ts.push_back(Template{atoms, -1, std::move(lits)}); };
  auto at_least_one = [&](std::uint32_t atoms, const std::vector<Lit>& lits) {
    if (lits.size() <= 3) {
      add(atoms, lits);
      return;
    }
    std::size_t y = next_slot++;
    add(atoms, {lits[0], lits[1], pos(y)});
    for (std::size_t k = 2; k + 2 < lits.size(); ++k) {
      const std::size_t y2 = next_slot++;
      add(atoms, {neg(y), lits[k], pos(y2)});
      y = y2;
    }
    add(atoms, {neg(y), lits[lits.size() - 2], lits.back()});
  };
  auto exactly_one = [&](const std::vector<std::size_t>& slots) {
    std::vector<Lit> lits;
    for (std::size_t s : slots) lits.push_back(pos(s));
    at_least_one(0, lits);
    for (std::size_t x = 0; x < slots.size(); ++x)
      for (std::size_t y = x + 1; y < slots.size(); ++y) add(0, {neg(slots[x]), neg(slots[y])});
  };

  for (std::size_t a = 0; a < L.n_symbols; ++a)
    ts.push_back(Template{RowZero, static_cast<int>(a), {pos(L.symbol_slot(a))}});
  add(RowZero | ColFirst, {pos(L.state_slot(m.start))});
  add(RowZero | ColNotFirst, {pos(L.no_head_slot())});

  std::vector<std::size_t> sym, st;
  for (std::size_t a = 0; a < L.n_symbols; ++a) sym.push_back(L.symbol_slot(a));
  for (std::size_t q = 0; q <= L.n_states; ++q) st.push_back(L.state_slot(q));
  exactly_one(sym);
  exactly_one(st);

  for (std::size_t q = 0; q < L.n_states; ++q) {
    add(0, {neg(L.state_slot(q)), pos(prefix)});
    add(ColNotFirst, {neg(L.state_slot(q)), neg(prefix, 0, -1)});
  }
  add(ColNotFirst, {neg(prefix, 0, -1), pos(prefix)});

  for (std::size_t q = 0; q < L.n_states; ++q)
    for (std::size_t a = 0; a < L.n_symbols; ++a) {
      std::vector<Lit> lits{neg(L.state_slot(q)), neg(L.symbol_slot(a))};
      for (std::size_t tau = 0; tau < p.moves.size(); ++tau)
        if (p.moves[tau].state == q && p.moves[tau].symbol == a) lits.push_back(pos(L.transition_slot(tau)));
      at_least_one(RowBefore, lits);
    }
  for (std::size_t tau = 0; tau < p.moves.size(); ++tau) {
    const Transition& tr = p.moves[tau];
    const std::size_t T = L.transition_slot(tau);
    add(RowBefore, {neg(T), pos(L.state_slot(tr.state))});
    add(RowBefore, {neg(T), pos(L.symbol_slot(tr.symbol))});
    add(RowBefore, {neg(T), pos(L.symbol_slot(tr.write), 1)});
    switch (tr.move) {
      case Move::Left:
        add(RowBefore | ColNotFirst, {neg(T), pos(L.state_slot(tr.next), 1, -1)});
        add(RowBefore | ColFirst, {neg(T)});
        break;
      case Move::Right:
        add(RowBefore | ColNotLast, {neg(T), pos(L.state_slot(tr.next), 1, 1)});
        add(RowBefore | ColLast, {neg(T)});
        break;
      case Move::Stay: add(RowBefore, {neg(T), pos(L.state_slot(tr.next), 1)}); break;
    }
  }
  for (std::size_t a = 0; a < L.n_symbols; ++a)
    add(RowBefore, {neg(L.no_head_slot()), neg(L.symbol_slot(a)), pos(L.symbol_slot(a), 1)});

  add(RowLast | ColFirst, {pos(accept_chain)});
  add(RowLast | ColNotLast, {neg(accept_chain), pos(L.state_slot(m.accept)), pos(accept_chain, 0, 1)});
  add(RowLast | ColLast, {neg(accept_chain), pos(L.state_slot(m.accept))});

  L.row_bits = static_cast<std::size_t>(std::bit_width(t));
  L.col_bits = static_cast<std::size_t>(std::bit_width(t - 1));
  L.slot_bits = static_cast<std::size_t>(std::bit_width(next_slot - 1));
  L.n_templates = ts.size();
  L.template_bits = static_cast<std::size_t>(std::bit_width(ts.size() - 1));
  L.V = L.variable(t, t, (std::size_t{1} << L.slot_bits) - 1);
  return p;
}

bool atom_holds(std::uint32_t atom, std::size_t i, std::size_t j, std::size_t t) {
  switch (atom) {
    case RowZero: return i == 0;
    case RowBefore: return i < t;
    case RowLast: return i == t;
    case ColFirst: return j == 1;
    case ColNotFirst: return j > 1;
    case ColNotLast: return j < t;
    case ColLast: return j == t;
  }
  return false;
}

std::size_t input_symbol(const NTM& m, std::string_view input, std::size_t j) {
  return j <= input.size() ? m.symbol_index(input[j - 1]) : m.blank;
}

bool applies(const Template& tp, const NTM& m, std::string_view input, std::size_t i, std::size_t j, std::size_t t) {
  for (int k = 0; k < kAtoms; ++k) {
    const std::uint32_t atom = std::uint32_t{1} << k;
    if ((tp.atoms & atom) && !atom_holds(atom, i, j, t)) return false;
  }
  return tp.init_symbol < 0 || input_symbol(m, input, j) == static_cast<std::size_t>(tp.init_symbol);
}

// ---------------------------------------------------------------- circuit helpers

using Wires = std::vector<GateId>;  // most significant first

Wires const_wires(CircuitBuilder& b, std::uint64_t value, std::size_t width) {
  Wires out;
  for (std::size_t k = 0; k < width; ++k) out.push_back(b.add_const(((value >> (width - 1 - k)) & 1U) != 0));
  return out;
}

GateId all_of(CircuitBuilder& b, Wires w) {
  if (w.empty()) return b.const_gate(true);
  if (w.size() == 1) return w[0];
  return b.add_and(std::move(w));
}

GateId equal(CircuitBuilder& b, const Wires& x, const Wires& y) {
  Wires bits;
  for (std::size_t k = 0; k < x.size(); ++k) bits.push_back(b.add_xnor(x[k], y[k]));
  return all_of(b, std::move(bits));
}

GateId less(CircuitBuilder& b, const Wires& x, const Wires& y) {
  Wires terms;
  Wires prefix;
  for (std::size_t k = 0; k < x.size(); ++k) {
    Wires here = prefix;
    here.push_back(b.add_not(x[k]));
    here.push_back(y[k]);
    terms.push_back(all_of(b, std::move(here)));
    prefix.push_back(b.add_xnor(x[k], y[k]));
  }
  if (terms.empty()) return b.const_gate(false);
  return terms.size() == 1 ? terms[0] : b.add_or(std::move(terms));
}

/// x + 1 when up, x - 1 when down, x otherwise.
Wires step(CircuitBuilder& b, const Wires& x, GateId up, GateId down) {
  Wires out(x.size());
  GateId carry = up, borrow = down;
  for (std::size_t k = x.size(); k-- > 0;) {
    const GateId flip = b.add_or({carry, borrow});
    out[k] = b.add_xor(x[k], flip);
    const GateId nx = b.add_not(x[k]);
    carry = b.add_and({x[k], carry});
    borrow = b.add_and({nx, borrow});
  }
  return out;
}

GateId lookup(CircuitBuilder& b, const Wires& k_bits, std::size_t n_templates, auto bit_of) {
  TruthTable table(k_bits.size());
  for (std::size_t k = 0; k < n_templates; ++k) table.set(k, bit_of(k));
  return b.append(rom_circuit(table, "template"), k_bits);
}

}  // namespace

std::size_t NTM::symbol_index(char c) const {
  auto it = std::find(symbols.begin(), symbols.end(), c);
  if (it == symbols.end()) throw Error(ErrorKind::InvalidArgument, std::string("symbol '") + c + "' is not in the alphabet");
  return static_cast<std::size_t>(it - symbols.begin());
}

NTM parse_ntm(std::string_view text) { return MachineParser().parse(text); }

std::string ntm_to_text(const NTM& m) {
  std::ostringstream out;
  out << "start " << m.states[m.start] << "\naccept " << m.states[m.accept] << "\nblank " << m.symbols[m.blank]
      << "\nsymbols";
  for (char c : m.symbols) out << ' ' << c;
  out << '\n';
  for (const Transition& tr : m.transitions)
    out << m.states[tr.state] << ' ' << m.symbols[tr.symbol] << " -> " << m.states[tr.next] << ' '
        << m.symbols[tr.write] << ' ' << (tr.move == Move::Left ? 'L' : tr.move == Move::Right ? 'R' : 'S') << '\n';
  return out.str();
}

bool ntm_accepts(const NTM& m, std::string_view input, std::size_t t, std::size_t cap) {
  check_run(m, input, t, cap);
  auto cmp = [](const Configuration& a, const Configuration& b) { return config_key(a) < config_key(b); };
  std::set<Configuration, decltype(cmp)> frontier(cmp);
  frontier.insert(initial(m, input, t));
  for (std::size_t step = 0;; ++step) {
    for (const Configuration& c : frontier)
      if (c.state == m.accept) return true;
    if (step == t || frontier.empty()) return false;
    std::set<Configuration, decltype(cmp)> next(cmp);
    for (const Configuration& c : frontier)
      for (Configuration& s : successors(m, c)) next.insert(std::move(s));
    frontier = std::move(next);
  }
}

TableauLayout tableau_layout(const NTM& m, std::string_view input, std::size_t t) {
  check_run(m, input, t, t);
  return make_plan(m, t).layout;
}

ClauseEncoding tableau_encoding(const TableauLayout& layout) { return make_encoding(layout.var_bits()); }

Formula3CNF tableau_to_3cnf(const NTM& m, std::string_view input, std::size_t t, std::size_t cap) {
  check_run(m, input, t, cap);
  const Plan p = make_plan(m, t);
  const TableauLayout& L = p.layout;
  Formula3CNF f{L.V, {}};
  for (std::size_t i = 0; i <= t; ++i)
    for (std::size_t j = 1; j <= t; ++j)
      for (const Template& tp : p.templates) {
        if (!applies(tp, m, input, i, j, t)) continue;
        Clause c;
        for (const Lit& l : tp.lits)
          c.push_back(CnfLiteral{L.variable(i + static_cast<std::size_t>(l.di),
                                            static_cast<std::size_t>(static_cast<int>(j) + l.dj), l.slot),
                                 l.neg});
        f.clauses.push_back(std::move(c));
      }
  return f;
}

Circuit clause_generator_circuit(const NTM& m, std::string_view input, std::size_t t, const ClauseEncoding& enc,
                                 std::size_t cap) {
  check_run(m, input, t, cap);
  const Plan p = make_plan(m, t);
  const TableauLayout& L = p.layout;
  if (enc.w < L.var_bits())
    throw Error(ErrorKind::Encoding, "tableau variables need " + std::to_string(L.var_bits()) +
                                         " index bits, the encoding has " + std::to_string(enc.w));
  const std::size_t n = L.clause_bits() + 2 + enc.field_bits;
  CircuitBuilder b(n, "tableau");
  std::size_t next = 0;
  auto take = [&](std::size_t width) {
    Wires w;
    for (std::size_t k = 0; k < width; ++k) w.push_back(b.input(next++));
    return w;
  };
  const Wires row = take(L.row_bits), col = take(L.col_bits), tpl = take(L.template_bits);
  const Wires field = take(2), bit = take(enc.field_bits);

  // Cell atoms against the hardwired bounds t (rows) and t - 1 (columns).
  const Wires t_row = const_wires(b, t, L.row_bits);
  const Wires last_col = const_wires(b, t - 1, L.col_bits);
  const Wires zero_row = const_wires(b, 0, L.row_bits);
  const Wires zero_col = const_wires(b, 0, L.col_bits);
  const GateId row_before = less(b, row, t_row);
  const GateId row_last = equal(b, row, t_row);
  const GateId col_first = equal(b, col, zero_col);
  const GateId col_last = equal(b, col, last_col);
  const GateId col_not_last = less(b, col, last_col);
  const GateId atom_gate[kAtoms] = {equal(b, row, zero_row), row_before,          row_last,    col_first,
                                    b.add_not(col_first),    col_not_last,        col_last};
  const GateId cell_ok = b.add_and({b.add_or({row_before, row_last}), b.add_or({col_not_last, col_last})});

  Wires ok{cell_ok, lookup(b, tpl, L.n_templates, [](std::size_t) { return true; })};
  for (int a = 0; a < kAtoms; ++a) {
    const std::uint32_t atom = std::uint32_t{1} << a;
    const GateId needs = lookup(b, tpl, L.n_templates, [&](std::size_t k) { return (p.templates[k].atoms & atom) != 0; });
    ok.push_back(b.add_or({b.add_not(needs), atom_gate[a]}));
  }
  for (std::size_t s = 0; s < L.n_symbols; ++s) {
    const GateId needs = lookup(b, tpl, L.n_templates,
                                [&](std::size_t k) { return p.templates[k].init_symbol == static_cast<int>(s); });
    TruthTable here(L.col_bits);
    for (std::size_t j = 1; j <= here.size(); ++j) here.set(j - 1, input_symbol(m, input, j) == s);
    ok.push_back(b.add_or({b.add_not(needs), b.append(rom_circuit(here, "input"), col)}));
  }
  const GateId valid = all_of(b, std::move(ok));

  std::vector<GateId> leaves(4 * enc.L, b.const_gate(false));
  for (std::size_t f = 0; f < 3; ++f) {
    auto has = [&](std::size_t k) { return f < p.templates[k].lits.size(); };
    auto lit_bit = [&](auto get) {
      return lookup(b, tpl, L.n_templates, [&](std::size_t k) { return has(k) && get(p.templates[k].lits[f]); });
    };
    const GateId live = b.add_and({valid, lit_bit([](const Lit&) { return true; })});
    const GateId sign = lit_bit([](const Lit& l) { return l.neg; });
    const Wires r = step(b, row, lit_bit([](const Lit& l) { return l.di == 1; }), b.const_gate(false));
    const Wires c = step(b, col, lit_bit([](const Lit& l) { return l.dj == 1; }),
                         lit_bit([](const Lit& l) { return l.dj == -1; }));
    Wires index = r;
    index.insert(index.end(), c.begin(), c.end());
    for (std::size_t k = 0; k < L.slot_bits; ++k) {
      const std::size_t shift = L.slot_bits - 1 - k;
      index.push_back(lit_bit([&](const Lit& l) { return ((l.slot >> shift) & 1U) != 0; }));
    }
    const std::size_t base = f * enc.L + (enc.L - enc.w - 1);
    leaves[base] = b.add_and({live, sign});
    const std::size_t offset = enc.w - index.size();
    for (std::size_t k = 0; k < index.size(); ++k) leaves[base + 1 + offset + k] = b.add_and({live, index[k]});
  }
  Wires select = field;
  select.insert(select.end(), bit.begin(), bit.end());
  return std::move(b).build(add_mux_tree(b, select, leaves));
}

std::vector<Configuration> decode_tableau(const NTM& m, std::string_view input, std::size_t t, const CnfModel& model) {
  const TableauLayout L = tableau_layout(m, input, t);
  auto value = [&](std::uint64_t v) { return v <= model.size() && model[v - 1]; };
  std::vector<Configuration> rows;
  for (std::size_t i = 0; i <= t; ++i) {
    Configuration c{L.n_states, 0, std::vector<std::size_t>(t, 0)};
    for (std::size_t j = 1; j <= t; ++j) {
      for (std::size_t a = 0; a < L.n_symbols; ++a)
        if (value(L.variable(i, j, L.symbol_slot(a)))) {
          c.tape[j - 1] = a;
          break;
        }
      for (std::size_t q = 0; q < L.n_states; ++q)
        if (value(L.variable(i, j, L.state_slot(q)))) {
          if (c.head == 0) {
            c.head = j;
            c.state = q;
          }
          break;
        }
    }
    rows.push_back(std::move(c));
  }
  return rows;
}

bool replay_path(const NTM& m, std::string_view input, std::size_t t, const std::vector<Configuration>& rows) {
  if (rows.size() != t + 1 || !(rows[0] == initial(m, input, t))) return false;
  for (std::size_t i = 0; i < t; ++i) {
    const Configuration& c = rows[i];
    if (c.state == m.accept) {
      if (!(rows[i + 1] == c)) return false;
      continue;
    }
    if (c.head == 0 || c.head > t) return false;
    const auto next = successors(m, c);
    if (std::find(next.begin(), next.end(), rows[i + 1]) == next.end()) return false;
  }
  return rows[t].state == m.accept;
}

}  // namespace accwb
