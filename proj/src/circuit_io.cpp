#include "accwb/circuit_io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "accwb/error.hpp"

namespace accwb {

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> split_tokens(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    tokens.push_back(Token{line.substr(start, i - start), start + 1});
  }
  return tokens;
}

bool is_ident(std::string_view s) {
  if (s.empty()) return false;
  const auto first = static_cast<unsigned char>(s[0]);
  if (!std::isalpha(first) && s[0] != '_') return false;
  for (char ch : s) {
    const auto c = static_cast<unsigned char>(ch);
    if (!std::isalnum(c) && ch != '_' && ch != '-' && ch != '.') return false;
  }
  return true;
}

class LineParser {
 public:
  LineParser(std::size_t line_no, std::vector<Token> tokens, std::size_t line_len)
      : line_(line_no), tokens_(std::move(tokens)), end_column_(line_len + 1) {}

  [[noreturn]] void syntax(const std::string& msg, std::size_t column) const {
    throw ParseError(ErrorKind::Syntax, line_, column, msg);
  }
  [[noreturn]] void semantic(const std::string& msg, std::size_t column) const {
    throw ParseError(ErrorKind::Semantic, line_, column, msg);
  }

  bool done() const { return pos_ >= tokens_.size(); }
  std::size_t column() const { return done() ? end_column_ : tokens_[pos_].column; }

  const Token& next(const char* what) {
    if (done()) syntax(std::string("expected ") + what, end_column_);
    return tokens_[pos_++];
  }

  void keyword(std::string_view word) {
    const Token& t = next(std::string(word).c_str());
    if (t.text != word) syntax("expected '" + std::string(word) + "'", t.column);
  }

  std::uint64_t number(const char* what, std::uint64_t max = UINT32_MAX) {
    const Token& t = next(what);
    std::uint64_t value = 0;
    const char* first = t.text.data();
    const char* last = first + t.text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) syntax(std::string("expected ") + what, t.column);
    if (value > max) semantic(std::string(what) + " out of range", t.column);
    return value;
  }

  void finish() {
    if (!done()) syntax("unexpected trailing token", tokens_[pos_].column);
  }

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
  std::vector<Token> tokens_;
  std::size_t end_column_;
  std::size_t pos_ = 0;
};

}  // namespace

Circuit parse_circuit(std::string_view text) {
  std::string name;
  std::size_t n_inputs = 0;
  bool have_header = false;
  GateId output = 0;
  std::vector<Gate> gates;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view raw = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    auto tokens = split_tokens(raw);
    if (tokens.empty() || tokens.front().text.front() == '#') continue;
    LineParser p(line_no, std::move(tokens), raw.size());

    if (!have_header) {
      p.keyword("circuit");
      const Token& ident = p.next("circuit name");
      if (!is_ident(ident.text)) p.syntax("invalid circuit name", ident.column);
      name = std::string(ident.text);
      p.keyword("inputs");
      n_inputs = p.number("input count", 1U << 20);
      p.finish();
      have_header = true;
      continue;
    }
    if (output != 0) p.syntax("nothing may follow the output line", p.column());

    const std::size_t first_col = p.column();
    const Token& head = p.next("gate id or 'output'");
    if (head.text == "output") {
      const std::size_t col = p.column();
      const auto id = p.number("output id");
      if (id == 0 || id > gates.size()) p.semantic("output refers to an undefined gate", col);
      p.finish();
      output = static_cast<GateId>(id);
      continue;
    }

    std::uint64_t id = 0;
    {
      const char* first = head.text.data();
      const char* last = first + head.text.size();
      auto [ptr, ec] = std::from_chars(first, last, id);
      if (ec != std::errc() || ptr != last) p.syntax("expected gate id or 'output'", first_col);
    }
    if (id <= gates.size()) p.semantic("duplicate gate id " + std::to_string(id), first_col);
    if (id != gates.size() + 1)
      p.semantic("gate ids must be consecutive; expected " + std::to_string(gates.size() + 1), first_col);
    p.keyword("=");

    const Token& kind_tok = p.next("gate kind");
    Gate g;
    g.id = static_cast<GateId>(id);
    auto read_fanin = [&](bool at_least_one) {
      if (at_least_one && p.done()) p.semantic("gate needs at least one fanin", p.column());
      while (!p.done()) {
        const std::size_t col = p.column();
        const auto f = p.number("fanin id");
        if (f == 0 || f >= id) p.semantic("fanin " + std::to_string(f) + " is not an earlier gate", col);
        g.fanin.push_back(static_cast<GateId>(f));
      }
    };
    if (kind_tok.text == "INPUT") {
      g.kind = GateKind::Input;
      const std::size_t col = p.column();
      g.param = static_cast<std::uint32_t>(p.number("input index"));
      if (id > n_inputs) p.semantic("INPUT gate beyond the declared input count", first_col);
      if (g.param != id - 1)
        p.semantic("gate " + std::to_string(id) + " must be INPUT " + std::to_string(id - 1), col);
      p.finish();
    } else {
      if (id <= n_inputs)
        p.semantic("gate " + std::to_string(id) + " must be INPUT " + std::to_string(id - 1), kind_tok.column);
      if (kind_tok.text == "CONST") {
        g.kind = GateKind::Const;
        const std::size_t col = p.column();
        g.param = static_cast<std::uint32_t>(p.number("constant bit"));
        if (g.param > 1) p.semantic("constant must be 0 or 1", col);
        p.finish();
      } else if (kind_tok.text == "NOT") {
        g.kind = GateKind::Not;
        read_fanin(true);
        if (g.fanin.size() != 1) p.semantic("NOT takes exactly one fanin", kind_tok.column);
      } else if (kind_tok.text == "AND") {
        g.kind = GateKind::And;
        read_fanin(true);
      } else if (kind_tok.text == "OR") {
        g.kind = GateKind::Or;
        read_fanin(true);
      } else if (kind_tok.text == "MOD") {
        g.kind = GateKind::Mod;
        const std::size_t col = p.column();
        const auto m = p.number("modulus");
        if (m < 2) p.semantic("modulus must be at least 2", col);
        g.param = static_cast<std::uint32_t>(m);
        read_fanin(true);
      } else {
        p.syntax("unknown gate kind '" + std::string(kind_tok.text) + "'", kind_tok.column);
      }
    }
    gates.push_back(std::move(g));
  }
  if (!have_header) throw ParseError(ErrorKind::Syntax, line_no, 1, "missing 'circuit' header");
  if (gates.size() < n_inputs)
    throw ParseError(ErrorKind::Semantic, line_no, 1, "fewer gates than declared inputs");
  if (output == 0) throw ParseError(ErrorKind::Syntax, line_no, 1, "missing 'output' line");
  return Circuit(std::move(name), n_inputs, std::move(gates), output);
}

std::string serialize_circuit(const Circuit& circuit) {
  std::string name = circuit.name();
  if (!is_ident(name)) {
    for (char& ch : name)
      if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_' && ch != '-' && ch != '.') ch = '_';
    if (name.empty() || !is_ident(name)) name = "c_" + name;
  }
  std::ostringstream out;
  out << "circuit " << name << " inputs " << circuit.n_inputs() << '\n';
  for (const Gate& g : circuit.gates()) {
    out << g.id << " = " << to_string(g.kind);
    if (g.kind == GateKind::Input || g.kind == GateKind::Const || g.kind == GateKind::Mod) out << ' ' << g.param;
    for (GateId f : g.fanin) out << ' ' << f;
    out << '\n';
  }
  out << "output " << circuit.output() << '\n';
  return out.str();
}

TruthTable read_truthtable(std::string_view bytes) {
  constexpr std::string_view prefix = "tt n=";
  if (bytes.substr(0, prefix.size()) != prefix) throw Error(ErrorKind::Format, "missing 'tt n=' header");
  const std::size_t nl = bytes.find('\n');
  if (nl == std::string_view::npos) throw Error(ErrorKind::Format, "unterminated header");
  const std::string_view digits = bytes.substr(prefix.size(), nl - prefix.size());
  std::size_t n = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
  if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size())
    throw Error(ErrorKind::Format, "bad input count in header");
  if (n > TruthTable::kMaxInputs) throw Error(ErrorKind::Format, "input count too large");
  const std::string_view payload = bytes.substr(nl + 1);
  const std::uint64_t points = std::uint64_t{1} << n;
  const std::uint64_t expected = (points + 7) / 8;
  if (payload.size() != expected)
    throw Error(ErrorKind::Format, "payload has " + std::to_string(payload.size()) + " bytes, expected " +
                                       std::to_string(expected));
  if (points < 8) {
    const auto last = static_cast<unsigned char>(payload[0]);
    if (last >> points) throw Error(ErrorKind::Format, "unused bits of the last byte must be zero");
  }
  TruthTable table(n);
  auto words = table.words();
  for (std::size_t b = 0; b < payload.size(); ++b)
    words[b / 8] |= static_cast<std::uint64_t>(static_cast<unsigned char>(payload[b])) << (8 * (b % 8));
  return table;
}

std::string write_truthtable(const TruthTable& table) {
  std::string out = "tt n=" + std::to_string(table.n_inputs()) + "\n";
  const std::uint64_t bytes = (table.size() + 7) / 8;
  const auto words = table.words();
  for (std::uint64_t b = 0; b < bytes; ++b)
    out.push_back(static_cast<char>((words[b / 8] >> (8 * (b % 8))) & 0xFF));
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write '" + path + "'");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
}

Circuit load_circuit(const std::string& path) { return parse_circuit(read_file(path)); }

}  // namespace accwb
