#include "accwb/succinct.hpp"

#include <bit>

#include "accwb/error.hpp"

namespace accwb {

namespace {

std::size_t ceil_log2(std::uint64_t v) { return v <= 1 ? 0 : static_cast<std::size_t>(std::bit_width(v - 1)); }

void check_table_arity(const Circuit& x, const ClauseEncoding& enc, std::size_t cap) {
  if (x.n_inputs() < enc.record_bits)
    throw Error(ErrorKind::InputArity, "formula circuit has " + std::to_string(x.n_inputs()) +
                                           " inputs, a record needs " + std::to_string(enc.record_bits));
  if (x.n_inputs() > cap)
    throw Error(ErrorKind::ResourceLimit, "formula circuit has " + std::to_string(x.n_inputs()) +
                                              " inputs, enumeration cap is " + std::to_string(cap));
}

/// Walks T(x) in order, 64 entries at a time, handing out one record at a time.
class RecordStream {
 public:
  RecordStream(const Circuit& x, const ClauseEncoding& enc)
      : sim_(x), n_(x.n_inputs()), width_(enc.record_width), record_(enc.record_width) {}

  std::uint64_t records() const { return (std::uint64_t{1} << n_) / width_; }

  /// Bits of the next record; valid until the following call.
  const std::vector<std::uint8_t>& next() {
    for (std::size_t b = 0; b < width_; ++b) {
      if (lane_ == 64 || !loaded_) {
        block_ = sim_.run(base_);
        base_ += 64;
        lane_ = 0;
        loaded_ = true;
      }
      record_[b] = static_cast<std::uint8_t>((block_ >> lane_) & 1U);
      ++lane_;
    }
    return record_;
  }

  std::size_t buffered_bits() const { return 64 + width_; }

 private:
  BlockSimulator sim_;
  std::size_t n_;
  std::size_t width_;
  std::vector<std::uint8_t> record_;
  std::uint64_t block_ = 0;
  std::uint64_t base_ = 0;
  std::size_t lane_ = 0;
  bool loaded_ = false;
};

/// Literals of one record; an empty result is a padding clause.
Clause decode_record(const std::vector<std::uint8_t>& bits, const ClauseEncoding& enc, std::uint64_t max_var,
                     std::uint64_t clause) {
  auto fail = [&](std::size_t field, const std::string& what) {
    throw Error(ErrorKind::Decode, "clause " + std::to_string(clause) + ", field " + std::to_string(field) + ": " + what);
  };
  Clause out;
  const std::size_t L = enc.L, w = enc.w;
  for (std::size_t f = 0; f < 3; ++f) {
    const std::size_t at = f * L;
    for (std::size_t b = 0; b + w + 1 < L; ++b)
      if (bits[at + b]) fail(f, "nonzero pad bit");
    const bool sign = bits[at + L - w - 1] != 0;
    std::uint64_t index = 0;
    for (std::size_t b = L - w; b < L; ++b) index = (index << 1) | bits[at + b];
    if (index == 0) {
      if (sign) fail(f, "absent literal with the sign bit set");
      continue;
    }
    if (index > max_var) fail(f, "variable " + std::to_string(index) + " exceeds " + std::to_string(max_var));
    out.push_back(CnfLiteral{index, sign});
  }
  for (std::size_t b = 3 * L; b < 4 * L; ++b)
    if (bits[b]) fail(3, "the fourth field must be zero");
  return out;
}

}  // namespace

std::size_t ClauseEncoding::clause_count_bits(std::size_t table_inputs) const {
  if (table_inputs < record_bits)
    throw Error(ErrorKind::InputArity, "table too small for one clause record");
  return table_inputs - record_bits;
}

ClauseEncoding make_encoding(std::size_t w) {
  if (w < 1 || w > 32) throw Error(ErrorKind::InvalidArgument, "variable width must be in 1..32");
  ClauseEncoding enc;
  enc.w = w;
  enc.L = std::bit_ceil(w + 1);
  enc.record_width = 4 * enc.L;
  enc.field_bits = static_cast<std::size_t>(std::countr_zero(enc.L));
  enc.record_bits = enc.field_bits + 2;
  return enc;
}

Formula3CNF decode_formula(const Circuit& x, const ClauseEncoding& enc, std::optional<std::uint64_t> V,
                           std::size_t cap) {
  check_table_arity(x, enc, cap);
  Formula3CNF f;
  f.V = V.value_or(enc.max_var());
  if (f.V > enc.max_var()) throw Error(ErrorKind::Encoding, "declared variable count exceeds 2^w - 1");
  RecordStream stream(x, enc);
  const std::uint64_t records = stream.records();
  for (std::uint64_t i = 0; i < records; ++i) {
    Clause c = decode_record(stream.next(), enc, f.V, i);
    if (!c.empty()) f.clauses.push_back(std::move(c));
  }
  return f;
}

Circuit encode_formula(const Formula3CNF& f, const ClauseEncoding& enc, std::size_t min_clause_bits) {
  if (f.V > enc.max_var())
    throw Error(ErrorKind::Encoding, std::to_string(f.V) + " variables do not fit in " + std::to_string(enc.w) + " bits");
  for (std::size_t i = 0; i < f.clauses.size(); ++i) {
    const Clause& c = f.clauses[i];
    if (c.empty() || c.size() > 3)
      throw Error(ErrorKind::Encoding, "clause " + std::to_string(i) + " has " + std::to_string(c.size()) +
                                           " literals; 1 to 3 are representable");
    for (const CnfLiteral& lit : c)
      if (lit.var == 0 || lit.var > f.V)
        throw Error(ErrorKind::Encoding, "clause " + std::to_string(i) + " mentions variable " + std::to_string(lit.var));
  }
  const std::size_t clause_bits = std::max(min_clause_bits, ceil_log2(f.clauses.size()));
  const std::size_t n = clause_bits + enc.record_bits;
  if (n > TruthTable::kMaxInputs) throw Error(ErrorKind::Encoding, "formula too large to encode");
  TruthTable table(n);
  for (std::size_t i = 0; i < f.clauses.size(); ++i) {
    const std::uint64_t base = static_cast<std::uint64_t>(i) * enc.record_width;
    for (std::size_t k = 0; k < f.clauses[i].size(); ++k) {
      const CnfLiteral& lit = f.clauses[i][k];
      const std::uint64_t at = base + k * enc.L;
      table.set(at + enc.L - enc.w - 1, lit.negated);
      for (std::size_t b = 0; b < enc.w; ++b) table.set(at + enc.L - enc.w + b, (lit.var >> (enc.w - 1 - b)) & 1U);
    }
  }
  return rom_circuit(table, "formula");
}

Circuit encode_assignment(const Bits& bits) {
  const std::size_t m = ceil_log2(bits.size());
  TruthTable table(m);
  for (std::size_t i = 0; i < bits.size(); ++i) table.set(i, bits[i] != 0);
  return rom_circuit(table, "witness");
}

bool witness_value(const Circuit& W, std::uint64_t v) {
  if (v == 0) throw Error(ErrorKind::InvalidArgument, "variables are numbered from 1");
  const std::uint64_t index = v - 1;
  const std::size_t m = W.n_inputs();
  if (m < 64 && (index >> m) != 0) return false;
  return evaluate(W, index_to_assignment(index, m));
}

WitnessCheck check_witness_detailed(const Circuit& x, const Circuit& W, const ClauseEncoding& enc,
                                    std::optional<std::uint64_t> V, std::size_t cap) {
  check_table_arity(x, enc, cap);
  const std::uint64_t max_var = V.value_or(enc.max_var());
  WitnessCheck result;
  RecordStream stream(x, enc);
  result.peak_buffered_bits = stream.buffered_bits();
  const std::uint64_t records = stream.records();
  for (std::uint64_t i = 0; i < records; ++i) {
    const Clause c = decode_record(stream.next(), enc, max_var, i);
    ++result.records;
    if (c.empty()) continue;
    bool ok = false;
    for (const CnfLiteral& lit : c) ok = ok || (witness_value(W, lit.var) != lit.negated);
    if (!ok) {
      result.satisfied = false;
      result.violated_clause = i;
      return result;
    }
  }
  return result;
}

bool check_witness(const Circuit& x, const Circuit& W, const ClauseEncoding& enc, std::optional<std::uint64_t> V) {
  return check_witness_detailed(x, W, enc, V).satisfied;
}

Circuit build_clause_check_circuit(const Circuit& x, const Circuit& W, const ClauseEncoding& enc) {
  if (x.n_inputs() < enc.record_bits)
    throw Error(ErrorKind::InputArity, "formula circuit has fewer inputs than a record address");
  const std::size_t c = x.n_inputs() - enc.record_bits;
  const std::size_t L = enc.L, w = enc.w;
  CircuitBuilder b(c, "D");

  std::vector<GateId> x_inputs(x.n_inputs());
  for (std::size_t i = 0; i < c; ++i) x_inputs[i] = b.input(i);
  // Evaluates x at record offset (field, bit) of clause i.
  auto x_copy = [&](std::size_t field, std::size_t bit) {
    const std::size_t offset = field * L + bit;
    for (std::size_t p = 0; p < enc.record_bits; ++p)
      x_inputs[c + p] = b.const_gate(((offset >> (enc.record_bits - 1 - p)) & 1U) != 0);
    return b.append(x, x_inputs);
  };

  std::vector<GateId> satisfied, absent;
  for (std::size_t f = 0; f < 3; ++f) {
    const GateId sign = x_copy(f, L - w - 1);
    std::vector<GateId> index(w);  // index[t] = bit t counted from the least significant end
    for (std::size_t t = 0; t < w; ++t) index[t] = x_copy(f, L - 1 - t);
    const GateId present = b.add_or(std::vector<GateId>(index.rbegin(), index.rend()));

    // index - 1: bit t flips when every lower bit is zero.
    std::vector<GateId> minus1(w);
    GateId lower_zero = 0;
    for (std::size_t t = 0; t < w; ++t) {
      const GateId nbit = b.add_not(index[t]);
      minus1[t] = t == 0 ? nbit : b.add_xor(index[t], lower_zero);
      lower_zero = t == 0 ? nbit : b.add_and({lower_zero, nbit});
    }

    const std::size_t m = W.n_inputs();
    std::vector<GateId> w_inputs(m);
    for (std::size_t p = 0; p < m; ++p) {
      const std::size_t t = m - 1 - p;
      w_inputs[p] = t < w ? minus1[t] : b.const_gate(false);
    }
    GateId value = b.append(W, w_inputs);
    if (m < w) {
      // Positions past the end of T(W) read as 0.
      std::vector<GateId> in_range{value};
      for (std::size_t t = m; t < w; ++t) in_range.push_back(b.add_not(minus1[t]));
      value = b.add_and(std::move(in_range));
    }
    const GateId literal = b.add_xor(value, sign);
    satisfied.push_back(b.add_and({present, literal}));
    absent.push_back(b.add_not(present));
  }
  satisfied.push_back(b.add_and(absent));
  const GateId out = b.add_or(std::move(satisfied));
  return std::move(b).build(out);
}

bool succinct_brute(const Circuit& x, const ClauseEncoding& enc, std::optional<std::uint64_t> V) {
  return solve_cnf(decode_formula(x, enc, V)).has_value();
}

namespace {

Clause random_clause(std::uint64_t V, Rng& rng, std::size_t width) {
  Clause c;
  while (c.size() < width) {
    const std::uint64_t v = rng.below(V) + 1;
    bool dup = false;
    for (const CnfLiteral& l : c) dup |= l.var == v;
    if (dup && V >= width) continue;
    c.push_back(CnfLiteral{v, rng.coin()});
  }
  return c;
}

}  // namespace

std::pair<Formula3CNF, Bits> planted_formula(std::uint64_t V, std::size_t clauses, Rng& rng) {
  if (V == 0) throw Error(ErrorKind::InvalidArgument, "need at least one variable");
  Bits plant = rng.bits(V);
  Formula3CNF f{V, {}};
  while (f.clauses.size() < clauses) {
    Clause c = random_clause(V, rng, std::min<std::uint64_t>(3, V));
    if (clause_satisfied(c, plant)) f.clauses.push_back(std::move(c));
  }
  return {f, plant};
}

Formula3CNF random_formula(std::uint64_t V, std::size_t clauses, Rng& rng) {
  if (V == 0) throw Error(ErrorKind::InvalidArgument, "need at least one variable");
  Formula3CNF f{V, {}};
  for (std::size_t i = 0; i < clauses; ++i)
    f.clauses.push_back(random_clause(V, rng, static_cast<std::size_t>(rng.range(1, 3))));
  return f;
}

}  // namespace accwb
