#include "accwb/multilinear.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <sstream>

#include "accwb/circuit.hpp"
#include "accwb/error.hpp"

namespace accwb {

namespace {

void sort_and_merge(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.mask < b.mask; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i + 1;
    BigInt sum = std::move(terms[i].coeff);
    while (j < terms.size() && terms[j].mask == terms[i].mask) sum += terms[j++].coeff;
    if (sum != 0) {
      terms[out].mask = terms[i].mask;
      terms[out].coeff = std::move(sum);
      ++out;
    }
    i = j;
  }
  terms.resize(out);
}

void check_mask(std::size_t n, Monomial mask) {
  if (n < 64 && (mask >> n) != 0)
    throw Error(ErrorKind::InvalidArgument, "monomial mentions a variable beyond n_vars");
}

}  // namespace

MultilinearPoly::MultilinearPoly(std::size_t n_vars) : n_(n_vars) {
  if (n_vars > kMaxVars) throw Error(ErrorKind::InvalidArgument, "at most 64 variables are supported");
}

MultilinearPoly MultilinearPoly::from_terms(std::size_t n_vars, std::vector<Term> terms) {
  MultilinearPoly p(n_vars);
  for (const Term& t : terms) check_mask(n_vars, t.mask);
  sort_and_merge(terms);
  p.terms_ = std::move(terms);
  return p;
}

MultilinearPoly MultilinearPoly::constant(std::size_t n_vars, const BigInt& value) {
  MultilinearPoly p(n_vars);
  if (value != 0) p.terms_.push_back(Term{0, value});
  return p;
}

MultilinearPoly MultilinearPoly::variable(std::size_t n_vars, std::size_t var) {
  if (var >= n_vars) throw Error(ErrorKind::InvalidArgument, "variable index out of range");
  MultilinearPoly p(n_vars);
  p.terms_.push_back(Term{Monomial{1} << var, 1});
  return p;
}

BigInt MultilinearPoly::coefficient(Monomial mask) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), mask,
                             [](const Term& t, Monomial m) { return t.mask < m; });
  return it != terms_.end() && it->mask == mask ? it->coeff : BigInt(0);
}

std::pair<BigInt, BigInt> MultilinearPoly::value_bounds() const {
  BigInt lo = 0, hi = 0;
  for (const Term& t : terms_) (t.coeff < 0 ? lo : hi) += t.coeff;
  return {lo, hi};
}

BigInt MultilinearPoly::l1_norm() const {
  BigInt total = 0;
  for (const Term& t : terms_) total += abs(t.coeff);
  return total;
}

MultilinearPoly MultilinearPoly::operator+(const MultilinearPoly& other) const {
  if (other.n_ != n_) throw Error(ErrorKind::InputArity, "polynomials over different variable counts");
  std::vector<Term> terms(terms_);
  terms.insert(terms.end(), other.terms_.begin(), other.terms_.end());
  return from_terms(n_, std::move(terms));
}

MultilinearPoly MultilinearPoly::operator-(const MultilinearPoly& other) const { return *this + other * BigInt(-1); }

MultilinearPoly MultilinearPoly::operator*(const BigInt& scalar) const {
  MultilinearPoly p(n_);
  if (scalar == 0) return p;
  p.terms_ = terms_;
  for (Term& t : p.terms_) t.coeff *= scalar;
  return p;
}

MultilinearPoly MultilinearPoly::operator*(const MultilinearPoly& other) const {
  if (other.n_ != n_) throw Error(ErrorKind::InputArity, "polynomials over different variable counts");
  std::vector<Term> terms;
  terms.reserve(terms_.size() * other.terms_.size());
  for (const Term& a : terms_)
    for (const Term& b : other.terms_) terms.push_back(Term{a.mask | b.mask, a.coeff * b.coeff});
  return from_terms(n_, std::move(terms));
}

void PolyBuilder::add(Monomial mask, BigInt coeff) {
  check_mask(n_, mask);
  ++added_;
  if (coeff != 0) terms_.push_back(Term{mask, std::move(coeff)});
}

void PolyBuilder::add(const MultilinearPoly& p, const BigInt& scale) {
  if (p.n_vars() != n_) throw Error(ErrorKind::InputArity, "polynomials over different variable counts");
  for (const Term& t : p.terms()) add(t.mask, t.coeff * scale);
}

MultilinearPoly PolyBuilder::build() {
  MultilinearPoly p = MultilinearPoly::from_terms(n_, std::move(terms_));
  terms_.clear();
  return p;
}

BigInt eval_point(const MultilinearPoly& p, std::span<const std::uint8_t> point) {
  if (point.size() != p.n_vars())
    throw Error(ErrorKind::InputArity, "point has " + std::to_string(point.size()) + " coordinates, polynomial has " +
                                           std::to_string(p.n_vars()) + " variables");
  Monomial ones = 0;
  for (std::size_t i = 0; i < point.size(); ++i)
    if (point[i]) ones |= Monomial{1} << i;
  BigInt sum = 0;
  for (const Term& t : p.terms())
    if ((t.mask & ~ones) == 0) sum += t.coeff;
  return sum;
}

std::pair<MultilinearPoly, MultilinearPoly> split(const MultilinearPoly& p, std::size_t var) {
  if (var >= p.n_vars()) throw Error(ErrorKind::InvalidArgument, "split variable out of range");
  const Monomial bit = Monomial{1} << var;
  std::vector<Term> with, without;
  for (const Term& t : p.terms()) {
    if (t.mask & bit)
      with.push_back(Term{t.mask & ~bit, t.coeff});
    else
      without.push_back(t);
  }
  return {MultilinearPoly::from_terms(p.n_vars(), std::move(with)),
          MultilinearPoly::from_terms(p.n_vars(), std::move(without))};
}

// ---------------------------------------------------------------------------
// Coefficient to point

namespace {

template <class T>
struct KeyedTerm {
  std::uint64_t key;  // table index of the monomial's indicator point
  T coeff;
};

template <class T>
void c2p_rec(const KeyedTerm<T>* first, const KeyedTerm<T>* last, std::size_t var, std::size_t n, T* out,
             std::uint64_t& ops) {
  if (first == last) return;
  if (var == n) {
    out[0] = first->coeff;
    ++ops;
    return;
  }
  const std::uint64_t bit = std::uint64_t{1} << (n - 1 - var);
  const KeyedTerm<T>* mid = std::partition_point(first, last, [bit](const KeyedTerm<T>& t) { return (t.key & bit) == 0; });
  const std::uint64_t half = bit;
  c2p_rec(first, mid, var + 1, n, out, ops);
  c2p_rec(mid, last, var + 1, n, out + half, ops);
  if (first != mid) {
    for (std::uint64_t i = 0; i < half; ++i) out[half + i] += out[i];
    ops += half;
  }
}

template <class T>
std::vector<T> c2p(const MultilinearPoly& p, std::uint64_t& ops) {
  const std::size_t n = p.n_vars();
  std::vector<KeyedTerm<T>> keyed;
  keyed.reserve(p.size());
  for (const Term& t : p.terms()) {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < n; ++i)
      if ((t.mask >> i) & 1U) key |= std::uint64_t{1} << (n - 1 - i);
    keyed.push_back(KeyedTerm<T>{key, static_cast<T>(t.coeff)});
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.key < b.key; });
  std::vector<T> out(static_cast<std::size_t>(std::uint64_t{1} << n), T(0));
  c2p_rec(keyed.data(), keyed.data() + keyed.size(), 0, n, out.data(), ops);
  return out;
}

}  // namespace

std::uint64_t PointValues::size() const noexcept {
  switch (width_) {
    case Width::I32: return i32_.size();
    case Width::I64: return i64_.size();
    case Width::Big: return big_.size();
  }
  return 0;
}

BigInt PointValues::at(std::uint64_t index) const {
  switch (width_) {
    case Width::I32: return BigInt(i32_.at(index));
    case Width::I64: return BigInt(i64_.at(index));
    case Width::Big: return big_.at(index);
  }
  return 0;
}

PointValues coefficient_to_point(const MultilinearPoly& p, std::size_t cap, std::uint64_t* ops) {
  if (p.n_vars() > cap)
    throw Error(ErrorKind::ResourceLimit, "polynomial has " + std::to_string(p.n_vars()) +
                                              " variables, point evaluation cap is " + std::to_string(cap));
  std::uint64_t count = 0;
  PointValues result;
  const BigInt l1 = p.l1_norm();
  if (l1 <= std::numeric_limits<std::int32_t>::max()) {
    result.width_ = PointValues::Width::I32;
    result.i32_ = c2p<std::int32_t>(p, count);
  } else if (l1 <= std::numeric_limits<std::int64_t>::max()) {
    result.width_ = PointValues::Width::I64;
    result.i64_ = c2p<std::int64_t>(p, count);
  } else {
    result.width_ = PointValues::Width::Big;
    result.big_ = c2p<BigInt>(p, count);
  }
  if (ops) *ops += count;
  return result;
}

// ---------------------------------------------------------------------------
// Symmetric lookup

SymFunction::SymFunction(std::int64_t lo, std::int64_t hi, std::vector<std::uint8_t> table)
    : lo_(lo), hi_(hi), table_(std::move(table)) {
  if (hi < lo) throw Error(ErrorKind::InvalidArgument, "symmetric function interval is empty");
  if (static_cast<std::uint64_t>(hi - lo) + 1 != table_.size())
    throw Error(ErrorKind::InvalidArgument, "symmetric function table length does not match its interval");
}

bool SymFunction::operator()(std::int64_t v) const {
  if (!contains(v))
    throw Error(ErrorKind::Range, "value " + std::to_string(v) + " outside [" + std::to_string(lo_) + ", " +
                                      std::to_string(hi_) + "]");
  return table_[static_cast<std::size_t>(v - lo_)] != 0;
}

namespace {

template <class T>
void lookup_all(const SymFunction& g, std::span<const T> values, std::size_t n, TruthTable& out) {
  auto words = out.words();
  const std::int64_t lo = g.lo(), hi = g.hi();
  const auto table = g.table();
  for (std::uint64_t i = 0; i < values.size(); ++i) {
    const T v = values[i];
    if (v < lo || v > hi) {
      throw Error(ErrorKind::Range, "h(" + bits_to_string(index_to_assignment(i, n)) + ") = " +
                                        BigInt(v).str() + " lies outside [" + std::to_string(lo) + ", " +
                                        std::to_string(hi) + "]");
    }
    if (table[static_cast<std::size_t>(static_cast<std::int64_t>(v) - lo)])
      words[i >> 6] |= std::uint64_t{1} << (i & 63);
  }
}

}  // namespace

TruthTable compose_eval_all(const SymFunction& g, const MultilinearPoly& h, std::size_t cap, std::uint64_t* ops) {
  const PointValues values = coefficient_to_point(h, cap, ops);
  TruthTable out(h.n_vars());
  switch (values.width()) {
    case PointValues::Width::I32: lookup_all(g, values.i32(), h.n_vars(), out); break;
    case PointValues::Width::I64: lookup_all(g, values.i64(), h.n_vars(), out); break;
    case PointValues::Width::Big: lookup_all(g, values.big(), h.n_vars(), out); break;
  }
  return out;
}

bool compose_eval_point(const SymFunction& g, const MultilinearPoly& h, std::span<const std::uint8_t> point) {
  const BigInt v = eval_point(h, point);
  if (v < g.lo() || v > g.hi())
    throw Error(ErrorKind::Range, "h(" + bits_to_string(point) + ") = " + v.str() + " lies outside [" +
                                      std::to_string(g.lo()) + ", " + std::to_string(g.hi()) + "]");
  return g(static_cast<std::int64_t>(v));
}

// ---------------------------------------------------------------------------
// Text

std::string poly_to_text(const MultilinearPoly& p) {
  std::ostringstream out;
  out << "poly n=" << p.n_vars() << '\n';
  for (const Term& t : p.terms()) out << t.coeff << ' ' << std::hex << t.mask << std::dec << '\n';
  return out.str();
}

MultilinearPoly poly_from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line.rfind("poly n=", 0) != 0)
    throw ParseError(ErrorKind::Syntax, 1, 1, "expected 'poly n=<n>' header");
  std::size_t n = 0;
  {
    const char* first = line.data() + 7;
    const char* last = line.data() + line.size();
    auto [ptr, ec] = std::from_chars(first, last, n);
    if (ec != std::errc() || ptr != last || n > MultilinearPoly::kMaxVars)
      throw ParseError(ErrorKind::Syntax, 1, 8, "bad variable count");
  }
  std::vector<Term> terms;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const std::size_t space = line.find(' ');
    if (space == std::string::npos) throw ParseError(ErrorKind::Syntax, line_no, 1, "expected '<coeff> <mask>'");
    Term t;
    try {
      t.coeff = BigInt(line.substr(0, space));
    } catch (const std::exception&) {
      throw ParseError(ErrorKind::Syntax, line_no, 1, "bad coefficient");
    }
    const char* first = line.data() + space + 1;
    const char* last = line.data() + line.size();
    auto [ptr, ec] = std::from_chars(first, last, t.mask, 16);
    if (ec != std::errc() || ptr != last) throw ParseError(ErrorKind::Syntax, line_no, space + 2, "bad mask");
    if (n < 64 && (t.mask >> n) != 0)
      throw ParseError(ErrorKind::Semantic, line_no, space + 2, "mask mentions a variable beyond n");
    terms.push_back(std::move(t));
  }
  return MultilinearPoly::from_terms(n, std::move(terms));
}

std::string sym_to_text(const SymFunction& g) {
  std::string out = "sym lo=" + std::to_string(g.lo()) + " hi=" + std::to_string(g.hi()) + " table=";
  for (auto b : g.table()) out.push_back(b ? '1' : '0');
  out.push_back('\n');
  return out;
}

}  // namespace accwb
