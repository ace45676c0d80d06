#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "accwb/truth_table.hpp"

namespace accwb {

using BigInt = boost::multiprecision::cpp_int;

/// Variable subset; bit i stands for x_{i+1}.
using Monomial = std::uint64_t;

struct Term {
  Monomial mask = 0;
  BigInt coeff;

  bool operator==(const Term&) const = default;
};

/// Sparse multilinear polynomial with exact integer coefficients. Terms are
/// kept sorted by mask with no zero coefficients, so equal polynomials compare
/// equal structurally.
class MultilinearPoly {
 public:
  static constexpr std::size_t kMaxVars = 64;

  explicit MultilinearPoly(std::size_t n_vars = 0);

  /// Merges duplicate masks and drops zeros.
  static MultilinearPoly from_terms(std::size_t n_vars, std::vector<Term> terms);
  static MultilinearPoly constant(std::size_t n_vars, const BigInt& value);
  static MultilinearPoly variable(std::size_t n_vars, std::size_t var);

  std::size_t n_vars() const noexcept { return n_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::span<const Term> terms() const noexcept { return terms_; }
  BigInt coefficient(Monomial mask) const;

  /// Sums of the negative and of the positive coefficients: bounds on every
  /// value the polynomial takes on the cube.
  std::pair<BigInt, BigInt> value_bounds() const;
  /// Sum of absolute coefficient values.
  BigInt l1_norm() const;

  MultilinearPoly operator+(const MultilinearPoly& other) const;
  MultilinearPoly operator-(const MultilinearPoly& other) const;
  MultilinearPoly operator*(const BigInt& scalar) const;
  /// Product reduced with x_i^2 = x_i.
  MultilinearPoly operator*(const MultilinearPoly& other) const;

  bool operator==(const MultilinearPoly&) const = default;

 private:
  std::size_t n_;
  std::vector<Term> terms_;
};

/// Collects terms, possibly with repeated masks, and merges them at the end.
class PolyBuilder {
 public:
  explicit PolyBuilder(std::size_t n_vars) : n_(n_vars) {}

  void add(Monomial mask, BigInt coeff);
  void add(const MultilinearPoly& p, const BigInt& scale = 1);

  std::uint64_t pending() const noexcept { return terms_.size(); }
  /// Terms added so far, before merging.
  std::uint64_t added() const noexcept { return added_; }

  MultilinearPoly build();

 private:
  std::size_t n_;
  std::vector<Term> terms_;
  std::uint64_t added_ = 0;
};

BigInt eval_point(const MultilinearPoly& p, std::span<const std::uint8_t> point);

/// p = x_var * q1 + q2, with q1 and q2 free of x_var.
std::pair<MultilinearPoly, MultilinearPoly> split(const MultilinearPoly& p, std::size_t var);

inline constexpr std::size_t kDefaultPointCap = 26;

/// Values on all 2^n points, index order as in TruthTable. The narrowest
/// integer type whose range covers the coefficient l1 norm is used; since
/// every intermediate value is a sum over a subset of the coefficients, no
/// step can overflow it.
class PointValues {
 public:
  enum class Width { I32, I64, Big };

  Width width() const noexcept { return width_; }
  std::uint64_t size() const noexcept;
  BigInt at(std::uint64_t index) const;

  std::span<const std::int32_t> i32() const noexcept { return i32_; }
  std::span<const std::int64_t> i64() const noexcept { return i64_; }
  std::span<const BigInt> big() const noexcept { return big_; }

 private:
  friend PointValues coefficient_to_point(const MultilinearPoly&, std::size_t, std::uint64_t*);
  Width width_ = Width::I32;
  std::vector<std::int32_t> i32_;
  std::vector<std::int64_t> i64_;
  std::vector<BigInt> big_;
};

/// Split on x1, recurse on both halves, merge as [T2 ; T1 + T2]. `ops`, when
/// given, is increased by the number of additions performed.
PointValues coefficient_to_point(const MultilinearPoly& p, std::size_t cap = kDefaultPointCap,
                                 std::uint64_t* ops = nullptr);

/// Predicate on an integer interval [lo, hi].
class SymFunction {
 public:
  SymFunction(std::int64_t lo, std::int64_t hi, std::vector<std::uint8_t> table);

  /// Builds the table by applying `pred` to every value in [lo, hi].
  template <class Pred>
  static SymFunction from_predicate(std::int64_t lo, std::int64_t hi, Pred pred) {
    std::vector<std::uint8_t> table;
    table.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (std::int64_t v = lo; v <= hi; ++v) table.push_back(pred(v) ? 1 : 0);
    return SymFunction(lo, hi, std::move(table));
  }

  std::int64_t lo() const noexcept { return lo_; }
  std::int64_t hi() const noexcept { return hi_; }
  std::span<const std::uint8_t> table() const noexcept { return table_; }
  bool contains(std::int64_t v) const noexcept { return v >= lo_ && v <= hi_; }
  /// Throws Range outside [lo, hi].
  bool operator()(std::int64_t v) const;

  bool operator==(const SymFunction&) const = default;

 private:
  std::int64_t lo_;
  std::int64_t hi_;
  std::vector<std::uint8_t> table_;
};

/// Table of g(h(x)) over the cube, from one coefficient_to_point pass.
TruthTable compose_eval_all(const SymFunction& g, const MultilinearPoly& h, std::size_t cap = kDefaultPointCap,
                            std::uint64_t* ops = nullptr);

/// g(h(point)) without materializing anything.
bool compose_eval_point(const SymFunction& g, const MultilinearPoly& h, std::span<const std::uint8_t> point);

/// Text form: a "poly n=<n>" header, then one "<coeff> <mask-hex>" line per term.
std::string poly_to_text(const MultilinearPoly& p);
MultilinearPoly poly_from_text(std::string_view text);

std::string sym_to_text(const SymFunction& g);

}  // namespace accwb
