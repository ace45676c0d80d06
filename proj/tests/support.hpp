#pragma once

#include <cstdint>
#include <vector>

#include "accwb/circuit.hpp"
#include "accwb/generators.hpp"
#include "accwb/multilinear.hpp"

namespace testsupport {

using namespace accwb;

/// Gate-by-gate evaluation written straight from the gate definitions;
/// entry j is gate j, entry 0 unused.
inline std::vector<int> naive_trace(const Circuit& c, const Bits& x) {
  std::vector<int> v(c.size() + 1, 0);
  for (const Gate& g : c.gates()) {
    int sum = 0;
    for (GateId f : g.fanin) sum += v[f];
    const int k = static_cast<int>(g.fanin.size());
    switch (g.kind) {
      case GateKind::Input: v[g.id] = x[g.param]; break;
      case GateKind::Const: v[g.id] = static_cast<int>(g.param); break;
      case GateKind::Not: v[g.id] = 1 - sum; break;
      case GateKind::And: v[g.id] = sum == k; break;
      case GateKind::Or: v[g.id] = sum > 0; break;
      case GateKind::Mod: v[g.id] = sum % static_cast<int>(g.param) == 0; break;
    }
  }
  return v;
}

inline bool naive_eval(const Circuit& c, const Bits& x) { return naive_trace(c, x)[c.output()] != 0; }

inline Bits point(std::uint64_t index, std::size_t n) {
  Bits x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = (index >> (n - 1 - i)) & 1U;
  return x;
}

inline std::vector<int> naive_table(const Circuit& c) {
  const std::size_t n = c.n_inputs();
  std::vector<int> t(std::size_t{1} << n);
  for (std::uint64_t i = 0; i < t.size(); ++i) t[i] = naive_eval(c, point(i, n));
  return t;
}

inline std::vector<int> table_bits(const TruthTable& t) {
  std::vector<int> out(t.size());
  for (std::uint64_t i = 0; i < t.size(); ++i) out[i] = t.get(i);
  return out;
}

/// Term-by-term product evaluation of a polynomial.
inline BigInt naive_poly_eval(const MultilinearPoly& p, const Bits& x) {
  BigInt total = 0;
  for (const Term& t : p.terms()) {
    BigInt term = t.coeff;
    for (std::size_t i = 0; i < p.n_vars(); ++i)
      if ((t.mask >> i) & 1U) term *= x[i];
    total += term;
  }
  return total;
}

inline MultilinearPoly random_poly(std::size_t n, std::size_t terms, Rng& rng, std::int64_t coeff = 20) {
  std::vector<Term> out;
  for (std::size_t k = 0; k < terms; ++k) {
    Monomial mask = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (rng.chance(0.3)) mask |= Monomial{1} << i;
    out.push_back(Term{mask, BigInt(rng.range(-coeff, coeff))});
  }
  return MultilinearPoly::from_terms(n, std::move(out));
}

}  // namespace testsupport
