#include "accwb/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "accwb/oracle.hpp"

namespace accwb {

MultilinearPoly and_to_monomials(std::size_t n_vars, const std::vector<Literal>& literals) {
  Monomial positive = 0, seen = 0;
  std::vector<std::size_t> negative;
  for (const Literal& lit : literals) {
    if (lit.var >= n_vars) throw Error(ErrorKind::InvalidArgument, "literal variable out of range");
    const Monomial bit = Monomial{1} << lit.var;
    if (seen & bit) throw Error(ErrorKind::InvalidArgument, "duplicate variable x" + std::to_string(lit.var + 1));
    seen |= bit;
    if (lit.positive)
      positive |= bit;
    else
      negative.push_back(lit.var);
  }
  std::vector<Term> terms{Term{positive, 1}};
  for (std::size_t var : negative) {
    const std::size_t count = terms.size();
    for (std::size_t t = 0; t < count; ++t) terms.push_back(Term{terms[t].mask | (Monomial{1} << var), -terms[t].coeff});
  }
  return MultilinearPoly::from_terms(n_vars, std::move(terms));
}

double estimate_f(std::size_t depth, std::uint32_t modulus) {
  const std::size_t d = std::max<std::size_t>(depth, 1);
  const std::uint32_t m = std::max<std::uint32_t>(modulus, 2);
  const double lg = std::floor(std::log2(static_cast<double>(m)));
  return std::max(1.0, static_cast<double>(d - 1) * lg);
}

std::string trace_to_text(const std::vector<StageRecord>& trace) {
  std::string out;
  for (const StageRecord& r : trace)
    out += "stage=" + r.name + " gates=" + std::to_string(r.gates) + " monomials=" + std::to_string(r.monomials) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// SYM of ANDs

namespace {

std::optional<Literal> as_literal(const Circuit& c, GateId id) {
  const Gate& g = c.gate(id);
  if (g.kind == GateKind::Input) return Literal{g.param, true};
  if (g.kind == GateKind::Not) {
    const Gate& in = c.gate(g.fanin[0]);
    if (in.kind == GateKind::Input) return Literal{in.param, false};
  }
  return std::nullopt;
}

std::optional<SymAndChild> as_child(const Circuit& c, GateId id) {
  const Gate& g = c.gate(id);
  SymAndChild child;
  if (g.kind == GateKind::Const) {
    child.is_const = true;
    child.value = g.param != 0;
    return child;
  }
  if (auto lit = as_literal(c, id)) {
    child.literals.push_back(*lit);
    return child;
  }
  if (g.kind != GateKind::And) return std::nullopt;
  for (GateId f : g.fanin) {
    const Gate& in = c.gate(f);
    if (in.kind == GateKind::Const) {
      if (in.param == 0) {
        child.is_const = true;
        child.value = false;
      }
      continue;
    }
    auto lit = as_literal(c, f);
    if (!lit) return std::nullopt;
    child.literals.push_back(*lit);
  }
  if (child.is_const) child.literals.clear();
  return child;
}

/// Polynomial of one child: duplicate literals collapse, x AND NOT x is zero.
MultilinearPoly child_poly(std::size_t n, const SymAndChild& child) {
  if (child.is_const) return MultilinearPoly::constant(n, child.value ? 1 : 0);
  std::map<std::size_t, bool> polarity;
  for (const Literal& lit : child.literals) {
    auto [it, inserted] = polarity.emplace(lit.var, lit.positive);
    if (!inserted && it->second != lit.positive) return MultilinearPoly(n);
  }
  std::vector<Literal> distinct;
  for (auto [var, pos] : polarity) distinct.push_back(Literal{var, pos});
  return and_to_monomials(n, distinct);
}

bool gate_on_count(GateKind kind, std::uint32_t modulus, std::int64_t count, std::int64_t total) {
  switch (kind) {
    case GateKind::And: return count == total;
    case GateKind::Or: return count >= 1;
    case GateKind::Mod: return count % static_cast<std::int64_t>(modulus) == 0;
    default: break;
  }
  throw Error(ErrorKind::Internal, "gate kind has no symmetric predicate");
}

double log2_target(const Circuit& c, double f) {
  const double s = std::max<double>(2.0, static_cast<double>(c.size()));
  return std::pow(std::log2(s), f);
}

double planning_f(const Circuit& c, const DecompositionParams& params) {
  if (params.f_estimate > 0) return params.f_estimate;
  const CircuitStats st = stats(c);
  return estimate_f(std::max<std::size_t>(st.acc_depth, 1), st.max_modulus());
}

[[noreturn]] void budget_exceeded(const std::string& what, std::uint64_t attained, std::uint64_t budget,
                                  const std::vector<StageRecord>& trace) {
  throw DecompositionError(ErrorKind::ResourceLimit,
                           what + ": attained " + std::to_string(attained) + ", budget " + std::to_string(budget),
                           trace, attained);
}

void verify_or_throw(const Circuit& circuit, const Decomposition& d, const DecompositionParams& params) {
  if (!params.verify) return;
  if (auto bad = check_decomposition(circuit, d, params.verify_points, params.verify_seed))
    throw DecompositionError(ErrorKind::Internal, "decomposition disagrees with the circuit at " + bits_to_string(*bad),
                             d.trace, d.K);
}

Decomposition sym_and_from_form(const Circuit& circuit, const SymAndForm& form, const DecompositionParams& params,
                                std::vector<StageRecord> trace) {
  const std::size_t n = circuit.n_inputs();
  PolyBuilder builder(n);
  for (const SymAndChild& child : form.children) {
    if (!child.is_const) {
      std::size_t negatives = 0;
      for (const Literal& lit : child.literals) negatives += lit.positive ? 0 : 1;
      if (negatives >= 63 || builder.pending() + (std::uint64_t{1} << negatives) > 4 * params.k_budget)
        budget_exceeded("monomial budget exceeded while expanding children", builder.pending(), params.k_budget, trace);
    }
    builder.add(child_poly(n, child));
  }
  Decomposition d;
  d.pre_merge_terms = builder.added();
  d.h = builder.build();
  d.K = d.h.size();
  if (d.K > params.k_budget) budget_exceeded("monomial budget exceeded", d.K, params.k_budget, trace);

  const auto total = static_cast<std::int64_t>(form.children.size());
  const auto [blo, bhi] = d.h.value_bounds();
  const std::int64_t lo = std::max<std::int64_t>(0, blo > 0 ? static_cast<std::int64_t>(blo) : 0);
  const std::int64_t hi = bhi < total ? static_cast<std::int64_t>(bhi) : total;
  d.g = SymFunction::from_predicate(lo, std::max(lo, hi), [&](std::int64_t v) {
    return gate_on_count(form.top, form.modulus, v, total) != form.negated;
  });
  d.method = "sym-and";
  d.table_entries = d.g.table().size();
  trace.push_back(StageRecord{"sym-collapse", circuit.size(), d.K});
  d.trace = std::move(trace);
  d.f_estimate = planning_f(circuit, params);
  d.log2_k_target = log2_target(circuit, d.f_estimate);
  return d;
}

}  // namespace

std::optional<SymAndForm> match_sym_and(const Circuit& circuit) {
  SymAndForm form;
  GateId top = circuit.output();
  if (circuit.gate(top).kind == GateKind::Not) {
    form.negated = true;
    top = circuit.gate(top).fanin[0];
  }
  const Gate& g = circuit.gate(top);
  if (g.kind != GateKind::And && g.kind != GateKind::Or && g.kind != GateKind::Mod) return std::nullopt;
  form.top = g.kind;
  form.modulus = g.kind == GateKind::Mod ? g.param : 0;
  for (GateId f : g.fanin) {
    auto child = as_child(circuit, f);
    if (!child) return std::nullopt;
    form.children.push_back(std::move(*child));
  }
  return form;
}

Decomposition decompose_sym_and(const Circuit& circuit, const DecompositionParams& params) {
  if (params.k_budget < 1) throw Error(ErrorKind::InvalidArgument, "K budget must be at least 1");
  auto form = match_sym_and(circuit);
  if (!form)
    throw Error(ErrorKind::NotSymAnd, "circuit '" + circuit.name() +
                                          "' is not a symmetric gate over ANDs of literals");
  Decomposition d = sym_and_from_form(circuit, *form, params, {StageRecord{"input", circuit.size(), 0}});
  verify_or_throw(circuit, d, params);
  return d;
}

// ---------------------------------------------------------------------------
// General depth reduction
//
// Every gate gets one of two representations:
//   exact:  a 0/1-valued polynomial of the gate;
//   packed: a polynomial h with values in [0, range) and a table such that
//           the gate equals table[h(x)].
// A gate over several children packs their information into mixed-radix
// digits of a single polynomial: one digit counts the exact children that are
// on, and each packed child contributes its own h as a further digit. The
// table decodes the digits, applies each child's table, and applies the gate.

namespace {

struct Rep {
  bool exact = true;
  MultilinearPoly p;                  // exact form, or h when packed
  std::uint64_t range = 0;            // packed: h in [0, range)
  std::vector<std::uint8_t> table;    // packed: gate = table[h]
  std::uint64_t added = 0;            // terms summed into p before merging
};

class DepthReducer {
 public:
  DepthReducer(const Circuit& c, const DecompositionParams& params, const std::vector<StageRecord>& trace)
      : c_(c), params_(params), trace_(trace), memo_(c.size() + 1) {}

  const Rep& rep(GateId id) {
    if (!memo_[id]) memo_[id] = build(id);
    return *memo_[id];
  }

  std::uint64_t table_entries() const { return table_entries_; }

 private:
  void check_size(const MultilinearPoly& p) {
    if (p.size() > params_.k_budget) budget_exceeded("monomial budget exceeded", p.size(), params_.k_budget, trace_);
  }

  Rep build(GateId id) {
    const Gate& g = c_.gate(id);
    const std::size_t n = c_.n_inputs();
    switch (g.kind) {
      case GateKind::Input: return Rep{true, MultilinearPoly::variable(n, g.param), 0, {}};
      case GateKind::Const: return Rep{true, MultilinearPoly::constant(n, g.param), 0, {}};
      case GateKind::Not: {
        Rep r = rep(g.fanin[0]);
        if (r.exact) {
          r.p = MultilinearPoly::constant(n, 1) - r.p;
        } else {
          for (auto& bit : r.table) bit ^= 1U;
        }
        return r;
      }
      default: return combine(g);
    }
  }

  static std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
    return a * b;
  }

  std::optional<MultilinearPoly> expand_exact(const Gate& g, const std::vector<std::pair<GateId, std::uint64_t>>& kids) {
    const std::size_t n = c_.n_inputs();
    const std::uint64_t cap = params_.exact_expand_cap;
    if (g.kind == GateKind::And || g.kind == GateKind::Or) {
      // AND and OR are idempotent, so multiplicities do not matter.
      const bool is_and = g.kind == GateKind::And;
      std::uint64_t estimate = 1;
      for (auto [id, mult] : kids) {
        const MultilinearPoly& p = rep(id).p;
        estimate = sat_mul(estimate, is_and ? p.size() : p.size() + 1);
      }
      if (estimate > cap) return std::nullopt;
      const MultilinearPoly one = MultilinearPoly::constant(n, 1);
      MultilinearPoly acc = one;
      for (auto [id, mult] : kids) acc = acc * (is_and ? rep(id).p : one - rep(id).p);
      return is_and ? acc : one - acc;
    }
    // MOD: residue polynomials R[r] = [sum of processed children = r mod m].
    const std::uint32_t m = g.param;
    std::vector<MultilinearPoly> residue(m, MultilinearPoly(n));
    residue[0] = MultilinearPoly::constant(n, 1);
    const MultilinearPoly one = MultilinearPoly::constant(n, 1);
    for (auto [id, mult] : kids) {
      const MultilinearPoly& p = rep(id).p;
      const MultilinearPoly q = one - p;
      for (std::uint64_t t = 0; t < mult; ++t) {
        std::vector<MultilinearPoly> next(m, MultilinearPoly(n));
        std::uint64_t total = 0;
        for (std::uint32_t r = 0; r < m; ++r) {
          if (sat_mul(residue[r].size() + residue[(r + m - 1) % m].size(), p.size() + 1) > 4 * cap) return std::nullopt;
          next[r] = residue[r] * q + residue[(r + m - 1) % m] * p;
          total += next[r].size();
        }
        if (total > cap) return std::nullopt;
        residue = std::move(next);
      }
    }
    return residue[0];
  }

  Rep combine(const Gate& g) {
    const std::size_t n = c_.n_inputs();
    std::map<GateId, std::uint64_t> mult;
    for (GateId f : g.fanin) ++mult[f];
    std::vector<std::pair<GateId, std::uint64_t>> exact, packed;
    std::uint64_t total = 0;
    for (auto [id, k] : mult) {
      (rep(id).exact ? exact : packed).emplace_back(id, k);
      total += k;
    }

    if (packed.empty()) {
      if (auto p = expand_exact(g, exact)) {
        check_size(*p);
        return Rep{true, std::move(*p), 0, {}};
      }
    }

    // Mixed-radix packing.
    std::uint64_t exact_count = 0;
    for (auto [id, k] : exact) exact_count += k;
    std::vector<std::uint64_t> bases{exact_count + 1};
    for (auto [id, k] : packed) bases.push_back(rep(id).range);
    std::uint64_t table_size = 1;
    for (auto b : bases) table_size = sat_mul(table_size, b);
    if (table_size > params_.table_budget)
      budget_exceeded("lookup table budget exceeded at gate " + std::to_string(g.id), table_size,
                      params_.table_budget, trace_);

    PolyBuilder h(n);
    for (auto [id, k] : exact) h.add(rep(id).p, BigInt(k));
    BigInt weight = bases[0];
    for (std::size_t c = 0; c < packed.size(); ++c) {
      h.add(rep(packed[c].first).p, weight);
      weight *= bases[c + 1];
    }
    Rep out;
    out.added = h.added();
    out.exact = false;
    out.p = h.build();
    check_size(out.p);
    out.range = table_size;
    out.table.resize(table_size);

    std::vector<const Rep*> kid_reps;
    for (auto [id, k] : packed) kid_reps.push_back(&rep(id));
    std::vector<std::uint64_t> digit(bases.size(), 0);
    for (std::uint64_t v = 0; v < table_size; ++v) {
      std::int64_t count = static_cast<std::int64_t>(digit[0]);
      for (std::size_t c = 0; c < packed.size(); ++c)
        if (kid_reps[c]->table[digit[c + 1]]) count += static_cast<std::int64_t>(packed[c].second);
      out.table[v] = gate_on_count(g.kind, g.param, count, static_cast<std::int64_t>(total)) ? 1 : 0;
      for (std::size_t i = 0; i < digit.size(); ++i) {
        if (++digit[i] < bases[i]) break;
        digit[i] = 0;
      }
    }
    table_entries_ += table_size;
    return out;
  }

  const Circuit& c_;
  const DecompositionParams& params_;
  const std::vector<StageRecord>& trace_;
  std::vector<std::optional<Rep>> memo_;
  std::uint64_t table_entries_ = 0;
};

}  // namespace

Decomposition decompose_acc(const Circuit& circuit, const DecompositionParams& params) {
  if (params.k_budget < 1) throw Error(ErrorKind::InvalidArgument, "K budget must be at least 1");
  const CircuitStats st = stats(circuit);
  if (st.acc_depth > params.depth_limit)
    throw Error(ErrorKind::UnsupportedDepth, "circuit depth " + std::to_string(st.acc_depth) + " exceeds the limit " +
                                                 std::to_string(params.depth_limit));
  std::vector<StageRecord> trace{StageRecord{"input", circuit.size(), 0}};

  if (params.sym_collapse) {
    if (auto form = match_sym_and(circuit)) {
      Decomposition d = sym_and_from_form(circuit, *form, params, std::move(trace));
      verify_or_throw(circuit, d, params);
      return d;
    }
  }

  Circuit work = circuit;
  if (params.normalize) {
    work = push_negations(fold_constants(work));
    trace.push_back(StageRecord{"normalize", work.size(), 0});
  }
  if (params.unify_moduli && stats(work).moduli.size() > 1) {
    work = unify_moduli(work);
    trace.push_back(StageRecord{"unify-moduli", work.size(), 0});
  }

  Decomposition d;
  if (params.sym_collapse && params.normalize) {
    if (auto form = match_sym_and(work)) {
      d = sym_and_from_form(work, *form, params, trace);
      d.f_estimate = planning_f(circuit, params);
      d.log2_k_target = log2_target(circuit, d.f_estimate);
      verify_or_throw(circuit, d, params);
      return d;
    }
  }

  DepthReducer reducer(work, params, trace);
  const Rep& top = reducer.rep(work.output());
  if (top.exact) {
    d.g = SymFunction(0, 1, {0, 1});
    d.h = top.p;
    d.pre_merge_terms = d.h.size();
  } else {
    d.g = SymFunction(0, static_cast<std::int64_t>(top.range) - 1, top.table);
    d.h = top.p;
    d.pre_merge_terms = std::max<std::uint64_t>(top.added, d.h.size());
  }
  d.K = d.h.size();
  d.table_entries = reducer.table_entries();
  d.method = "depth-reduction";
  trace.push_back(StageRecord{"depth-reduction", work.size(), d.K});
  d.trace = std::move(trace);
  d.f_estimate = planning_f(circuit, params);
  d.log2_k_target = log2_target(circuit, d.f_estimate);
  verify_or_throw(circuit, d, params);
  return d;
}

std::optional<Bits> check_decomposition(const Circuit& circuit, const Decomposition& d, std::uint64_t random_points,
                                        std::uint64_t seed) {
  const std::size_t n = circuit.n_inputs();
  if (d.h.n_vars() != n) throw Error(ErrorKind::InputArity, "decomposition arity does not match the circuit");
  if (n <= 14) {
    const TruthTable want = truth_table(circuit);
    TruthTable got(n);
    try {
      got = compose_eval_all(d.g, d.h);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Range) throw;
      // Locate the offending point for the report.
      for (std::uint64_t i = 0; i < want.size(); ++i) {
        const Bits x = index_to_assignment(i, n);
        const BigInt v = eval_point(d.h, x);
        if (v < d.g.lo() || v > d.g.hi()) return x;
      }
      throw;
    }
    for (std::uint64_t i = 0; i < want.size(); ++i)
      if (want.get(i) != got.get(i)) return index_to_assignment(i, n);
    return std::nullopt;
  }
  std::mt19937_64 rng(seed);
  for (std::uint64_t t = 0; t < random_points; ++t) {
    Bits x(n);
    for (auto& b : x) b = static_cast<std::uint8_t>(rng() & 1U);
    const BigInt v = eval_point(d.h, x);
    if (v < d.g.lo() || v > d.g.hi()) return x;
    if (d.g(static_cast<std::int64_t>(v)) != evaluate(circuit, x)) return x;
  }
  return std::nullopt;
}

}  // namespace accwb
