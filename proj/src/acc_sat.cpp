#include "accwb/acc_sat.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "accwb/error.hpp"
#include "accwb/oracle.hpp"

namespace accwb {

namespace {

constexpr std::size_t kMaxBlowupK = 24;
constexpr std::uint64_t kMaxBlowupGates = std::uint64_t{1} << 28;

std::vector<std::size_t> select_fixed(const Circuit& c, std::size_t k, BlowupPolicy policy) {
  const std::size_t n = c.n_inputs();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = n - 1 - i;
  if (policy == BlowupPolicy::Fanout) {
    std::vector<std::size_t> fanout(n, 0);
    for (const Gate& g : c.gates())
      for (GateId f : g.fanin)
        if (f <= n) ++fanout[f - 1];
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fanout[a] > fanout[b]; });
  }
  std::vector<std::size_t> fixed(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(fixed.begin(), fixed.end());
  return fixed;
}

}  // namespace

Blowup blowup(const Circuit& circuit, std::size_t k, BlowupPolicy policy, bool fold) {
  const std::size_t n = circuit.n_inputs();
  if (k > n) throw Error(ErrorKind::InvalidArgument, "k = " + std::to_string(k) + " exceeds n = " + std::to_string(n));
  if (k > kMaxBlowupK || (std::uint64_t{1} << k) * circuit.size() > kMaxBlowupGates)
    throw Error(ErrorKind::ResourceLimit, "k-blowup with k = " + std::to_string(k) + " is too large");

  Blowup out{constant_circuit(0, false), 0, select_fixed(circuit, k, policy), {}};
  std::vector<std::uint8_t> is_fixed(n, 0);
  for (std::size_t v : out.fixed) is_fixed[v] = 1;
  for (std::size_t v = 0; v < n; ++v)
    if (!is_fixed[v]) out.free.push_back(v);

  CircuitBuilder b(n - k, circuit.name());
  std::vector<GateId> input_map(n, 0);
  for (std::size_t i = 0; i < out.free.size(); ++i) input_map[out.free[i]] = b.input(i);
  std::vector<GateId> copies;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << k); ++a) {
    // Restriction a assigns fixed[j] the bit j of a counted from the most
    // significant end, so copies come in lexicographic order.
    for (std::size_t j = 0; j < k; ++j) input_map[out.fixed[j]] = b.const_gate(((a >> (k - 1 - j)) & 1U) != 0);
    copies.push_back(b.append(circuit, input_map));
  }
  const GateId top = b.add_or(std::move(copies));
  Circuit unfolded = std::move(b).build(top);
  out.unfolded_size = unfolded.size();
  out.circuit = fold ? fold_constants(unfolded) : std::move(unfolded);
  return out;
}

Circuit k_blowup(const Circuit& circuit, std::size_t k, BlowupPolicy policy, bool fold) {
  return blowup(circuit, k, policy, fold).circuit;
}

std::size_t choose_k(const CircuitStats& st, const AccSatParams& params) {
  const std::size_t n = st.n_inputs;
  if (params.k) return std::min(*params.k, n);
  const double f = params.decomposition.f_estimate > 0
                       ? params.decomposition.f_estimate
                       : estimate_f(std::max<std::size_t>(st.acc_depth, 1), st.max_modulus());
  auto k = static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(n), 1.0 / (2.0 * f)) + 1e-9));
  k = std::min({k, n, kMaxBlowupK});
  const double budget = static_cast<double>(params.decomposition.k_budget);
  while (k > 0 && std::ldexp(static_cast<double>(std::max<std::size_t>(st.size, 1)), static_cast<int>(k)) > budget) --k;
  return k;
}

namespace {

struct Pipeline {
  Blowup blown;
  Decomposition dec;
  TruthTable table{0};
  SatMetrics metrics;
};

/// choose_k, k-blowup, decomposition, evaluation on all 2^{n-k} points.
/// Returns nullopt when the circuit is outside the supported class.
std::optional<Pipeline> run_pipeline(const Circuit& circuit, const AccSatParams& params) {
  const CircuitStats st = stats(circuit);
  if (st.acc_depth > params.decomposition.depth_limit) {
    if (params.allow_fallback) return std::nullopt;
    throw Error(ErrorKind::UnsupportedDepth, "circuit depth " + std::to_string(st.acc_depth) + " exceeds the limit " +
                                                 std::to_string(params.decomposition.depth_limit));
  }
  DecompositionParams dp = params.decomposition;
  dp.depth_limit += 1;  // the blowup adds one OR layer
  std::size_t k = choose_k(st, params);
  for (;;) {
    try {
      Pipeline p{blowup(circuit, k, params.policy), {}, TruthTable(0), {}};
      p.dec = decompose_acc(p.blown.circuit, dp);
      p.metrics.k = k;
      p.metrics.K = p.dec.K;
      p.metrics.pre_merge_terms = p.dec.pre_merge_terms;
      p.metrics.table_entries = p.dec.table_entries;
      p.metrics.blowup_gates = p.blown.unfolded_size;
      p.table = compose_eval_all(p.dec.g, p.dec.h, kDefaultPointCap, &p.metrics.monomial_ops);
      p.metrics.eval_points = p.table.size();
      return p;
    } catch (const Error& e) {
      // Only the automatic choice of k may be revised.
      if (e.kind() != ErrorKind::ResourceLimit || params.k || k == 0) throw;
      --k;
    }
  }
}

}  // namespace

SatResult acc_sat(const Circuit& circuit, const AccSatParams& params) {
  SatResult result;
  auto pipeline = run_pipeline(circuit, params);
  if (!pipeline) {
    BruteMetrics bm;
    result.witness = brute_sat(circuit, params.brute_cap, &bm);
    result.satisfiable = result.witness.has_value();
    result.metrics.fallback = true;
    result.metrics.eval_points = bm.points;
    result.metrics.gate_evals = bm.gate_evals;
    return result;
  }
  Pipeline& p = *pipeline;
  result.metrics = p.metrics;
  result.trace = p.dec.trace;
  const std::uint64_t hit = p.table.first_one();
  if (hit == p.table.size()) return result;

  const std::size_t n = circuit.n_inputs();
  const std::size_t k = p.blown.fixed.size();
  const Bits free_bits = index_to_assignment(hit, p.blown.free.size());
  Bits x(n, 0);
  for (std::size_t i = 0; i < p.blown.free.size(); ++i) x[p.blown.free[i]] = free_bits[i];
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << k); ++a) {
    for (std::size_t j = 0; j < k; ++j) x[p.blown.fixed[j]] = static_cast<std::uint8_t>((a >> (k - 1 - j)) & 1U);
    result.metrics.gate_evals += circuit.size();
    if (evaluate(circuit, x)) {
      result.satisfiable = true;
      result.witness = x;
      return result;
    }
  }
  throw Error(ErrorKind::Internal, "blown-up circuit accepts point " + bits_to_string(free_bits) +
                                       " but no extension satisfies the circuit");
}

const char* to_string(SatBackend backend) { return backend == SatBackend::Brute ? "brute" : "acc"; }

SatBackend parse_backend(std::string_view name) {
  if (name == "brute") return SatBackend::Brute;
  if (name == "acc") return SatBackend::Acc;
  throw Error(ErrorKind::InvalidArgument, "unknown method '" + std::string(name) + "' (expected brute or acc)");
}

SatResult solve_sat(const Circuit& circuit, SatBackend backend, const AccSatParams& params) {
  if (backend == SatBackend::Acc) return acc_sat(circuit, params);
  SatResult result;
  BruteMetrics bm;
  result.witness = brute_sat(circuit, params.brute_cap, &bm);
  result.satisfiable = result.witness.has_value();
  result.metrics.eval_points = bm.points;
  result.metrics.gate_evals = bm.gate_evals;
  return result;
}

GapResult gap_sat(const Circuit& circuit, const AccSatParams& params) {
  GapResult result;
  auto pipeline = run_pipeline(circuit, params);
  if (!pipeline) {
    BruteMetrics bm;
    result.count = brute_count(circuit, params.brute_cap, &bm);
    result.metrics.fallback = true;
    result.metrics.eval_points = bm.points;
    result.metrics.gate_evals = bm.gate_evals;
  } else {
    result.count = pipeline->table.count_ones();
    result.metrics = pipeline->metrics;
  }
  result.verdict = result.count == 0 ? GapVerdict::Unsat : GapVerdict::Dense;
  return result;
}

}  // namespace accwb
