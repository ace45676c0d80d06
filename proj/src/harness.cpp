#include "accwb/harness.hpp"

#include <sstream>

#include "accwb/error.hpp"

namespace accwb {

namespace {

StageReport stage_of(const std::string& name, const Circuit& c, bool passed, const SatMetrics& metrics) {
  const CircuitStats st = stats(c);
  return StageReport{name, st.size, st.n_inputs, st.acc_depth, passed, metrics};
}

void clause_stage(HarnessReport& report, const Circuit& x, const Circuit& W, const ClauseEncoding& enc,
                  SatBackend backend, const AccSatParams& params) {
  const Circuit d = build_clause_check_circuit(x, W, enc);
  const SatResult r = solve_sat(negate(d), backend, params);
  report.stages.push_back(stage_of("clause-check", d, !r.satisfiable, r.metrics));
  report.accepted = !r.satisfiable;
  if (r.satisfiable) {
    report.rejected_at = "clause-check";
    report.violated_clause = assignment_to_index(*r.witness);
  }
}

}  // namespace

std::string HarnessReport::to_text() const {
  std::ostringstream out;
  for (const StageReport& s : stages) {
    out << "stage=" << s.stage << " size=" << s.circuit_size << " inputs=" << s.circuit_inputs
        << " acc_depth=" << s.acc_depth << " result=" << (s.passed ? "pass" : "fail") << " k=" << s.metrics.k
        << " K=" << s.metrics.K << " eval_points=" << s.metrics.eval_points << " gate_evals=" << s.metrics.gate_evals
        << " monomial_ops=" << s.metrics.monomial_ops << " fallback=" << (s.metrics.fallback ? 1 : 0) << '\n';
  }
  out << "verdict=" << (accepted ? "ACCEPT" : "REJECT");
  if (!accepted) out << " stage=" << rejected_at;
  if (violated_clause) out << " clause=" << *violated_clause;
  if (exposing_input) out << " input=" << bits_to_string(*exposing_input);
  if (exposing_gate) out << " gate=" << *exposing_gate;
  out << '\n';
  return out.str();
}

HarnessReport satalg3(const Circuit& x, const Circuit& W, const ClauseEncoding& enc, SatBackend backend,
                      const AccSatParams& params) {
  HarnessReport report;
  clause_stage(report, x, W, enc, backend, params);
  return report;
}

Circuit output_projection(const Circuit& x, const WireValueCandidate& c) {
  const GateId j_star = to_tuple_form(x).output();
  CircuitBuilder b(c.n, "x-prime");
  std::vector<GateId> map;
  for (std::size_t k = 0; k < c.n; ++k) map.push_back(b.input(k));
  for (std::size_t k = 0; k < c.j_bits; ++k) map.push_back(b.const_gate((((j_star - 1) >> (c.j_bits - 1 - k)) & 1U) != 0));
  return fold_constants(std::move(b).build(b.append(c.circuit, map)));
}

HarnessReport satalg5(const Circuit& x, const Circuit& W, const WireValueCandidate& c, const ClauseEncoding& enc,
                      SatBackend backend, const AccSatParams& params) {
  HarnessReport report;
  const WireCheck check = verify_wire_circuit(x, c, backend, params);
  StageReport s{"consistency", check.consistency_size, x.n_inputs(), 0, check.correct, check.metrics};
  report.stages.push_back(s);
  if (!check.correct) {
    report.rejected_at = "consistency";
    report.exposing_input = check.exposing_input;
    report.exposing_gate = check.exposing_gate;
    return report;
  }
  clause_stage(report, output_projection(x, c), W, enc, backend, params);
  return report;
}

std::optional<Circuit> search_witness(const Circuit& x, const ClauseEncoding& enc, std::size_t max_inputs,
                                      std::optional<std::uint64_t> V) {
  if (max_inputs > 3) throw Error(ErrorKind::ResourceLimit, "witness search covers at most 3 inputs");
  for (std::size_t n = 0; n <= max_inputs; ++n) {
    const std::uint64_t points = std::uint64_t{1} << n;
    for (std::uint64_t value = 0; value < (std::uint64_t{1} << points); ++value) {
      TruthTable table(n);
      for (std::uint64_t i = 0; i < points; ++i) table.set(i, ((value >> (points - 1 - i)) & 1U) != 0);
      Circuit w = rom_circuit(table, "witness");
      if (check_witness(x, w, enc, V)) return w;
    }
  }
  return std::nullopt;
}

}  // namespace accwb
