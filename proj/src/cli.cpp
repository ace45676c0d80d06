#include "accwb/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>

#include "accwb/acc_sat.hpp"
#include "accwb/bench.hpp"
#include "accwb/circuit_io.hpp"
#include "accwb/consistency.hpp"
#include "accwb/cooklevin.hpp"
#include "accwb/decompose.hpp"
#include "accwb/error.hpp"
#include "accwb/generators.hpp"
#include "accwb/harness.hpp"
#include "accwb/oracle.hpp"
#include "accwb/succinct.hpp"

namespace accwb {

namespace {

struct Options {
  std::string method = "brute";
  std::optional<std::size_t> k;
  std::uint64_t kbudget = std::uint64_t{1} << 26;
  std::size_t enc_w = 2;
  std::uint64_t seed = 1;
  std::size_t cap = kDefaultEnumerationCap;
  std::string output;
  bool expect_sat = false;
  bool expect_unsat = false;
  std::size_t jobs = 1;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ResourceLimit:
    case ErrorKind::Internal: return kExitInternal;
    default: return kExitUsage;
  }
}

AccSatParams sat_params(const Options& o) {
  AccSatParams p;
  p.k = o.k;
  p.decomposition.k_budget = o.kbudget;
  p.brute_cap = o.cap;
  return p;
}

void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.output.empty())
    out << text;
  else
    write_file(o.output, text);
}

std::string metrics_line(const SatMetrics& m, SatBackend backend) {
  std::ostringstream s;
  s << "metrics method=" << to_string(backend) << " k=" << m.k << " K=" << m.K << " eval_points=" << m.eval_points
    << " gate_evals=" << m.gate_evals << " monomial_ops=" << m.monomial_ops << " table_entries=" << m.table_entries
    << " blowup_gates=" << m.blowup_gates << " total_work=" << m.total_work() << " fallback=" << (m.fallback ? 1 : 0)
    << '\n';
  return s.str();
}

std::string stats_line(const Circuit& c) {
  const CircuitStats st = stats(c);
  std::ostringstream s;
  s << "inputs=" << st.n_inputs << " size=" << st.size << " depth=" << st.depth << " acc_depth=" << st.acc_depth
    << " wires=" << st.wires << '\n';
  return s.str();
}

WireValueCandidate load_candidate(const Circuit& x, const std::string& path) {
  const Circuit c = load_circuit(path);
  const Circuit form = to_tuple_form(x);
  return WireValueCandidate{c, form.n_inputs(), form.size(), gate_index_bits(form.size())};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Circuit satisfiability workbench", "acc"};
  app.require_subcommand(1);
  Options o;
  std::function<int()> action;

  auto method_opt = [&](CLI::App* sub) {
    sub->add_option("--method", o.method, "brute or acc")->envname("ACCWB_METHOD")->check(CLI::IsMember({"brute", "acc"}));
    sub->add_option("--k", o.k, "blowup parameter (default: planned)")->envname("ACCWB_K");
    sub->add_option("--kbudget", o.kbudget, "monomial budget")->envname("ACCWB_KBUDGET");
    sub->add_option("--cap", o.cap, "enumeration cap in input bits")->envname("ACCWB_CAP");
  };
  auto output_opt = [&](CLI::App* sub) { sub->add_option("-o,--output", o.output, "output file"); };
  auto enc_opt = [&](CLI::App* sub) {
    sub->add_option("--enc-w", o.enc_w, "variable index width of the clause encoding")->envname("ACCWB_ENC_W");
  };
  std::string path_a, path_b, path_c, text_arg;

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate a circuit on one input");
  eval->add_option("circuit", path_a)->required();
  eval->add_option("input", text_arg, "input bits, x1 first")->required();
  eval->callback([&] {
    action = [&] {
      const Circuit c = load_circuit(path_a);
      const Bits x = bits_from_string(text_arg);
      if (x.size() != c.n_inputs()) throw Error(ErrorKind::InputArity, "expected " + std::to_string(c.n_inputs()) + " input bits");
      out << (evaluate(c, x) ? 1 : 0) << '\n';
      return int{kExitOk};
    };
  });

  // tt
  auto* tt = app.add_subcommand("tt", "truth table of a circuit");
  tt->add_option("circuit", path_a)->required();
  tt->add_option("--cap", o.cap)->envname("ACCWB_CAP");
  output_opt(tt);
  tt->callback([&] {
    action = [&] {
      const TruthTable t = truth_table(load_circuit(path_a), o.cap);
      if (o.output.empty())
        out << t.to_string() << '\n';
      else
        write_file(o.output, write_truthtable(t));
      return int{kExitOk};
    };
  });

  // sat
  auto* sat = app.add_subcommand("sat", "decide satisfiability");
  sat->add_option("circuit", path_a)->required();
  method_opt(sat);
  auto* es = sat->add_flag("--expect-sat", o.expect_sat);
  sat->add_flag("--expect-unsat", o.expect_unsat)->excludes(es);
  sat->callback([&] {
    action = [&] {
      const SatBackend backend = parse_backend(o.method);
      const SatResult r = solve_sat(load_circuit(path_a), backend, sat_params(o));
      if (r.satisfiable)
        out << "SAT " << bits_to_string(*r.witness) << '\n';
      else
        out << "UNSAT\n";
      out << metrics_line(r.metrics, backend);
      if ((o.expect_sat && !r.satisfiable) || (o.expect_unsat && r.satisfiable)) return int{kExitNegative};
      return int{kExitOk};
    };
  });

  // decompose
  std::string dmethod = "acc";
  auto* dec = app.add_subcommand("decompose", "g o h decomposition");
  dec->add_option("circuit", path_a)->required();
  dec->add_option("--method", dmethod, "sym-and or acc")->check(CLI::IsMember({"sym-and", "acc"}));
  dec->add_option("--kbudget", o.kbudget)->envname("ACCWB_KBUDGET");
  output_opt(dec);
  dec->callback([&] {
    action = [&] {
      const Circuit c = load_circuit(path_a);
      DecompositionParams p;
      p.k_budget = o.kbudget;
      try {
        const Decomposition d = dmethod == "sym-and" ? decompose_sym_and(c, p) : decompose_acc(c, p);
        out << trace_to_text(d.trace);
        out << "method=" << d.method << " K=" << d.K << " pre_merge_terms=" << d.pre_merge_terms
            << " table_entries=" << d.table_entries << '\n';
        out << "g " << sym_to_text(d.g) << '\n';
        if (!o.output.empty()) write_file(o.output, poly_to_text(d.h));
      } catch (const DecompositionError& e) {
        err << trace_to_text(e.trace());
        throw;
      }
      return int{kExitOk};
    };
  });

  // blowup
  std::string policy = "highest";
  bool no_fold = false;
  std::size_t bk = 0;
  auto* bl = app.add_subcommand("blowup", "OR of the 2^k restrictions");
  bl->add_option("circuit", path_a)->required();
  bl->add_option("--k", bk)->required()->envname("ACCWB_K");
  bl->add_option("--policy", policy)->check(CLI::IsMember({"highest", "fanout"}));
  bl->add_flag("--no-fold", no_fold);
  output_opt(bl);
  bl->callback([&] {
    action = [&] {
      const Blowup b = blowup(load_circuit(path_a), bk,
                              policy == "fanout" ? BlowupPolicy::Fanout : BlowupPolicy::HighestIndex, !no_fold);
      emit(o, out, serialize_circuit(b.circuit));
      err << "unfolded_size=" << b.unfolded_size << ' ' << stats_line(b.circuit);
      return int{kExitOk};
    };
  });

  // succinct-check
  std::optional<std::uint64_t> vars;
  auto* sc = app.add_subcommand("succinct-check", "stream T(x) and check the witness W");
  sc->add_option("x", path_a)->required();
  sc->add_option("W", path_b)->required();
  enc_opt(sc);
  sc->add_option("--vars", vars, "variable count (default 2^w - 1)");
  sc->callback([&] {
    action = [&] {
      const WitnessCheck r = check_witness_detailed(load_circuit(path_a), load_circuit(path_b), make_encoding(o.enc_w), vars);
      if (r.satisfied) {
        out << "SATISFIED records=" << r.records << '\n';
        return int{kExitOk};
      }
      out << "VIOLATED clause=" << *r.violated_clause << '\n';
      return int{kExitNegative};
    };
  });

  // build-d
  auto* bd = app.add_subcommand("build-d", "clause-check circuit D from x and W");
  bd->add_option("x", path_a)->required();
  bd->add_option("W", path_b)->required();
  enc_opt(bd);
  output_opt(bd);
  bd->callback([&] {
    action = [&] {
      const Circuit d = build_clause_check_circuit(load_circuit(path_a), load_circuit(path_b), make_encoding(o.enc_w));
      emit(o, out, serialize_circuit(d));
      err << stats_line(d);
      return int{kExitOk};
    };
  });

  // build-econs
  bool j_input = false;
  auto* be = app.add_subcommand("build-econs", "consistency circuit E' for x and a wire-value candidate C");
  be->add_option("x", path_a)->required();
  be->add_option("C", path_b)->required();
  be->add_flag("--j-input", j_input, "keep j as an input instead of unrolling");
  output_opt(be);
  be->callback([&] {
    action = [&] {
      const Circuit x = load_circuit(path_a);
      const Circuit e = build_consistency_circuit(x, load_candidate(x, path_b),
                                                  j_input ? ConsistencyLayout::JInput : ConsistencyLayout::Unrolled);
      emit(o, out, serialize_circuit(e));
      err << stats_line(e);
      return int{kExitOk};
    };
  });

  // wirecheck
  auto* wc = app.add_subcommand("wirecheck", "verify a wire-value candidate C for x");
  wc->add_option("x", path_a)->required();
  wc->add_option("C", path_b)->required();
  wc->add_flag("--j-input", j_input);
  method_opt(wc);
  wc->callback([&] {
    action = [&] {
      const Circuit x = load_circuit(path_a);
      const WireCheck r = verify_wire_circuit(x, load_candidate(x, path_b), parse_backend(o.method), sat_params(o),
                                              j_input ? ConsistencyLayout::JInput : ConsistencyLayout::Unrolled);
      if (r.correct) {
        out << "CORRECT\n";
        return int{kExitOk};
      }
      out << "WRONG input=" << bits_to_string(*r.exposing_input);
      if (r.exposing_gate) out << " gate=" << *r.exposing_gate;
      out << '\n';
      return int{kExitNegative};
    };
  });

  // satalg3 / satalg5
  auto* s3 = app.add_subcommand("satalg3", "accept iff NOT D is unsatisfiable");
  s3->add_option("x", path_a)->required();
  s3->add_option("W", path_b)->required();
  enc_opt(s3);
  method_opt(s3);
  s3->callback([&] {
    action = [&] {
      const HarnessReport r = satalg3(load_circuit(path_a), load_circuit(path_b), make_encoding(o.enc_w),
                                      parse_backend(o.method), sat_params(o));
      out << r.to_text();
      return r.accepted ? int{kExitOk} : int{kExitNegative};
    };
  });
  auto* s5 = app.add_subcommand("satalg5", "verify C, then run the clause check on x' = C(., j*)");
  s5->add_option("x", path_a)->required();
  s5->add_option("W", path_b)->required();
  s5->add_option("C", path_c)->required();
  enc_opt(s5);
  method_opt(s5);
  s5->callback([&] {
    action = [&] {
      const Circuit x = load_circuit(path_a);
      const HarnessReport r = satalg5(x, load_circuit(path_b), load_candidate(x, path_c), make_encoding(o.enc_w),
                                      parse_backend(o.method), sat_params(o));
      out << r.to_text();
      return r.accepted ? int{kExitOk} : int{kExitNegative};
    };
  });

  // cooklevin
  std::string emit_kind = "verdict";
  std::size_t steps = 1, step_cap = kDefaultStepCap;
  std::optional<std::size_t> gen_w;
  auto* cl = app.add_subcommand("cooklevin", "run a machine, or emit its tableau formula or clause generator");
  cl->add_option("machine", path_a)->required();
  cl->add_option("--input", text_arg, "input string");
  cl->add_option("--t", steps, "step bound")->required();
  cl->add_option("--step-cap", step_cap);
  cl->add_option("--emit", emit_kind)->check(CLI::IsMember({"verdict", "cnf", "circuit"}));
  cl->add_option("--enc-w", gen_w, "index width for the generator (default: smallest that fits)");
  output_opt(cl);
  cl->callback([&] {
    action = [&] {
      const NTM m = parse_ntm(read_file(path_a));
      if (emit_kind == "verdict") {
        out << (ntm_accepts(m, text_arg, steps, step_cap) ? "ACCEPT" : "REJECT") << '\n';
      } else if (emit_kind == "cnf") {
        emit(o, out, formula_to_text(tableau_to_3cnf(m, text_arg, steps, step_cap)));
      } else {
        const TableauLayout L = tableau_layout(m, text_arg, steps);
        const ClauseEncoding enc = gen_w ? make_encoding(*gen_w) : tableau_encoding(L);
        const Circuit c = clause_generator_circuit(m, text_arg, steps, enc, step_cap);
        emit(o, out, serialize_circuit(c));
        err << "enc-w=" << enc.w << " vars=" << L.V << ' ' << stats_line(c);
      }
      return int{kExitOk};
    };
  });

  // gen
  std::string family;
  std::size_t gn = 8, depth = 3;
  std::optional<std::size_t> gs;
  std::string from, corrupt;
  auto* gen = app.add_subcommand("gen", "seeded instance generator");
  gen->add_option("family", family,
                  "sym-and, acc-depth-<d>, random-unrestricted, planted-succinct or wire-values")
      ->required();
  gen->add_option("--from", from, "wire-values: the circuit x");
  gen->add_option("--corrupt", corrupt, "wire-values: flip the claim at <i>:<j>");
  gen->add_option("--n", gn, "inputs (variable index width for planted-succinct)");
  gen->add_option("--s", gs, "children, width, gates or clauses, depending on the family");
  gen->add_option("--seed", o.seed)->envname("ACCWB_SEED");
  output_opt(gen);
  gen->callback([&] {
    action = [&] {
      Rng rng(o.seed);
      if (family == "sym-and") {
        SymAndSpec s;
        s.n = gn;
        s.children = gs.value_or(2 * gn);
        emit(o, out, serialize_circuit(sym_and_circuit(s, rng).renamed("sym_and")));
      } else if (family.rfind("acc-depth-", 0) == 0) {
        try {
          depth = std::stoul(family.substr(10));
        } catch (const std::exception&) {
          throw UsageError("bad depth in family '" + family + "'");
        }
        LayeredSpec s;
        s.n = gn;
        s.depth = depth;
        s.width = gs.value_or(4);
        emit(o, out, serialize_circuit(layered_acc_circuit(s, rng).renamed("acc_depth")));
      } else if (family == "random-unrestricted") {
        RandomCircuitSpec s;
        s.n = gn;
        s.gates = gs.value_or(4 * gn);
        emit(o, out, serialize_circuit(random_circuit(s, rng).renamed("random")));
      } else if (family == "planted-succinct") {
        if (o.output.empty()) throw UsageError("planted-succinct needs -o (the witness goes to <o>.witness.ckt)");
        const ClauseEncoding enc = make_encoding(gn);
        auto [f, plant] = planted_formula(enc.max_var(), gs.value_or(4 * enc.max_var()), rng);
        write_file(o.output, serialize_circuit(encode_formula(f, enc).renamed("formula")));
        write_file(o.output + ".witness.ckt", serialize_circuit(encode_assignment(plant).renamed("witness")));
      } else if (family == "wire-values") {
        if (from.empty()) throw UsageError("wire-values needs --from");
        WireValueCandidate c = make_wire_value_circuit(load_circuit(from));
        if (!corrupt.empty()) {
          const auto colon = corrupt.find(':');
          std::uint64_t i = 0, j = 0;
          try {
            if (colon == std::string::npos) throw std::invalid_argument("colon");
            i = std::stoull(corrupt.substr(0, colon));
            j = std::stoull(corrupt.substr(colon + 1));
          } catch (const std::exception&) {
            throw UsageError("--corrupt expects <i>:<j>");
          }
          c = corrupt_candidate(c, i, static_cast<GateId>(j));
        }
        emit(o, out, serialize_circuit(c.circuit.renamed("wires")));
      } else {
        throw UsageError("unknown family '" + family + "'");
      }
      return int{kExitOk};
    };
  });

  // bench
  BenchSpec bs;
  bool no_wall = false;
  auto* bench = app.add_subcommand("bench", "operation counts of acc versus exhaustive search");
  bench->add_option("--suite", bs.suite)->check(CLI::IsMember({"sym-and", "acc-depth-3"}));
  bench->add_option("--n-min", bs.n_min);
  bench->add_option("--n-max", bs.n_max);
  bench->add_option("--instances", bs.instances);
  bench->add_option("--seed", bs.seed)->envname("ACCWB_SEED");
  bench->add_option("--k", bs.k)->envname("ACCWB_K");
  bench->add_option("--kbudget", bs.k_budget)->envname("ACCWB_KBUDGET");
  bench->add_option("--jobs", bs.jobs)->envname("ACCWB_JOBS");
  bench->add_flag("--no-wall", no_wall, "leave out the wall-time column");
  output_opt(bench);
  bench->callback([&] {
    action = [&] {
      const auto rows = run_bench(bs);
      emit(o, out, bench_to_tsv(rows, summarize(rows), !no_wall));
      return int{kExitOk};
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? int{kExitOk} : int{kExitUsage};
  }
  try {
    return action ? action() : int{kExitUsage};
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error (internal): " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace accwb
