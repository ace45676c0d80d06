#include "accwb/cnf.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

#include "accwb/error.hpp"

namespace accwb {

bool clause_satisfied(const Clause& clause, const CnfModel& model) {
  for (const CnfLiteral& lit : clause)
    if ((model.at(lit.var - 1) != 0) != lit.negated) return true;
  return false;
}

bool formula_satisfied(const Formula3CNF& f, const CnfModel& model) {
  for (const Clause& c : f.clauses)
    if (!clause_satisfied(c, model)) return false;
  return true;
}

namespace {

void check_vars(const Formula3CNF& f) {
  for (const Clause& c : f.clauses)
    for (const CnfLiteral& lit : c)
      if (lit.var == 0 || lit.var > f.V)
        throw Error(ErrorKind::InvalidArgument, "literal variable " + std::to_string(lit.var) + " outside 1.." +
                                                    std::to_string(f.V));
}

/// Literal code 2 * (var - 1) + negated.
using Lit = std::uint32_t;
constexpr std::uint32_t kNoReason = ~std::uint32_t{0};

double luby(std::uint64_t i) {
  std::uint64_t size = 1, seq = 0;
  while (size < i + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != i) {
    size = (size - 1) >> 1;
    --seq;
    i = i % size;
  }
  return static_cast<double>(std::uint64_t{1} << seq);
}

class Cdcl {
 public:
  explicit Cdcl(const Formula3CNF& f)
      : n_(f.V), value_(f.V, kUnset), level_(f.V, 0), reason_(f.V, kNoReason), phase_(f.V, 1),
        activity_(f.V, 0.0), seen_(f.V, 0), watches_(2 * f.V) {
    for (const Clause& c : f.clauses) {
      std::vector<Lit> lits;
      for (const CnfLiteral& l : c) {
        const Lit code = static_cast<Lit>(2 * (l.var - 1) + (l.negated ? 1 : 0));
        if (std::find(lits.begin(), lits.end(), code) == lits.end()) lits.push_back(code);
      }
      bool tautology = false;
      for (Lit a : lits) tautology |= std::find(lits.begin(), lits.end(), a ^ 1U) != lits.end();
      if (tautology) continue;
      if (lits.empty()) {
        trivially_unsat_ = true;
        continue;
      }
      if (lits.size() == 1) {
        units_.push_back(lits[0]);
        continue;
      }
      add_clause(std::move(lits));
    }
    for (std::uint32_t v = 0; v < n_; ++v) heap_.push({0.0, v});
  }

  std::optional<CnfModel> solve(SolverStats* stats) {
    if (trivially_unsat_) return finish(stats, false);
    for (Lit u : units_) {
      if (lit_false(u)) return finish(stats, false);
      if (!lit_true(u)) assign(u, kNoReason);
    }
    std::uint64_t restarts = 0;
    std::uint64_t budget = static_cast<std::uint64_t>(100 * luby(restarts));
    std::uint64_t since_restart = 0;
    for (;;) {
      const std::uint32_t conflict = propagate();
      if (conflict != kNoReason) {
        ++conflicts_;
        ++since_restart;
        if (decision_level() == 0) return finish(stats, false);
        std::vector<Lit> learnt;
        const std::size_t back = analyze(conflict, learnt);
        undo_to_level(back);
        if (learnt.size() == 1) {
          assign(learnt[0], kNoReason);
        } else {
          const std::uint32_t id = add_clause(learnt);
          assign(clauses_[id][0], id);
        }
        var_inc_ /= 0.95;
        continue;
      }
      if (since_restart >= budget) {
        undo_to_level(0);
        since_restart = 0;
        budget = static_cast<std::uint64_t>(100 * luby(++restarts));
      }
      const std::optional<std::uint32_t> v = pick();
      if (!v) return finish(stats, true);
      ++decisions_;
      level_starts_.push_back(trail_.size());
      assign(static_cast<Lit>(2 * *v + (phase_[*v] ? 1 : 0)), kNoReason);
    }
  }

 private:
  static constexpr std::uint8_t kUnset = 2;

  std::uint32_t add_clause(std::vector<Lit> lits) {
    const auto id = static_cast<std::uint32_t>(clauses_.size());
    watches_[lits[0]].push_back(id);
    watches_[lits[1]].push_back(id);
    clauses_.push_back(std::move(lits));
    return id;
  }

  std::size_t decision_level() const { return level_starts_.size(); }
  bool lit_true(Lit l) const { return value_[l >> 1] == ((l & 1U) ? 0 : 1); }
  bool lit_false(Lit l) const { return value_[l >> 1] == ((l & 1U) ? 1 : 0); }

  void assign(Lit l, std::uint32_t reason) {
    const std::uint32_t v = l >> 1;
    value_[v] = (l & 1U) ? 0 : 1;
    level_[v] = decision_level();
    reason_[v] = reason;
    trail_.push_back(l);
  }

  void undo_to_level(std::size_t level) {
    if (decision_level() <= level) return;
    const std::size_t size = level_starts_[level];
    while (trail_.size() > size) {
      const std::uint32_t v = trail_.back() >> 1;
      phase_[v] = trail_.back() & 1U;
      value_[v] = kUnset;
      reason_[v] = kNoReason;
      heap_.push({activity_[v], v});
      trail_.pop_back();
    }
    level_starts_.resize(level);
    head_ = std::min(head_, size);
  }

  /// Index of a falsified clause, or kNoReason.
  std::uint32_t propagate() {
    while (head_ < trail_.size()) {
      const Lit falsified = trail_[head_++] ^ 1U;
      auto& list = watches_[falsified];
      for (std::size_t i = 0; i < list.size();) {
        ++propagations_;
        const std::uint32_t id = list[i];
        std::vector<Lit>& c = clauses_[id];
        if (c[0] == falsified) std::swap(c[0], c[1]);
        if (lit_true(c[0])) {
          ++i;
          continue;
        }
        bool moved = false;
        for (std::size_t k = 2; k < c.size(); ++k)
          if (!lit_false(c[k])) {
            std::swap(c[1], c[k]);
            watches_[c[1]].push_back(id);
            list[i] = list.back();
            list.pop_back();
            moved = true;
            break;
          }
        if (moved) continue;
        if (lit_false(c[0])) {
          head_ = trail_.size();
          return id;
        }
        assign(c[0], id);
        ++i;
      }
    }
    return kNoReason;
  }

  void bump(std::uint32_t v) {
    activity_[v] += var_inc_;
    if (activity_[v] > 1e100) {
      for (double& a : activity_) a *= 1e-100;
      var_inc_ *= 1e-100;
      heap_ = {};
      for (std::uint32_t u = 0; u < n_; ++u)
        if (value_[u] == kUnset) heap_.push({activity_[u], u});
    }
    if (value_[v] == kUnset) heap_.push({activity_[v], v});
  }

  /// First-UIP learning. Returns the backjump level; learnt[0] is asserting
  /// and learnt[1] (if any) has the highest remaining level.
  std::size_t analyze(std::uint32_t conflict, std::vector<Lit>& learnt) {
    learnt.assign(1, 0);
    std::size_t pending = 0;
    std::size_t index = trail_.size();
    Lit p = 0;
    bool first = true;
    std::uint32_t reason = conflict;
    for (;;) {
      for (Lit q : clauses_[reason]) {
        if (!first && q == p) continue;
        const std::uint32_t v = q >> 1;
        if (seen_[v] || level_[v] == 0) continue;
        seen_[v] = 1;
        bump(v);
        if (level_[v] == decision_level())
          ++pending;
        else
          learnt.push_back(q);
      }
      first = false;
      do p = trail_[--index];
      while (!seen_[p >> 1]);
      seen_[p >> 1] = 0;
      if (--pending == 0) break;
      reason = reason_[p >> 1];
    }
    learnt[0] = p ^ 1U;
    std::size_t back = 0;
    for (std::size_t k = 1; k < learnt.size(); ++k) {
      seen_[learnt[k] >> 1] = 0;
      if (level_[learnt[k] >> 1] > back) {
        back = level_[learnt[k] >> 1];
        std::swap(learnt[1], learnt[k]);
      }
    }
    return back;
  }

  std::optional<std::uint32_t> pick() {
    while (!heap_.empty()) {
      const auto [act, v] = heap_.top();
      heap_.pop();
      if (value_[v] == kUnset && act == activity_[v]) return v;
    }
    for (std::uint32_t v = 0; v < n_; ++v)
      if (value_[v] == kUnset) return v;
    return std::nullopt;
  }

  std::optional<CnfModel> finish(SolverStats* stats, bool sat) {
    if (stats) {
      stats->decisions += decisions_;
      stats->propagations += propagations_;
      stats->conflicts += conflicts_;
    }
    if (!sat) return std::nullopt;
    CnfModel model(n_);
    for (std::size_t v = 0; v < n_; ++v) model[v] = value_[v] == 1 ? 1 : 0;
    return model;
  }

  std::size_t n_;
  std::vector<std::uint8_t> value_;
  std::vector<std::size_t> level_;
  std::vector<std::uint32_t> reason_;
  std::vector<std::uint8_t> phase_;  // saved polarity, 1 = false
  std::vector<double> activity_;
  std::vector<std::uint8_t> seen_;
  std::vector<std::vector<std::uint32_t>> watches_;  // clauses watching a literal, visited when it becomes false
  std::vector<std::vector<Lit>> clauses_;
  std::vector<Lit> units_;
  std::vector<Lit> trail_;
  std::vector<std::size_t> level_starts_;
  std::priority_queue<std::pair<double, std::uint32_t>> heap_;
  double var_inc_ = 1.0;
  std::size_t head_ = 0;
  bool trivially_unsat_ = false;
  std::uint64_t decisions_ = 0, propagations_ = 0, conflicts_ = 0;
};

}  // namespace

std::optional<CnfModel> solve_cnf(const Formula3CNF& f, SolverStats* stats) {
  check_vars(f);
  Cdcl solver(f);
  auto model = solver.solve(stats);
  if (model && !formula_satisfied(f, *model)) throw Error(ErrorKind::Internal, "solver produced a non-model");
  return model;
}

std::optional<CnfModel> brute_cnf(const Formula3CNF& f) {
  check_vars(f);
  if (f.V > 30) throw Error(ErrorKind::ResourceLimit, "exhaustive 3SAT search is limited to 30 variables");
  CnfModel model(f.V);
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << f.V); ++a) {
    for (std::uint64_t v = 0; v < f.V; ++v) model[v] = static_cast<std::uint8_t>((a >> (f.V - 1 - v)) & 1U);
    if (formula_satisfied(f, model)) return model;
  }
  return std::nullopt;
}

std::string formula_to_text(const Formula3CNF& f) {
  std::ostringstream out;
  out << "p cnf " << f.V << ' ' << f.clauses.size() << '\n';
  for (const Clause& c : f.clauses) {
    for (const CnfLiteral& l : c) out << (l.negated ? "-" : "") << l.var << ' ';
    out << "0\n";
  }
  return out.str();
}

}  // namespace accwb
