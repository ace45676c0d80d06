#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace accwb {

struct CnfLiteral {
  /// 1-based variable index.
  std::uint64_t var = 1;
  bool negated = false;

  bool operator==(const CnfLiteral&) const = default;
};

using Clause = std::vector<CnfLiteral>;

/// Clauses of width at most 3 over variables 1..V. The empty formula is
/// satisfiable.
struct Formula3CNF {
  std::uint64_t V = 0;
  std::vector<Clause> clauses;

  bool operator==(const Formula3CNF&) const = default;
};

/// Assignment for variables 1..V, entry v - 1 for variable v.
using CnfModel = std::vector<std::uint8_t>;

bool clause_satisfied(const Clause& clause, const CnfModel& model);
bool formula_satisfied(const Formula3CNF& f, const CnfModel& model);

struct SolverStats {
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t conflicts = 0;
};

/// Complete CDCL search (two watched literals, first-UIP clause learning,
/// activity-ordered decisions, Luby restarts). Returns a model when
/// satisfiable.
std::optional<CnfModel> solve_cnf(const Formula3CNF& f, SolverStats* stats = nullptr);

/// Enumerates all 2^V assignments in lexicographic order (variable 1 most
/// significant) and returns the first model. V must be at most 30.
std::optional<CnfModel> brute_cnf(const Formula3CNF& f);

std::string formula_to_text(const Formula3CNF& f);

}  // namespace accwb
