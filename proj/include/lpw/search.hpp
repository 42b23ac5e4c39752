#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lpw/formula.hpp"
#include "lpw/proof.hpp"
#include "lpw/registry.hpp"
#include "lpw/schemata.hpp"

namespace lpw {

struct SearchRules {
  bool modus_ponens = true;
  bool modus_tollens = true;
  bool generalize = false;      // QI
  bool exists_intro = false;    // QIV
};

struct SearchConfig {
  // Bound on the number of proof lines, premises included.
  std::size_t max_depth = 5;
  // Axiom schemata the search may cite; unset means every axiom schema of
  // the profile.
  std::optional<std::vector<std::string>> schema_whitelist;
  // Candidate metavariable fillers. Empty means the subformulas of the goal.
  // The premises' subformulas are always added.
  std::vector<Formula> universe;
  // Formulas available as hypothesis lines.
  std::vector<Formula> premises;
  SearchRules rules;
  // Levels tried for LP14.
  std::uint64_t max_schema_level = 2;
  std::chrono::milliseconds time_budget{10000};
  SchemaConfig schemas;
};

struct SearchStats {
  std::size_t leaves = 0;      // axiom instances generated
  std::size_t pool = 0;        // formulas that may appear as lines
  std::size_t nodes = 0;       // search states visited
  std::size_t depth_reached = 0;
};

// Iterative deepening on the number of lines: a returned proof is as short
// as any proof inside the bounds, and it has been re-checked by check_proof.
// Absence means no proof exists within the bounds. Throws BudgetExhausted when
// the time budget runs out first.
std::optional<ProofScript> search(const Formula& goal, const SearchConfig& cfg, const Registry& r,
                                  SearchStats* stats = nullptr);

}  // namespace lpw
