#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lpw/formula.hpp"

namespace lpw {

// A metavariable filler: formula metavariables (A, B, C, P, F) take formulas,
// term metavariables (x, y, t) take terms.
using MetaValue = std::variant<Formula, Term>;

struct AxiomRef {
  std::string schema;
  std::optional<std::uint64_t> level;
  std::vector<std::pair<std::string, MetaValue>> bindings;
};
struct Hypothesis {};
// `minor` holds A, `major` holds A -> B; the line holds B.
struct ModusPonens {
  std::string minor, major;
};
// `implication` holds A -> B, `negation` holds !B (or ~B); the line holds !A (or ~A).
struct ModusTollens {
  std::string implication, negation;
};
struct Generalize {
  std::string premise, var;
};
struct ExistsIntro {
  std::string premise, var;
};
struct EqExplosion {
  std::string premise;
};
struct Comprehension {
  Formula pattern;
};
struct DefNegUnfold {
  std::string premise;
};

using Justification = std::variant<AxiomRef, Hypothesis, ModusPonens, ModusTollens, Generalize, ExistsIntro,
                                   EqExplosion, Comprehension, DefNegUnfold>;

// Ids of earlier lines a justification refers to, in textual order.
std::vector<std::string> premises_of(const Justification& j);

struct ProofLine {
  std::string id;
  Formula formula;
  Justification justification;
  std::size_t source_line = 0;
  std::vector<std::string> leading_comments;
  std::string comment;
};

struct ProofScript {
  std::vector<std::string> header;
  std::vector<std::string> constants;
  std::vector<ProofLine> lines;

  // Index of the line with the given id, if any.
  std::optional<std::size_t> index_of(const std::string& id) const;
};

}  // namespace lpw
