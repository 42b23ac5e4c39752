#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "lpw/formula.hpp"

namespace lpw {

// Two-valued truth-table oracle for test harnesses. Finite level operators are
// expanded and <-> is read classically; quantifiers, predicates, relations,
// ~ and omega levels throw NotPropositional.
using Valuation = std::map<std::string, bool>;

inline constexpr std::size_t kMaxOracleAtoms = 24;

// Throws UnknownName if an atom has no value.
bool eval_classical(const Formula& f, const Valuation& v);

// Throws AtomLimitExceeded above kMaxOracleAtoms atoms.
bool is_tautology(const Formula& f);
bool is_satisfiable(const Formula& f);

}  // namespace lpw
