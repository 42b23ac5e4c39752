#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "lpw/formula.hpp"

namespace lpw {

// Consistency operator A^(n):  A^(0) = !(A & !A),  A^(n) = A^(n-1) & (A^(n-1))^(0).
// Throws OmegaNotExpandable for omega.
Formula expand_cons(const Formula& f, LevelIndex n);

// Inconsistency operator A^[n]:  A^[0] = A & !A,  A^[n] = A^[n-1] & (A^[n-1])^[0].
Formula expand_incons(const Formula& f, LevelIndex n);

// The alternative zero-level consistency operator A & !(A & !A).
Formula expand_cons_v41(const Formula& f);

// Expands every finite ConsLevel/InconsLevel node, innermost first.
// Omega-indexed nodes are kept (their operands are still expanded).
Formula expand_levels(const Formula& f);

// Inverse of the expansions: if g == expand_cons(base, n) returns (base, n).
// The decomposition is unique when it exists.
std::optional<std::pair<Formula, std::uint64_t>> decompose_cons(const Formula& g);
std::optional<std::pair<Formula, std::uint64_t>> decompose_incons(const Formula& g);

}  // namespace lpw
