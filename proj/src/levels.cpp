#include "lpw/levels.hpp"

#include <unordered_map>

#include "lpw/error.hpp"

namespace lpw {

namespace {

Formula cons_zero(const Formula& f) { return mk_not(mk_and(f, mk_not(f))); }
Formula incons_zero(const Formula& f) { return mk_and(f, mk_not(f)); }

// Matches !(h & !h) and returns h.
std::optional<Formula> match_cons_zero(const Formula& g) {
  if (!g.is(Kind::Not)) return std::nullopt;
  const Formula& c = g.operand();
  if (!c.is(Kind::And) || !c.rhs().is(Kind::Not) || !(c.rhs().operand() == c.lhs())) return std::nullopt;
  return c.lhs();
}

// Matches h & !h and returns h.
std::optional<Formula> match_incons_zero(const Formula& g) {
  if (!g.is(Kind::And) || !g.rhs().is(Kind::Not) || !(g.rhs().operand() == g.lhs())) return std::nullopt;
  return g.lhs();
}

}  // namespace

Formula expand_cons(const Formula& f, LevelIndex n) {
  const std::uint64_t levels = n.value();
  Formula acc = cons_zero(f);
  for (std::uint64_t i = 1; i <= levels; ++i) acc = mk_and(acc, cons_zero(acc));
  return acc;
}

Formula expand_incons(const Formula& f, LevelIndex n) {
  const std::uint64_t levels = n.value();
  Formula acc = incons_zero(f);
  for (std::uint64_t i = 1; i <= levels; ++i) acc = mk_and(acc, incons_zero(acc));
  return acc;
}

Formula expand_cons_v41(const Formula& f) { return mk_and(f, cons_zero(f)); }

namespace {

Formula expand_rec(const Formula& f, std::unordered_map<const Formula::Node*, Formula>& memo) {
  if (f.is_atomic()) return f;
  if (auto it = memo.find(f.identity()); it != memo.end()) return it->second;
  std::vector<Formula> kids = children(f);
  for (Formula& k : kids) k = expand_rec(k, memo);
  Formula out = f;
  if (f.is(Kind::ConsLevel) && f.level().is_finite()) {
    out = expand_cons(kids[0], f.level());
  } else if (f.is(Kind::InconsLevel) && f.level().is_finite()) {
    out = expand_incons(kids[0], f.level());
  } else {
    out = rebuild(f, kids);
  }
  memo.emplace(f.identity(), out);
  return out;
}

}  // namespace

Formula expand_levels(const Formula& f) {
  std::unordered_map<const Formula::Node*, Formula> memo;
  return expand_rec(f, memo);
}

std::optional<std::pair<Formula, std::uint64_t>> decompose_cons(const Formula& g) {
  Formula cur = g;
  std::uint64_t depth = 0;
  // A^(n) for n >= 1 is X & X^(0) where X = A^(n-1).
  while (cur.is(Kind::And)) {
    auto inner = match_cons_zero(cur.rhs());
    if (!inner || !(*inner == cur.lhs())) return std::nullopt;
    cur = cur.lhs();
    ++depth;
  }
  auto base = match_cons_zero(cur);
  if (!base) return std::nullopt;
  return std::make_pair(*base, depth);
}

std::optional<std::pair<Formula, std::uint64_t>> decompose_incons(const Formula& g) {
  Formula cur = g;
  std::uint64_t depth = 0;
  // A^[n] for n >= 1 is X & (X & !X); A^[0] is X & !X.
  while (cur.is(Kind::And) && cur.rhs().is(Kind::And)) {
    auto inner = match_incons_zero(cur.rhs());
    if (!inner || !(*inner == cur.lhs())) return std::nullopt;
    cur = cur.lhs();
    ++depth;
  }
  auto base = match_incons_zero(cur);
  if (!base) return std::nullopt;
  return std::make_pair(*base, depth);
}

}  // namespace lpw
