#include "lpw/registry.hpp"

#include "lpw/error.hpp"
#include "lpw/syntax.hpp"

namespace lpw {

void Registry::add(const Formula& atom, std::uint64_t level) {
  if (!atom.is_atomic())
    throw Error(ErrorCode::SchemaMismatch, "only atomic formulas can be registered: " + print_formula(atom));
  if (level < 1) throw Error(ErrorCode::InvalidLevel, "levels start at 1: " + print_formula(atom));
  if (index_.contains(atom)) throw Error(ErrorCode::DuplicateAtom, print_formula(atom));
  index_.emplace(atom, level);
  entries_.emplace_back(atom, level);
}

std::optional<std::uint64_t> Registry::level_of(const Formula& f) const {
  if (!f.is_atomic()) return std::nullopt;
  auto it = index_.find(f);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Registry Registry::without(const Formula& atom) const {
  Registry out;
  for (const auto& [a, n] : entries_)
    if (!(a == atom)) out.add(a, n);
  return out;
}

}  // namespace lpw
