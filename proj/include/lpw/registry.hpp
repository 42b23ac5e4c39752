#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lpw/formula.hpp"

namespace lpw {

// The designated sets V_1, V_2, ...: each registered atomic formula carries the
// single level n whose set it belongs to. Only atoms are ever registered, so
// every compound formula lies outside every V_n.
class Registry {
 public:
  // Throws InvalidLevel for level 0, DuplicateAtom for a repeated atom and
  // SchemaMismatch for a non-atomic formula.
  void add(const Formula& atom, std::uint64_t level);

  std::optional<std::uint64_t> level_of(const Formula& f) const;
  bool in_vhat(const Formula& f) const { return level_of(f).has_value(); }
  bool in_level(const Formula& f, std::uint64_t n) const { return level_of(f) == n; }

  const std::vector<std::pair<Formula, std::uint64_t>>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  Registry without(const Formula& atom) const;

 private:
  std::vector<std::pair<Formula, std::uint64_t>> entries_;
  std::unordered_map<Formula, std::uint64_t> index_;
};

inline std::optional<std::uint64_t> level_of(const Registry& r, const Formula& f) { return r.level_of(f); }

}  // namespace lpw
