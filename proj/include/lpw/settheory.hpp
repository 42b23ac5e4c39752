#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lpw/formula.hpp"
#include "lpw/proof.hpp"
#include "lpw/registry.hpp"
#include "lpw/schemata.hpp"

namespace lpw {

enum class LevelKind { Cons, Incons };

// (a in b)^(n) or (a in b)^[n], expanded.
Formula leveled_membership(const Term& a, const Term& b, std::uint64_t n, LevelKind kind);

// forall u. forall v. u in v & u =s v
Formula absurdity(const std::string& u = "x", const std::string& v = "y");

// Replaces every ~A by A -> forall x. forall y. x in y & x =s y. The
// absurdity is closed, so no capture can occur.
Formula defneg_unfold_formula(const Formula& f);

struct CollectionDef {
  std::string name;
  // F(x, y) with free variables among x, y.
  Formula pattern;
  std::optional<std::uint64_t> level;
};

// n given: Rn with forall x. (x in Rn)^[n] <-> !(x in x)^[n], expanded.
// n absent: Rt with forall x. x in Rt <-> ~(x in x).
std::pair<CollectionDef, Formula> russell_collection(std::optional<std::uint64_t> n);

// A line of a bundled script that corresponds to a displayed derivation step.
struct DisplayedStep {
  std::string label;
  std::string line;
};

struct Bundle {
  ProofScript script;
  Registry registry;
  std::vector<DisplayedStep> steps;
};

// Names: "thm4_3", "thm4_1:<n>", "nonexplosion".
// Throws UnknownName, and UnsupportedLevel for thm4_1 above the level cap.
Bundle bundled(std::string_view name, const SchemaConfig& cfg = {});
ProofScript bundled_script(std::string_view name, const SchemaConfig& cfg = {});

// Names of the scripts shipped as files, with their file stems.
std::vector<std::pair<std::string, std::string>> shipped_scripts();

}  // namespace lpw
