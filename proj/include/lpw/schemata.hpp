#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lpw/formula.hpp"
#include "lpw/registry.hpp"

namespace lpw {

// omega: the infinite-level calculus with quantifiers and equality.
// lp1:   the one-level calculus; only level-1 registry entries count and the
//        level-parameterized quantifier/equality schemata are fixed at n = 0.
// ksth:  omega plus the comprehension schema (the default).
enum class Profile { Omega, Lp1, Ksth };

std::string_view to_string(Profile p);
// Throws UnknownName.
Profile parse_profile(std::string_view name);

// Reads LPW_LEVEL_CAP, falling back to 32.
std::uint64_t default_level_cap();

struct SchemaConfig {
  Profile profile = Profile::Ksth;
  std::uint64_t level_cap = default_level_cap();
};

struct SchemaInstance {
  std::string schema;
  std::map<std::string, Formula> subst;
  std::map<std::string, std::uint64_t> level_params;
  std::map<std::string, Term> term_subst;

  friend bool operator==(const SchemaInstance&, const SchemaInstance&) = default;
};

// Every schema id the kernel knows, including the one-level variants
// L1_9..L1_12 and the rule-shaped QI, QIV and EX.
const std::vector<std::string>& all_schema_ids();
// Axiom schemata of a profile in the fixed trial order used by match_axiom.
const std::vector<std::string>& schema_order(Profile p);
bool is_known_schema(std::string_view id);
// QI, QIV and EX are inference rules handled by the checker.
bool is_rule_schema(std::string_view id);
bool schema_in_profile(std::string_view id, Profile p);

// Formula metavariables, term metavariables and level parameters a schema uses.
struct SchemaSignature {
  std::vector<std::string> formulas;
  std::vector<std::string> terms;
  bool has_level = false;
};
SchemaSignature signature(std::string_view id);

// Builds the axiom with level operators expanded. Bound-variable metavariables
// (x, y) default to the variables x and y. Side conditions are checked only
// when a registry is given. LP11 takes its level from the registry when no
// `n` is supplied.
// Throws UnknownName, MissingParameter, SideConditionViolated, UnsupportedLevel
// (level above the cap) and CaptureError.
Formula instantiate(std::string_view schema, const SchemaInstance& inst, const Registry* r = nullptr,
                    const SchemaConfig& cfg = {});

enum class MatchStatus { NoMatch, SideFail, Match };

struct MatchResult {
  MatchStatus status = MatchStatus::NoMatch;
  std::optional<SchemaInstance> instance;
  std::string detail;
};

// Tries one schema against f (level operators in f are expanded first).
// Schemata without a biconditional are also tried on unfold_iff(f).
MatchResult match_schema(std::string_view schema, const Formula& f, const Registry& r, const SchemaConfig& cfg = {});

// First schema in trial order whose template and side conditions fit.
std::optional<SchemaInstance> match_axiom(const Formula& f, const Registry& r, const SchemaConfig& cfg = {});

// exists setvar. forall memvar. memvar in setvar <-> pattern.
// Throws FreeVariableLeak if pattern has other free variables and
// CaptureError if setvar == memvar.
Formula comprehension_instance(const Formula& pattern, const std::string& setvar = "y",
                               const std::string& memvar = "x");

}  // namespace lpw
