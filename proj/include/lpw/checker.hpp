#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lpw/proof.hpp"
#include "lpw/registry.hpp"
#include "lpw/schemata.hpp"

namespace lpw {

enum class FailureReason { BadReference, SchemaMismatch, SideConditionViolated, VariableCondition, NotAnUnfolding };
std::string_view to_string(FailureReason r);

struct LineFailure {
  std::string line;
  FailureReason reason = FailureReason::SchemaMismatch;
  std::string detail;
};

enum class Verdict { Accepted, Rejected };

struct CheckReport {
  Verdict verdict = Verdict::Accepted;
  std::optional<LineFailure> first_failure;
  // Axiom schemata and rules (QI, QIV, EX, COMP) by number of uses.
  std::map<std::string, std::size_t> schema_usage;
  bool explosion_used = false;
  std::vector<std::string> hypotheses;
  std::size_t lines_checked = 0;

  bool accepted() const { return verdict == Verdict::Accepted; }
};

// Checks line `idx` on the assumption that earlier lines are fine. Level
// operators are expanded on every line before comparison, so A^[1] and its
// unfolding are interchangeable.
std::optional<LineFailure> check_line(const ProofScript& script, std::size_t idx, const Registry& r,
                                      const SchemaConfig& cfg = {});
std::optional<LineFailure> check_line(const ProofScript& script, const std::string& id, const Registry& r,
                                      const SchemaConfig& cfg = {});

CheckReport check_proof(const ProofScript& script, const Registry& r, const SchemaConfig& cfg = {});

// Field order is stable; keys are sorted.
std::string report_json(const CheckReport& report, int indent = 2);
std::string report_text(const CheckReport& report);

// True when no explosion step fires on a registered formula: LP15 (or its
// one-level twin) with B in the registry, or EqExplosion on a registered
// t =s t. Throws NotCheckedYet unless `report` accepted this script.
bool audit_nonexplosion(const ProofScript& script, const Registry& r, const CheckReport& report,
                        const SchemaConfig& cfg = {});

}  // namespace lpw
