#include "lpw/checker.hpp"

#include <json.hpp>
#include <sstream>
#include <type_traits>

#include "lpw/error.hpp"
#include "lpw/levels.hpp"
#include "lpw/syntax.hpp"

namespace lpw {

std::string_view to_string(FailureReason r) {
  switch (r) {
    case FailureReason::BadReference: return "BadReference";
    case FailureReason::SchemaMismatch: return "SchemaMismatch";
    case FailureReason::SideConditionViolated: return "SideConditionViolated";
    case FailureReason::VariableCondition: return "VariableCondition";
    case FailureReason::NotAnUnfolding: return "NotAnUnfolding";
  }
  return "SchemaMismatch";
}

namespace {

struct Outcome {
  std::optional<LineFailure> failure;
  std::string usage;  // schema or rule id to count, empty for hyp/mp/mt
  bool explosion = false;
};

class LineChecker {
 public:
  LineChecker(const ProofScript& s, const Registry& r, const SchemaConfig& cfg) : s_(s), r_(r), cfg_(cfg) {
    norm_.resize(s.lines.size());
  }

  Outcome check(std::size_t idx) {
    idx_ = idx;
    return std::visit([&](const auto& j) { return run(j); }, s_.lines[idx].justification);
  }

 private:
  const Formula& norm(std::size_t i) {
    if (!norm_[i]) norm_[i] = expand_levels(s_.lines[i].formula);
    return *norm_[i];
  }
  const Formula& self() { return norm(idx_); }

  Outcome fail(FailureReason why, std::string detail) {
    return {LineFailure{s_.lines[idx_].id, why, std::move(detail)}, {}, false};
  }

  // Resolves a premise id to an earlier line.
  std::optional<std::size_t> ref(const std::string& id, Outcome& out) {
    auto i = s_.index_of(id);
    if (!i) {
      out = fail(FailureReason::BadReference, "no line " + id);
      return std::nullopt;
    }
    if (*i >= idx_) {
      out = fail(FailureReason::BadReference, "line " + id + " does not precede this line");
      return std::nullopt;
    }
    return i;
  }

  Outcome run(const Hypothesis&) { return {}; }

  Outcome run(const AxiomRef& a) {
    const std::string& s = a.schema;
    if (!is_known_schema(s)) return fail(FailureReason::SchemaMismatch, "unknown schema " + s);
    if (is_rule_schema(s)) return fail(FailureReason::SchemaMismatch, s + " is a rule, not an axiom");
    if (!schema_in_profile(s, cfg_.profile))
      return fail(FailureReason::SchemaMismatch,
                  s + " is not part of the " + std::string(to_string(cfg_.profile)) + " profile");
    Outcome ok{std::nullopt, s, s == "LP15" || s == "L1_11"};
    if (!a.bindings.empty()) {
      SchemaInstance inst;
      inst.schema = s;
      for (const auto& [name, value] : a.bindings) {
        if (std::holds_alternative<Formula>(value))
          inst.subst.insert_or_assign(name, std::get<Formula>(value));
        else
          inst.term_subst.insert_or_assign(name, std::get<Term>(value));
      }
      if (a.level) inst.level_params["n"] = *a.level;
      Formula built = self();
      try {
        built = instantiate(s, inst, &r_, cfg_);
      } catch (const Error& e) {
        switch (e.code()) {
          case ErrorCode::SideConditionViolated: return fail(FailureReason::SideConditionViolated, e.what());
          case ErrorCode::FreeVariableLeak:
          case ErrorCode::CaptureError: return fail(FailureReason::VariableCondition, e.what());
          default: return fail(FailureReason::SchemaMismatch, e.what());
        }
      }
      if (built == self() || (s != "COMP" && built == unfold_iff(self()))) return ok;
      return fail(FailureReason::SchemaMismatch, "formula is not the cited instance of " + s);
    }
    MatchResult m = match_schema(s, self(), r_, cfg_);
    if (m.status == MatchStatus::SideFail) return fail(FailureReason::SideConditionViolated, m.detail);
    if (m.status == MatchStatus::NoMatch) return fail(FailureReason::SchemaMismatch, "not an instance of " + s);
    if (a.level) {
      auto it = m.instance->level_params.find("n");
      if (it == m.instance->level_params.end() || it->second != *a.level)
        return fail(FailureReason::SchemaMismatch, "instance of " + s + " at a different level");
    }
    return ok;
  }

  Outcome run(const ModusPonens& mp) {
    Outcome out;
    auto i = ref(mp.minor, out);
    if (!i) return out;
    auto j = ref(mp.major, out);
    if (!j) return out;
    const Formula& maj = norm(*j);
    if (!maj.is(Kind::Imp) || !(maj.lhs() == norm(*i)) || !(maj.rhs() == self()))
      return fail(FailureReason::SchemaMismatch, "line " + mp.major + " is not line " + mp.minor + " -> this line");
    return {};
  }

  Outcome run(const ModusTollens& mt) {
    Outcome out;
    auto i = ref(mt.implication, out);
    if (!i) return out;
    auto j = ref(mt.negation, out);
    if (!j) return out;
    const Formula& imp = norm(*i);
    const Formula& neg = norm(*j);
    if (!imp.is(Kind::Imp)) return fail(FailureReason::SchemaMismatch, "line " + mt.implication + " is not an implication");
    const Kind k = neg.kind();
    if ((k != Kind::Not && k != Kind::DefNeg) || !(neg.operand() == imp.rhs()))
      return fail(FailureReason::SchemaMismatch, "line " + mt.negation + " does not negate the consequent");
    if (!self().is(k) || !(self().operand() == imp.lhs()))
      return fail(FailureReason::SchemaMismatch, "this line does not negate the antecedent the same way");
    return {};
  }

  Outcome run(const Generalize& g) {
    Outcome out;
    auto i = ref(g.premise, out);
    if (!i) return out;
    const Formula& p = norm(*i);
    const Formula& f = self();
    if (!p.is(Kind::Imp) || !f.is(Kind::Imp) || !f.rhs().is(Kind::Forall) || f.rhs().symbol() != g.var ||
        !(f.lhs() == p.lhs()) || !(f.rhs().operand() == p.rhs()))
      return fail(FailureReason::SchemaMismatch, "not a generalization of line " + g.premise);
    if (occurs_free(p.lhs(), g.var)) return fail(FailureReason::VariableCondition, g.var + " is free in the antecedent");
    return {std::nullopt, "QI", false};
  }

  Outcome run(const ExistsIntro& e) {
    Outcome out;
    auto i = ref(e.premise, out);
    if (!i) return out;
    const Formula& p = norm(*i);
    const Formula& f = self();
    if (!p.is(Kind::Imp) || !f.is(Kind::Imp) || !f.lhs().is(Kind::Exists) || f.lhs().symbol() != e.var ||
        !(f.lhs().operand() == p.lhs()) || !(f.rhs() == p.rhs()))
      return fail(FailureReason::SchemaMismatch, "not an existential introduction from line " + e.premise);
    if (occurs_free(p.rhs(), e.var)) return fail(FailureReason::VariableCondition, e.var + " is free in the consequent");
    return {std::nullopt, "QIV", false};
  }

  Outcome run(const EqExplosion& e) {
    Outcome out;
    auto i = ref(e.premise, out);
    if (!i) return out;
    auto d = decompose_incons(norm(*i));
    if (!d || d->second != 0 || !d->first.is(Kind::StrongEq) || !(d->first.terms()[0] == d->first.terms()[1]))
      return fail(FailureReason::SchemaMismatch, "line " + e.premise + " is not (t =s t)^[0]");
    return {std::nullopt, "EX", true};
  }

  Outcome run(const Comprehension& c) {
    if (cfg_.profile != Profile::Ksth) return fail(FailureReason::SchemaMismatch, "comprehension needs the ksth profile");
    const Formula& f = self();
    if (!f.is(Kind::Exists) || !f.operand().is(Kind::Forall))
      return fail(FailureReason::SchemaMismatch, "not a comprehension axiom");
    try {
      Formula want = comprehension_instance(expand_levels(c.pattern), f.symbol(), f.operand().symbol());
      if (!(want == f)) return fail(FailureReason::SchemaMismatch, "not the comprehension axiom for this pattern");
    } catch (const Error& e) {
      return fail(FailureReason::VariableCondition, e.what());
    }
    return {std::nullopt, "COMP", false};
  }

  Outcome run(const DefNegUnfold& d) {
    Outcome out;
    auto i = ref(d.premise, out);
    if (!i) return out;
    if (differences(norm(*i), self()) != 1)
      return fail(FailureReason::NotAnUnfolding, "not a single unfolding of ~ in line " + d.premise);
    return {};
  }

  // forall u. forall v. u in v & u =s v, for distinct variables u, v.
  static bool is_absurdity(const Formula& k) {
    if (!k.is(Kind::Forall) || !k.operand().is(Kind::Forall)) return false;
    const std::string& u = k.symbol();
    const std::string& v = k.operand().symbol();
    const Formula& b = k.operand().operand();
    if (u == v || !b.is(Kind::And) || !b.lhs().is(Kind::Member) || !b.rhs().is(Kind::StrongEq)) return false;
    const Term tu = Term::variable(u), tv = Term::variable(v);
    return b.lhs().terms()[0] == tu && b.lhs().terms()[1] == tv && b.rhs().terms()[0] == tu &&
           b.rhs().terms()[1] == tv;
  }

  static bool unfolds_to(const Formula& neg, const Formula& imp) {
    return neg.is(Kind::DefNeg) && imp.is(Kind::Imp) && imp.lhs() == neg.operand() && is_absurdity(imp.rhs());
  }

  // Number of positions where a and b differ by one ~ unfolding, capped at 2;
  // any other kind of difference counts as 2.
  static int differences(const Formula& a, const Formula& b) {
    if (a == b) return 0;
    if (unfolds_to(a, b) || unfolds_to(b, a)) return 1;
    if (a.kind() != b.kind() || a.is_atomic()) return 2;
    if (is_quantifier(a.kind()) && a.symbol() != b.symbol()) return 2;
    if (is_level_op(a.kind()) && !(a.level() == b.level())) return 2;
    std::vector<Formula> ak = children(a), bk = children(b);
    int total = 0;
    for (std::size_t k = 0; k < ak.size() && total < 2; ++k) total += differences(ak[k], bk[k]);
    return std::min(total, 2);
  }

  const ProofScript& s_;
  const Registry& r_;
  const SchemaConfig& cfg_;
  std::vector<std::optional<Formula>> norm_;
  std::size_t idx_ = 0;

};

}  // namespace

std::optional<LineFailure> check_line(const ProofScript& script, std::size_t idx, const Registry& r,
                                      const SchemaConfig& cfg) {
  if (idx >= script.lines.size()) throw Error(ErrorCode::UnknownName, "no line at index " + std::to_string(idx));
  LineChecker c(script, r, cfg);
  return c.check(idx).failure;
}

std::optional<LineFailure> check_line(const ProofScript& script, const std::string& id, const Registry& r,
                                      const SchemaConfig& cfg) {
  auto idx = script.index_of(id);
  if (!idx) throw Error(ErrorCode::UnknownName, "no line " + id);
  return check_line(script, *idx, r, cfg);
}

CheckReport check_proof(const ProofScript& script, const Registry& r, const SchemaConfig& cfg) {
  CheckReport report;
  LineChecker c(script, r, cfg);
  for (std::size_t i = 0; i < script.lines.size(); ++i) {
    Outcome o = c.check(i);
    if (o.failure) {
      report.verdict = Verdict::Rejected;
      report.first_failure = std::move(o.failure);
      break;
    }
    ++report.lines_checked;
    if (!o.usage.empty()) ++report.schema_usage[o.usage];
    report.explosion_used = report.explosion_used || o.explosion;
    if (std::holds_alternative<Hypothesis>(script.lines[i].justification))
      report.hypotheses.push_back(script.lines[i].id);
  }
  return report;
}

std::string report_json(const CheckReport& report, int indent) {
  nlohmann::json j;
  j["verdict"] = report.accepted() ? "accepted" : "rejected";
  if (report.first_failure) {
    j["first_failure"] = {{"line", report.first_failure->line},
                          {"reason", std::string(to_string(report.first_failure->reason))},
                          {"detail", report.first_failure->detail}};
  } else {
    j["first_failure"] = nullptr;
  }
  j["schema_usage"] = nlohmann::json::object();
  for (const auto& [s, n] : report.schema_usage) j["schema_usage"][s] = n;
  j["explosion_used"] = report.explosion_used;
  j["hypotheses"] = report.hypotheses;
  return j.dump(indent);
}

std::string report_text(const CheckReport& report) {
  std::ostringstream out;
  if (report.accepted()) {
    out << "accepted (" << report.lines_checked << " lines)\n";
  } else {
    const LineFailure& f = *report.first_failure;
    out << "rejected at line " << f.line << ": " << to_string(f.reason);
    if (!f.detail.empty()) out << " (" << f.detail << ")";
    out << '\n';
  }
  out << "schemata:";
  if (report.schema_usage.empty()) out << " none";
  for (const auto& [s, n] : report.schema_usage) out << ' ' << s << 'x' << n;
  out << "\nexplosion used: " << (report.explosion_used ? "yes" : "no") << '\n';
  out << "hypotheses:";
  if (report.hypotheses.empty()) out << " none";
  for (const auto& h : report.hypotheses) out << ' ' << h;
  out << '\n';
  return out.str();
}

bool audit_nonexplosion(const ProofScript& script, const Registry& r, const CheckReport& report,
                        const SchemaConfig& cfg) {
  if (!report.accepted() || report.lines_checked != script.lines.size())
    throw Error(ErrorCode::NotCheckedYet, "the script has not been accepted by check_proof");
  for (const ProofLine& line : script.lines) {
    if (const auto* a = std::get_if<AxiomRef>(&line.justification); a && (a->schema == "LP15" || a->schema == "L1_11")) {
      Formula f = expand_levels(line.formula);
      MatchResult m = match_schema(a->schema, f, Registry{}, cfg);
      if (m.status != MatchStatus::Match) return false;
      if (r.in_vhat(m.instance->subst.at("B"))) return false;
    }
    if (const auto* e = std::get_if<EqExplosion>(&line.justification)) {
      auto i = script.index_of(e->premise);
      auto d = decompose_incons(expand_levels(script.lines[*i].formula));
      if (!d || r.in_vhat(d->first)) return false;
    }
  }
  return true;
}

}  // namespace lpw
