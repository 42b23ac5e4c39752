#include "lpw/schemata.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>

#include "lpw/error.hpp"
#include "lpw/levels.hpp"
#include "lpw/syntax.hpp"

namespace lpw {

std::string_view to_string(Profile p) {
  switch (p) {
    case Profile::Omega: return "omega";
    case Profile::Lp1: return "lp1";
    case Profile::Ksth: return "ksth";
  }
  return "ksth";
}

Profile parse_profile(std::string_view name) {
  if (name == "omega") return Profile::Omega;
  if (name == "lp1") return Profile::Lp1;
  if (name == "ksth") return Profile::Ksth;
  throw Error(ErrorCode::UnknownName, "profile '" + std::string(name) + "'");
}

std::uint64_t default_level_cap() {
  if (const char* env = std::getenv("LPW_LEVEL_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return v;
  }
  return 32;
}

namespace {

const std::vector<std::string> kPropOmega = {"LP1",  "LP2",  "LP3",  "LP4",  "LP5",  "LP6",  "LP7",  "LP8",
                                             "LP9",  "LP10", "LP11", "LP12", "LP13", "LP14", "LP15"};
const std::vector<std::string> kPropLp1 = {"LP1", "LP2", "LP3", "LP4", "LP5",   "LP6",   "LP7",
                                           "LP8", "L1_9", "L1_10", "L1_11", "L1_12"};
const std::vector<std::string> kQuant = {"QII", "QIII", "QV", "QVI", "QVII", "QVIII"};
const std::vector<std::string> kEq = {"EIX", "EXI", "EXII", "EXIII", "EXIV", "EXV"};
const std::vector<std::string> kRules = {"QI", "QIV", "EX"};

std::vector<std::string> concat(std::initializer_list<const std::vector<std::string>*> parts) {
  std::vector<std::string> out;
  for (const auto* p : parts) out.insert(out.end(), p->begin(), p->end());
  return out;
}

bool contains(const std::vector<std::string>& v, std::string_view s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

Term var(const std::string& name) { return Term::variable(name); }

// ---------------------------------------------------------------------------
// Parameter access

struct Params {
  std::string_view schema;
  const SchemaInstance& inst;

  Formula formula(const std::string& m) const {
    auto it = inst.subst.find(m);
    if (it == inst.subst.end())
      throw Error(ErrorCode::MissingParameter, std::string(schema) + " needs a formula for " + m);
    return it->second;
  }
  Term term(const std::string& m) const {
    auto it = inst.term_subst.find(m);
    if (it == inst.term_subst.end())
      throw Error(ErrorCode::MissingParameter, std::string(schema) + " needs a term for " + m);
    return it->second;
  }
  // Bound-variable metavariables default to their own name.
  std::string bound(const std::string& m) const {
    auto it = inst.term_subst.find(m);
    if (it == inst.term_subst.end()) return m;
    if (!it->second.is_variable())
      throw Error(ErrorCode::SchemaMismatch, std::string(schema) + ": " + m + " must be a variable");
    return it->second.name;
  }
  std::optional<std::uint64_t> level() const {
    auto it = inst.level_params.find("n");
    if (it == inst.level_params.end()) return std::nullopt;
    return it->second;
  }
  std::uint64_t need_level() const {
    auto l = level();
    if (!l) throw Error(ErrorCode::MissingParameter, std::string(schema) + " needs a level n");
    return *l;
  }
};

Formula incons(const Formula& f, std::uint64_t n) { return expand_incons(f, LevelIndex::finite(n)); }
Formula cons(const Formula& f, std::uint64_t n) { return expand_cons(f, LevelIndex::finite(n)); }
// Level n - 1 where level -1 means no operator at all.
Formula incons_below(const Formula& f, std::uint64_t n) { return n == 0 ? f : incons(f, n - 1); }

Formula excluded_fourth(const Formula& a) { return mk_or(mk_or(a, mk_not(a)), mk_and(a, mk_not(a))); }

// LP14: A | !A | A^[0] | A^[1] | ... | A^[n], associated to the left.
Formula excluded_chain(const Formula& a, std::uint64_t n) {
  Formula acc = excluded_fourth(a);
  for (std::uint64_t i = 1; i <= n; ++i) acc = mk_or(acc, incons(a, i));
  return acc;
}

Formula build(std::string_view s, const SchemaInstance& inst, const SchemaConfig& cfg, bool enforce_cap) {
  Params p{s, inst};
  if (enforce_cap) {
    if (auto n = p.level(); n && *n > cfg.level_cap)
      throw Error(ErrorCode::UnsupportedLevel,
                  std::string(s) + " at n=" + std::to_string(*n) + " exceeds the level cap " +
                      std::to_string(cfg.level_cap));
  }
  auto A = [&] { return p.formula("A"); };
  auto B = [&] { return p.formula("B"); };
  auto C = [&] { return p.formula("C"); };

  if (s == "LP1") return mk_imp(A(), mk_imp(B(), A()));
  if (s == "LP2")
    return mk_imp(mk_imp(A(), B()), mk_imp(mk_imp(A(), mk_imp(B(), C())), mk_imp(A(), C())));
  if (s == "LP3") return mk_imp(A(), mk_imp(B(), mk_and(A(), B())));
  if (s == "LP4") return mk_imp(mk_and(A(), B()), A());
  if (s == "LP5") return mk_imp(mk_and(A(), B()), B());
  if (s == "LP6") return mk_imp(A(), mk_or(A(), B()));
  if (s == "LP7") return mk_imp(B(), mk_or(A(), B()));
  if (s == "LP8")
    return mk_imp(mk_imp(A(), C()), mk_imp(mk_imp(B(), C()), mk_imp(mk_or(A(), B()), C())));
  if (s == "LP9" || s == "L1_9") {
    Formula P = p.formula("P");
    return mk_and(P, mk_not(P));
  }
  if (s == "LP10") {
    Formula P = p.formula("P");
    Formula c = mk_and(P, mk_not(P));
    return mk_and(c, mk_not(c));
  }
  if (s == "LP11") return incons(p.formula("P"), p.need_level());
  if (s == "LP12" || s == "L1_10") return mk_or(A(), mk_not(A()));
  if (s == "LP13" || s == "L1_12") return excluded_fourth(A());
  if (s == "LP14") {
    std::uint64_t n = p.need_level();
    if (n < 1) throw Error(ErrorCode::SchemaMismatch, "LP14 needs n >= 1");
    return excluded_chain(expand_levels(A()), n);
  }
  if (s == "LP15" || s == "L1_11") return mk_imp(B(), mk_imp(mk_not(B()), A()));

  if (s == "QII" || s == "QIII") {
    std::string x = p.bound("x");
    Formula F = p.formula("F");
    Formula inst_f = substitute(F, x, p.term("t"));
    return s == "QII" ? mk_imp(mk_forall(x, F), inst_f) : mk_imp(inst_f, mk_exists(x, F));
  }
  if (s == "QV" || s == "QVI" || s == "QVII" || s == "QVIII") {
    std::string x = p.bound("x");
    Formula F = expand_levels(p.formula("F"));
    std::uint64_t n = p.need_level();
    if (cfg.profile == Profile::Lp1 && n != 0)
      throw Error(ErrorCode::SideConditionViolated, std::string(s) + " is fixed at n=0 in the lp1 profile");
    if (s == "QV") return mk_imp(mk_forall(x, cons(F, n)), cons(mk_forall(x, F), n));
    if (s == "QVI") return mk_forall(x, mk_imp(cons(F, n), cons(mk_exists(x, F), n)));
    if (s == "QVII")
      return mk_imp(mk_forall(x, incons(F, n)),
                    mk_and(incons_below(mk_forall(x, F), n), mk_forall(x, mk_not(incons_below(F, n)))));
    return mk_forall(x, mk_imp(incons(F, n), mk_and(incons_below(mk_exists(x, F), n),
                                                    mk_exists(x, mk_not(incons_below(F, n))))));
  }
  if (s == "EIX") {
    std::string x = p.bound("x");
    return mk_exists(x, mk_strong_eq(var(x), var(x)));
  }
  if (s == "EXI" || s == "EXIV") {
    std::string x = p.bound("x"), y = p.bound("y");
    if (x == y) throw Error(ErrorCode::SchemaMismatch, std::string(s) + " needs distinct variables x and y");
    Formula F = p.formula("F");
    Formula eq = s == "EXI" ? mk_strong_eq(var(x), var(y)) : mk_weak_eq(var(x), var(y));
    return mk_forall(x, mk_forall(y, mk_imp(eq, mk_imp(F, substitute(F, x, var(y))))));
  }
  if (s == "EXII") {
    std::string x = p.bound("x");
    Term y = var(x);
    if (cfg.profile != Profile::Lp1) {
      y = inst.term_subst.contains("y") ? p.term("y") : var("y");
      if (y == var(x)) throw Error(ErrorCode::CaptureError, "EXII: y would be captured by the binder of x");
    }
    return mk_forall(x, mk_imp(mk_not(mk_strong_eq(var(x), y)), mk_weak_eq(var(x), var(x))));
  }
  if (s == "EXIII" || s == "EXV") {
    std::uint64_t n = p.need_level();
    if (cfg.profile == Profile::Lp1 && n != 0)
      throw Error(ErrorCode::SideConditionViolated, std::string(s) + " is fixed at n=0 in the lp1 profile");
    std::string x = p.bound("x");
    if (s == "EXIII") return mk_exists(x, incons(mk_weak_eq(var(x), var(x)), n));
    std::string y = p.bound("y");
    if (x == y) throw Error(ErrorCode::SchemaMismatch, "EXV needs distinct variables x and y");
    return mk_forall(y, mk_exists(x, incons(mk_weak_eq(var(y), var(x)), n)));
  }
  if (s == "COMP") return comprehension_instance(p.formula("F"), p.bound("y"), p.bound("x"));
  if (is_rule_schema(s)) throw Error(ErrorCode::SchemaMismatch, std::string(s) + " is a rule, not an axiom");
  throw Error(ErrorCode::UnknownName, "schema '" + std::string(s) + "'");
}

// In the lp1 profile only level-1 entries make up V.
std::optional<std::uint64_t> registered(const Registry& r, const Formula& f, const SchemaConfig& cfg) {
  auto l = r.level_of(f);
  if (l && cfg.profile == Profile::Lp1 && *l != 1) return std::nullopt;
  return l;
}

// Returns a description of the violated side condition, if any.
std::optional<std::string> side_condition(std::string_view s, const SchemaInstance& inst, const Registry& r,
                                          const SchemaConfig& cfg) {
  Params p{s, inst};
  auto atom_at = [&](std::uint64_t want) -> std::optional<std::string> {
    Formula P = p.formula("P");
    auto l = registered(r, P, cfg);
    if (!P.is_atomic()) return print_formula(P) + " is not atomic";
    if (!l) return print_formula(P) + " is not registered";
    if (*l != want)
      return print_formula(P) + " has level " + std::to_string(*l) + ", not " + std::to_string(want);
    return std::nullopt;
  };
  auto not_at = [&](const Formula& a, std::uint64_t level) -> std::optional<std::string> {
    if (registered(r, a, cfg) == level) return print_formula(a) + " is in V_" + std::to_string(level);
    return std::nullopt;
  };
  if (s == "LP9" || s == "L1_9") return atom_at(1);
  if (s == "LP10") return atom_at(2);
  if (s == "LP11") {
    Formula P = p.formula("P");
    auto l = registered(r, P, cfg);
    if (!l) return print_formula(P) + " is not registered";
    if (auto n = p.level(); n && *n != *l)
      return print_formula(P) + " has level " + std::to_string(*l) + ", not " + std::to_string(*n);
    return std::nullopt;
  }
  if (s == "LP12" || s == "L1_10") return not_at(p.formula("A"), 1);
  if (s == "LP13") return not_at(p.formula("A"), 3);
  if (s == "LP14") return not_at(p.formula("A"), p.need_level() + 1);
  if (s == "LP15" || s == "L1_11") {
    Formula b = p.formula("B");
    if (auto l = registered(r, b, cfg)) return print_formula(b) + " is in V_" + std::to_string(*l);
    return std::nullopt;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Parameter extraction for matching. Each extractor reads candidate fillers
// off the formula's shape; the match is then confirmed by rebuilding.

using Extracted = std::optional<SchemaInstance>;

bool shape(const Formula& f, Kind k) { return f.is(k); }

// Term standing at the first free occurrence of `x` in `pat`, read from the
// corresponding position of `inst`.
std::optional<Term> witness(const Formula& pat, const Formula& inst, const std::string& x) {
  if (pat.kind() != inst.kind()) return std::nullopt;
  if (pat.is_atomic()) {
    auto a = pat.terms();
    auto b = inst.terms();
    if (a.size() != b.size()) return std::nullopt;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] == var(x)) return b[i];
    return std::nullopt;
  }
  if (is_quantifier(pat.kind()) && pat.symbol() == x) return std::nullopt;
  std::vector<Formula> pk = children(pat), ik = children(inst);
  for (std::size_t i = 0; i < pk.size(); ++i)
    if (auto t = witness(pk[i], ik[i], x)) return t;
  return std::nullopt;
}

SchemaInstance make(std::string_view s) {
  SchemaInstance i;
  i.schema = std::string(s);
  return i;
}

Extracted extract(std::string_view s, const Formula& f, const SchemaConfig& cfg) {
  SchemaInstance i = make(s);
  auto imp = [](const Formula& g) { return g.is(Kind::Imp); };
  if (s == "LP1" || s == "LP3") {
    if (!imp(f) || !imp(f.rhs())) return std::nullopt;
    i.subst = {{"A", f.lhs()}, {"B", f.rhs().lhs()}};
    return i;
  }
  if (s == "LP2") {
    if (!imp(f) || !imp(f.lhs()) || !imp(f.rhs()) || !imp(f.rhs().rhs())) return std::nullopt;
    i.subst = {{"A", f.lhs().lhs()}, {"B", f.lhs().rhs()}, {"C", f.rhs().rhs().rhs()}};
    return i;
  }
  if (s == "LP4" || s == "LP5") {
    if (!imp(f) || !shape(f.lhs(), Kind::And)) return std::nullopt;
    i.subst = {{"A", f.lhs().lhs()}, {"B", f.lhs().rhs()}};
    return i;
  }
  if (s == "LP6" || s == "LP7") {
    if (!imp(f) || !shape(f.rhs(), Kind::Or)) return std::nullopt;
    i.subst = {{"A", f.rhs().lhs()}, {"B", f.rhs().rhs()}};
    return i;
  }
  if (s == "LP8") {
    if (!imp(f) || !imp(f.lhs()) || !imp(f.rhs()) || !imp(f.rhs().lhs())) return std::nullopt;
    i.subst = {{"A", f.lhs().lhs()}, {"B", f.rhs().lhs().lhs()}, {"C", f.lhs().rhs()}};
    return i;
  }
  if (s == "LP9" || s == "L1_9") {
    if (!shape(f, Kind::And)) return std::nullopt;
    i.subst = {{"P", f.lhs()}};
    return i;
  }
  if (s == "LP10") {
    if (!shape(f, Kind::And) || !shape(f.lhs(), Kind::And)) return std::nullopt;
    i.subst = {{"P", f.lhs().lhs()}};
    return i;
  }
  if (s == "LP11") {
    auto d = decompose_incons(f);
    if (!d || d->second < 1) return std::nullopt;
    i.subst = {{"P", d->first}};
    i.level_params = {{"n", d->second}};
    return i;
  }
  if (s == "LP12" || s == "L1_10") {
    if (!shape(f, Kind::Or)) return std::nullopt;
    i.subst = {{"A", f.lhs()}};
    return i;
  }
  if (s == "LP13" || s == "L1_12") {
    if (!shape(f, Kind::Or) || !shape(f.lhs(), Kind::Or)) return std::nullopt;
    i.subst = {{"A", f.lhs().lhs()}};
    return i;
  }
  if (s == "LP14") {
    if (!shape(f, Kind::Or)) return std::nullopt;
    auto d = decompose_incons(f.rhs());
    if (!d || d->second < 1) return std::nullopt;
    i.subst = {{"A", d->first}};
    i.level_params = {{"n", d->second}};
    return i;
  }
  if (s == "LP15" || s == "L1_11") {
    if (!imp(f) || !imp(f.rhs())) return std::nullopt;
    i.subst = {{"A", f.rhs().rhs()}, {"B", f.lhs()}};
    return i;
  }
  if (s == "QII" || s == "QIII") {
    if (!imp(f)) return std::nullopt;
    const Formula& q = s == "QII" ? f.lhs() : f.rhs();
    const Formula& body = s == "QII" ? f.rhs() : f.lhs();
    if (!q.is(s == "QII" ? Kind::Forall : Kind::Exists)) return std::nullopt;
    const std::string& x = q.symbol();
    Term t = witness(q.operand(), body, x).value_or(var(x));
    i.subst = {{"F", q.operand()}};
    i.term_subst = {{"x", var(x)}, {"t", t}};
    return i;
  }
  if (s == "QV" || s == "QVI" || s == "QVII" || s == "QVIII") {
    // The antecedent's level expansion fixes both F and n.
    Formula lhs = f;
    std::string x;
    if (s == "QV" || s == "QVII") {
      if (!imp(f) || !f.lhs().is(Kind::Forall)) return std::nullopt;
      x = f.lhs().symbol();
      lhs = f.lhs().operand();
    } else {
      if (!f.is(Kind::Forall) || !imp(f.operand())) return std::nullopt;
      x = f.symbol();
      lhs = f.operand().lhs();
    }
    auto d = (s == "QV" || s == "QVI") ? decompose_cons(lhs) : decompose_incons(lhs);
    if (!d) return std::nullopt;
    i.subst = {{"F", d->first}};
    i.term_subst = {{"x", var(x)}};
    i.level_params = {{"n", d->second}};
    return i;
  }
  if (s == "EIX") {
    if (!f.is(Kind::Exists)) return std::nullopt;
    i.term_subst = {{"x", var(f.symbol())}};
    return i;
  }
  if (s == "EXI" || s == "EXIV") {
    if (!f.is(Kind::Forall) || !f.operand().is(Kind::Forall)) return std::nullopt;
    const Formula& body = f.operand().operand();
    if (!imp(body) || !imp(body.rhs())) return std::nullopt;
    i.subst = {{"F", body.rhs().lhs()}};
    i.term_subst = {{"x", var(f.symbol())}, {"y", var(f.operand().symbol())}};
    return i;
  }
  if (s == "EXII") {
    if (!f.is(Kind::Forall) || !imp(f.operand()) || !f.operand().lhs().is(Kind::Not) ||
        !f.operand().lhs().operand().is(Kind::StrongEq))
      return std::nullopt;
    i.term_subst = {{"x", var(f.symbol())}};
    if (cfg.profile != Profile::Lp1) i.term_subst.emplace("y", f.operand().lhs().operand().terms()[1]);
    return i;
  }
  if (s == "EXIII") {
    if (!f.is(Kind::Exists)) return std::nullopt;
    auto d = decompose_incons(f.operand());
    if (!d) return std::nullopt;
    i.term_subst = {{"x", var(f.symbol())}};
    i.level_params = {{"n", d->second}};
    return i;
  }
  if (s == "EXV") {
    if (!f.is(Kind::Forall) || !f.operand().is(Kind::Exists)) return std::nullopt;
    auto d = decompose_incons(f.operand().operand());
    if (!d) return std::nullopt;
    i.term_subst = {{"x", var(f.operand().symbol())}, {"y", var(f.symbol())}};
    i.level_params = {{"n", d->second}};
    return i;
  }
  if (s == "COMP") {
    if (!f.is(Kind::Exists) || !f.operand().is(Kind::Forall) || !f.operand().operand().is(Kind::Iff))
      return std::nullopt;
    i.subst = {{"F", f.operand().operand().rhs()}};
    i.term_subst = {{"x", var(f.operand().symbol())}, {"y", var(f.symbol())}};
    return i;
  }
  return std::nullopt;
}

MatchResult match_shape(std::string_view s, const Formula& f, const Registry& r, const SchemaConfig& cfg) {
  MatchResult out;
  auto inst = extract(s, f, cfg);
  if (!inst) return out;
  Formula built = f;
  try {
    built = build(s, *inst, cfg, false);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SideConditionViolated || e.code() == ErrorCode::FreeVariableLeak) {
      out.status = MatchStatus::SideFail;
      out.detail = e.what();
    }
    return out;
  }
  if (!(built == f)) return out;
  if (auto why = side_condition(s, *inst, r, cfg)) {
    out.status = MatchStatus::SideFail;
    out.detail = std::string(s) + ": " + *why;
    return out;
  }
  out.status = MatchStatus::Match;
  out.instance = std::move(inst);
  return out;
}

}  // namespace

const std::vector<std::string>& all_schema_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out = kPropOmega;
    for (const auto& s : kPropLp1)
      if (!contains(out, s)) out.push_back(s);
    for (const auto* part : {&kQuant, &kEq, &kRules}) out.insert(out.end(), part->begin(), part->end());
    out.push_back("COMP");
    return out;
  }();
  return ids;
}

const std::vector<std::string>& schema_order(Profile p) {
  static const std::vector<std::string> omega = concat({&kPropOmega, &kQuant, &kEq});
  static const std::vector<std::string> lp1 = concat({&kPropLp1, &kQuant, &kEq});
  static const std::vector<std::string> ksth = [] {
    auto v = concat({&kPropOmega, &kQuant, &kEq});
    v.push_back("COMP");
    return v;
  }();
  switch (p) {
    case Profile::Omega: return omega;
    case Profile::Lp1: return lp1;
    case Profile::Ksth: return ksth;
  }
  return ksth;
}

bool is_known_schema(std::string_view id) { return contains(all_schema_ids(), id); }
bool is_rule_schema(std::string_view id) { return contains(kRules, id); }

bool schema_in_profile(std::string_view id, Profile p) {
  return is_rule_schema(id) || contains(schema_order(p), id);
}

SchemaSignature signature(std::string_view s) {
  if (s == "LP1" || s == "LP3" || s == "LP4" || s == "LP5" || s == "LP6" || s == "LP7" || s == "LP15" ||
      s == "L1_11")
    return {{"A", "B"}, {}, false};
  if (s == "LP2" || s == "LP8") return {{"A", "B", "C"}, {}, false};
  if (s == "LP9" || s == "LP10" || s == "L1_9") return {{"P"}, {}, false};
  if (s == "LP11") return {{"P"}, {}, true};
  if (s == "LP12" || s == "LP13" || s == "L1_10" || s == "L1_12") return {{"A"}, {}, false};
  if (s == "LP14") return {{"A"}, {}, true};
  if (s == "QII" || s == "QIII") return {{"F"}, {"x", "t"}, false};
  if (s == "QV" || s == "QVI" || s == "QVII" || s == "QVIII") return {{"F"}, {"x"}, true};
  if (s == "EIX") return {{}, {"x"}, false};
  if (s == "EXI" || s == "EXIV") return {{"F"}, {"x", "y"}, false};
  if (s == "EXII") return {{}, {"x", "y"}, false};
  if (s == "EXIII") return {{}, {"x"}, true};
  if (s == "EXV") return {{}, {"x", "y"}, true};
  if (s == "COMP") return {{"F"}, {"x", "y"}, false};
  if (is_rule_schema(s)) return {};
  throw Error(ErrorCode::UnknownName, "schema '" + std::string(s) + "'");
}

Formula instantiate(std::string_view schema, const SchemaInstance& inst, const Registry* r,
                    const SchemaConfig& cfg) {
  if (!is_known_schema(schema)) throw Error(ErrorCode::UnknownName, "schema '" + std::string(schema) + "'");
  SchemaInstance normalized = inst;
  for (auto& [k, v] : normalized.subst) v = expand_levels(v);
  if (schema == "LP11" && !normalized.level_params.contains("n")) {
    if (!r) throw Error(ErrorCode::MissingParameter, "LP11 needs a level n or a registry");
    if (auto l = registered(*r, Params{schema, normalized}.formula("P"), cfg))
      normalized.level_params["n"] = *l;
    else
      throw Error(ErrorCode::SideConditionViolated,
                  "LP11: " + print_formula(normalized.subst.at("P")) + " is not registered");
  }
  Formula out = expand_levels(build(schema, normalized, cfg, true));
  if (r) {
    if (auto why = side_condition(schema, normalized, *r, cfg))
      throw Error(ErrorCode::SideConditionViolated, std::string(schema) + ": " + *why);
  }
  return out;
}

MatchResult match_schema(std::string_view schema, const Formula& f, const Registry& r, const SchemaConfig& cfg) {
  MatchResult out;
  if (!is_known_schema(schema)) {
    out.detail = "unknown schema " + std::string(schema);
    return out;
  }
  if (is_rule_schema(schema)) {
    out.detail = std::string(schema) + " is a rule, not an axiom";
    return out;
  }
  if (!schema_in_profile(schema, cfg.profile)) {
    out.detail = std::string(schema) + " is not part of the " + std::string(to_string(cfg.profile)) + " profile";
    return out;
  }
  Formula g = expand_levels(f);
  out = match_shape(schema, g, r, cfg);
  if (out.status == MatchStatus::Match || schema == "COMP" || !contains_kind(g, Kind::Iff)) return out;
  MatchResult unfolded = match_shape(schema, unfold_iff(g), r, cfg);
  if (unfolded.status != MatchStatus::NoMatch) return unfolded;
  return out;
}

std::optional<SchemaInstance> match_axiom(const Formula& f, const Registry& r, const SchemaConfig& cfg) {
  for (const std::string& s : schema_order(cfg.profile)) {
    MatchResult m = match_schema(s, f, r, cfg);
    if (m.status == MatchStatus::Match) return m.instance;
  }
  return std::nullopt;
}

Formula comprehension_instance(const Formula& pattern, const std::string& setvar, const std::string& memvar) {
  if (setvar == memvar) throw Error(ErrorCode::CaptureError, "comprehension needs distinct variables");
  for (const std::string& v : pattern.free_variables())
    if (v != setvar && v != memvar)
      throw Error(ErrorCode::FreeVariableLeak, "free variable " + v + " in comprehension pattern");
  return mk_exists(setvar, mk_forall(memvar, mk_iff(mk_member(var(memvar), var(setvar)), pattern)));
}

}  // namespace lpw
