#include <doctest.h>

#include "generators.hpp"
#include "instances.hpp"
#include "lpw/error.hpp"
#include "lpw/levels.hpp"
#include "lpw/schemata.hpp"
#include "lpw/syntax.hpp"
#include "naive.hpp"

using namespace lpw;

namespace {

Formula F(const char* s) { return parse_formula(s); }

Registry reg(std::initializer_list<std::pair<const char*, std::uint64_t>> entries) {
  Registry r;
  for (auto [a, n] : entries) r.add(F(a), n);
  return r;
}

SchemaInstance with(std::string s, std::map<std::string, Formula> subst, std::map<std::string, std::uint64_t> lv = {}) {
  SchemaInstance i;
  i.schema = std::move(s);
  i.subst = std::move(subst);
  i.level_params = std::move(lv);
  return i;
}

ErrorCode code_of(const auto& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error");
  return ErrorCode::UnknownName;
}

SchemaConfig profile(Profile p) {
  SchemaConfig c;
  c.profile = p;
  return c;
}

}  // namespace

TEST_CASE("registry lookups") {
  Registry r = reg({{"P", 2}});
  CHECK(level_of(r, F("P")) == 2u);
  CHECK_FALSE(level_of(r, F("P & Q")));
  CHECK_FALSE(level_of(Registry{}, F("P")));
  CHECK(r.in_vhat(F("P")));
  CHECK_FALSE(r.in_vhat(F("Q")));
  CHECK(code_of([] { Registry x; x.add(mk_prop("P"), 0); }) == ErrorCode::InvalidLevel);
  CHECK(code_of([] { Registry x; x.add(F("P & Q"), 1); }) == ErrorCode::SchemaMismatch);
  CHECK(r.without(F("P")).empty());
}

TEST_CASE("instantiation examples") {
  CHECK(instantiate("LP1", with("LP1", {{"A", F("Q")}, {"B", F("R")}})) == F("Q -> R -> Q"));
  CHECK(instantiate("LP14", with("LP14", {{"A", F("P")}}, {{"n", 1}})) ==
        mk_or(F("P | !P | P & !P"), expand_incons(F("P"), LevelIndex::finite(1))));
  CHECK(instantiate("EIX", with("EIX", {})) == F("exists x. x =s x"));
  CHECK(instantiate("LP10", with("LP10", {{"P", F("P")}})) == F("P & !P & !(P & !P)"));
  CHECK(instantiate("EXII", with("EXII", {})) == F("forall x. !(x =s y) -> x =w x"));
  CHECK(instantiate("EXII", with("EXII", {}), nullptr, profile(Profile::Lp1)) == F("forall x. !(x =s x) -> x =w x"));
  CHECK(instantiate("QVII", with("QVII", {{"F", F("x in y")}}, {{"n", 0}})) ==
        F("(forall x. x in y & !(x in y)) -> (forall x. x in y) & forall x. !(x in y)"));
  Registry q2 = reg({{"Q", 2}});
  CHECK(instantiate("LP11", with("LP11", {{"P", F("Q")}}), &q2) == expand_incons(F("Q"), LevelIndex::finite(2)));
}

TEST_CASE("instantiation errors") {
  CHECK(code_of([] { instantiate("LP1", with("LP1", {{"A", F("P")}})); }) == ErrorCode::MissingParameter);
  CHECK(code_of([] { instantiate("LP14", with("LP14", {{"A", F("P")}})); }) == ErrorCode::MissingParameter);
  CHECK(code_of([] { instantiate("LP99", with("LP99", {})); }) == ErrorCode::UnknownName);
  Registry p1 = reg({{"P", 1}});
  CHECK(code_of([&] { instantiate("LP15", with("LP15", {{"A", F("Q")}, {"B", F("P")}}), &p1); }) ==
        ErrorCode::SideConditionViolated);
  CHECK(code_of([&] { instantiate("LP12", with("LP12", {{"A", F("P")}}), &p1); }) ==
        ErrorCode::SideConditionViolated);
  SchemaConfig capped;
  capped.level_cap = 3;
  CHECK(code_of([&] { instantiate("LP14", with("LP14", {{"A", F("P")}}, {{"n", 4}}), nullptr, capped); }) ==
        ErrorCode::UnsupportedLevel);
}

TEST_CASE("match examples") {
  auto m = match_axiom(F("P & !P"), reg({{"P", 1}}));
  REQUIRE(m);
  CHECK(m->schema == "LP9");
  CHECK_FALSE(match_axiom(F("P & !P"), Registry{}));
  CHECK_FALSE(match_axiom(F("P -> !P -> A"), reg({{"P", 1}})));
  auto l11 = match_axiom(expand_incons(F("Q"), LevelIndex::finite(2)), reg({{"Q", 2}}));
  REQUIRE(l11);
  CHECK(l11->schema == "LP11");
  CHECK(l11->level_params.at("n") == 2);
  auto lp4 = match_axiom(F("(P <-> Q) -> P -> Q"), Registry{});
  REQUIRE(lp4);
  CHECK(lp4->schema == "LP4");
  CHECK(match_schema("LP15", F("P -> !P -> A"), reg({{"P", 1}})).status == MatchStatus::SideFail);
  CHECK(match_schema("LP15", F("P -> !P -> A"), Registry{}).status == MatchStatus::Match);
  CHECK(match_schema("LP15", F("P -> P -> A"), Registry{}).status == MatchStatus::NoMatch);
  // LP13 is checked against V_3 exactly as stated.
  CHECK(match_axiom(F("P | !P | P & !P"), reg({{"P", 2}})));
  CHECK_FALSE(match_axiom(F("P | !P | P & !P"), reg({{"P", 3}})));
}

TEST_CASE("comprehension instances") {
  CHECK(comprehension_instance(F("~(x in x)")) == F("exists y. forall x. x in y <-> ~(x in x)"));
  CHECK(comprehension_instance(F("x =s x")) == F("exists y. forall x. x in y <-> x =s x"));
  CHECK(code_of([] { comprehension_instance(F("x in z")); }) == ErrorCode::FreeVariableLeak);
  CHECK(code_of([] { comprehension_instance(F("x in x"), "x", "x"); }) == ErrorCode::CaptureError);
  CHECK(match_axiom(F("exists y. forall x. x in y <-> ~(x in x)"), Registry{}, profile(Profile::Ksth)));
  CHECK_FALSE(match_axiom(F("exists y. forall x. x in y <-> ~(x in x)"), Registry{}, profile(Profile::Omega)));
}

TEST_CASE("profiles") {
  CHECK(parse_profile("omega") == Profile::Omega);
  CHECK(code_of([] { parse_profile("nope"); }) == ErrorCode::UnknownName);
  for (Profile p : {Profile::Omega, Profile::Lp1, Profile::Ksth})
    for (const std::string& s : schema_order(p)) {
      CHECK(is_known_schema(s));
      CHECK_FALSE(is_rule_schema(s));
    }
  CHECK(is_rule_schema("QI"));
  CHECK(is_rule_schema("QIV"));
  CHECK(is_rule_schema("EX"));
  CHECK(schema_in_profile("L1_10", Profile::Lp1));
  CHECK_FALSE(schema_in_profile("LP15", Profile::Lp1));
  CHECK_FALSE(schema_in_profile("COMP", Profile::Omega));
  // In the one-level profile excluded middle needs no side condition beyond V_1.
  CHECK(match_axiom(F("P | !P"), reg({{"P", 2}}), profile(Profile::Lp1)));
  CHECK(code_of([] {
          instantiate("QV", with("QV", {{"F", F("x in y")}}, {{"n", 1}}), nullptr, profile(Profile::Lp1));
        }) == ErrorCode::SideConditionViolated);
}

TEST_CASE("round trip on random instances of every schema") {
  gen::Rng rng(41);
  for (Profile p : {Profile::Ksth, Profile::Lp1}) {
    SchemaConfig cfg = profile(p);
    for (const std::string& s : schema_order(p)) {
      int done = 0;
      while (done < 40) {
        auto g = gen::random_instance(rng, s, p);
        if (!g) continue;
        ++done;
        Formula f = instantiate(s, g->inst, &g->registry, cfg);
        auto m = match_axiom(f, g->registry, cfg);
        REQUIRE_MESSAGE(m, s << ": " << print_formula(f));
        CHECK_MESSAGE(m->schema == s, print_formula(f));
        CHECK(instantiate(m->schema, *m, &g->registry, cfg) == f);
        for (const auto& [k, v] : g->inst.subst) CHECK(m->subst.at(k) == expand_levels(v));
        for (const auto& [k, v] : g->inst.term_subst) CHECK(m->term_subst.at(k) == v);
        for (const auto& [k, v] : g->inst.level_params) CHECK(m->level_params.at(k) == v);
      }
    }
  }
}

TEST_CASE("propositional templates agree with the naive templates") {
  gen::Rng rng(42);
  for (int k = 1; k <= 15; ++k) {
    std::string s = "LP" + std::to_string(k);
    for (int i = 0; i < 20; ++i) {
      auto g = gen::random_instance(rng, s, Profile::Omega);
      REQUIRE(g);
      Formula f = instantiate(s, g->inst, &g->registry);
      CHECK(naive::is_axiom_instance(s, naive::from_formula(f), naive::Registered(g->registry)));
    }
  }
}

TEST_CASE("side-condition soundness on random registries") {
  gen::Rng rng(43);
  for (int i = 0; i < 400; ++i) {
    Registry r = gen::random_registry(rng);
    Formula f = gen::random_formula(rng, static_cast<int>(rng.below(5)), {.levels = true});
    Formula a = mk_prop(rng.pick(gen::kAtoms));
    for (Formula cand : {f, expand_incons(a, LevelIndex::finite(rng.below(3))), mk_or(a, mk_not(a)),
                         mk_imp(a, mk_imp(mk_not(a), f))}) {
      auto m = match_axiom(cand, r);
      if (!m) continue;
      const std::string& s = m->schema;
      if (s.rfind("LP", 0) == 0)
        CHECK(naive::is_axiom_instance(s, naive::expand(naive::from_formula(cand)), naive::Registered(r)));
      if (s == "LP9" || s == "LP10" || s == "LP11") CHECK(r.level_of(m->subst.at("P")));
      if (s == "LP12") CHECK(r.level_of(m->subst.at("A")) != 1u);
      if (s == "LP13") CHECK(r.level_of(m->subst.at("A")) != 3u);
      if (s == "LP14") CHECK(r.level_of(m->subst.at("A")) != m->level_params.at("n") + 1);
      if (s == "LP15") CHECK_FALSE(r.in_vhat(m->subst.at("B")));
    }
  }
}

TEST_CASE("match_axiom is deterministic") {
  gen::Rng rng(44);
  for (int i = 0; i < 100; ++i) {
    Formula f = gen::random_formula(rng, 4);
    Registry r = gen::random_registry(rng);
    auto a = match_axiom(f, r);
    auto b = match_axiom(f, r);
    CHECK(a == b);
  }
}
