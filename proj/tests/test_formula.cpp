#include <doctest.h>

#include "generators.hpp"
#include "lpw/error.hpp"
#include "lpw/formula.hpp"
#include "lpw/syntax.hpp"
#include "naive.hpp"

using namespace lpw;

namespace {

Formula F(const char* s) { return parse_formula(s); }
Term var(const char* n) { return Term::variable(n); }
Term cst(const char* n) { return Term::constant(n); }

}  // namespace

TEST_CASE("terms keep variables and constants apart") {
  CHECK(var("c") != cst("c"));
  CHECK(mk_member(var("c"), var("y")) != mk_member(cst("c"), var("y")));
}

TEST_CASE("equality is structural and hashing agrees") {
  Formula a = mk_and(mk_prop("P"), mk_not(mk_prop("Q")));
  Formula b = mk_and(mk_prop("P"), mk_not(mk_prop("Q")));
  CHECK(a == b);
  CHECK(a.hash() == b.hash());
  CHECK(a != mk_and(mk_prop("P"), mk_not(mk_prop("R"))));
  CHECK(mk_cons(mk_prop("P"), LevelIndex::finite(1)) != mk_incons(mk_prop("P"), LevelIndex::finite(1)));
  CHECK(mk_cons(mk_prop("P"), LevelIndex::finite(1)) != mk_cons(mk_prop("P"), LevelIndex::omega()));
  CHECK(mk_not(mk_prop("P")) != mk_defneg(mk_prop("P")));
}

TEST_CASE("node count follows the counting convention") {
  CHECK(mk_prop("P").node_count() == 1);
  CHECK(F("!P").node_count() == 2);
  CHECK(F("P & !P").node_count() == 4);
  CHECK(F("forall x. x in y").node_count() == 2);
  CHECK(mk_cons(mk_prop("P"), LevelIndex::omega()).node_count() == 2);
  gen::Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    Formula f = gen::random_formula(rng, 4, {.levels = true, .first_order = true});
    CHECK(f.node_count() == naive::count(naive::from_formula(f)));
  }
}

TEST_CASE("substitution") {
  SUBCASE("constant under a binder") {
    CHECK(substitute(F("forall y. x in y"), "x", cst("c")) == mk_forall("y", mk_member(cst("c"), var("y"))));
  }
  SUBCASE("capture is an error") {
    try {
      substitute(F("forall y. x in y"), "x", var("y"));
      FAIL("expected CaptureError");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::CaptureError);
    }
  }
  SUBCASE("direct replacement") {
    CHECK(substitute(F("x =s x"), "x", cst("c")) == mk_strong_eq(cst("c"), cst("c")));
  }
  SUBCASE("bound occurrences stay") {
    CHECK(substitute(F("x in x & forall x. x in y"), "x", var("z")) == F("z in z & forall x. x in y"));
  }
  SUBCASE("no capture when the variable is not free below the binder") {
    CHECK(substitute(F("forall y. P"), "x", var("y")) == F("forall y. P"));
  }
  SUBCASE("absent variable leaves the formula unchanged") {
    gen::Rng rng(12);
    for (int i = 0; i < 300; ++i) {
      Formula f = gen::random_formula(rng, 4, {.first_order = true});
      if (occurs_free(f, "w")) continue;
      CHECK(substitute(f, "w", var("x")) == f);
    }
  }
  SUBCASE("agrees with the naive substitution") {
    gen::Rng rng(13);
    for (int i = 0; i < 300; ++i) {
      Formula f = gen::random_formula(rng, 4, {.first_order = true});
      Term t = gen::random_term(rng);
      auto expect = naive::subst(naive::from_formula(f), "x", t);
      try {
        Formula g = substitute(f, "x", t);
        REQUIRE(expect);
        CHECK(naive::same(naive::from_formula(g), *expect));
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::CaptureError);
        CHECK_FALSE(expect);
      }
    }
  }
}

TEST_CASE("free variables") {
  CHECK(free_vars(F("forall x. x in y")) == std::set<std::string>{"y"});
  CHECK(free_vars(F("P")).empty());
  CHECK(free_vars(F("x in y & exists x. x =w z")) == std::set<std::string>{"x", "y", "z"});
  CHECK(free_vars(F("x in C")) == std::set<std::string>{"x"});
  gen::Rng rng(14);
  for (int i = 0; i < 300; ++i) {
    Formula f = gen::random_formula(rng, 4, {.first_order = true});
    auto expect = naive::free_vars(naive::from_formula(f));
    CHECK(f.free_variables() == expect);
  }
}

TEST_CASE("unfold_iff") {
  CHECK(unfold_iff(F("P <-> Q")) == F("(P -> Q) & (Q -> P)"));
  CHECK(unfold_iff(F("P -> P")) == F("P -> P"));
  CHECK(unfold_iff(F("(P <-> Q) <-> R")) ==
        F("(((P -> Q) & (Q -> P)) -> R) & (R -> ((P -> Q) & (Q -> P)))"));
  gen::Rng rng(15);
  for (int i = 0; i < 300; ++i) {
    Formula f = gen::random_formula(rng, 5, {.levels = true, .first_order = true});
    Formula g = unfold_iff(f);
    CHECK_FALSE(contains_kind(g, Kind::Iff));
    CHECK(unfold_iff(g) == g);
    CHECK(naive::same(naive::from_formula(g), naive::unfold_iff(naive::from_formula(f))));
  }
}

TEST_CASE("alpha equality renames bound variables only") {
  CHECK(alpha_equal(F("forall x. x in y"), F("forall z. z in y")));
  CHECK_FALSE(F("forall x. x in y") == F("forall z. z in y"));
  CHECK_FALSE(alpha_equal(F("forall x. x in y"), F("forall y. y in y")));
  CHECK(alpha_equal(F("forall x. exists y. x in y"), F("forall y. exists x. y in x")));
  CHECK_FALSE(alpha_equal(F("forall x. exists y. x in y"), F("forall x. exists y. y in x")));
}

TEST_CASE("atoms and subformulas") {
  Formula f = F("(P & Q) -> x in y -> P");
  auto a = atoms(f);
  REQUIRE(a.size() == 3);
  CHECK(a[0] == F("P"));
  CHECK(a[1] == F("Q"));
  CHECK(a[2] == F("x in y"));
  auto subs = subformulas(f);
  CHECK(subs.back() == f);
  CHECK(subs.size() == 6);
  CHECK(prop_atom_names(f) == std::set<std::string>{"P", "Q"});
}

TEST_CASE("rebuild and children invert each other") {
  gen::Rng rng(16);
  for (int i = 0; i < 200; ++i) {
    Formula f = gen::random_formula(rng, 3, {.levels = true, .first_order = true});
    if (f.is_atomic()) continue;
    CHECK(rebuild(f, children(f)) == f);
  }
}
