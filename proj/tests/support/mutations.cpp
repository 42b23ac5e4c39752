#include "mutations.hpp"

#include <functional>
#include <optional>
#include <set>

#include "lpw/syntax.hpp"
#include "naive.hpp"

namespace mutate {

using lpw::Formula;
using lpw::Kind;

namespace {

std::optional<Formula> rename_first_leaf(const Formula& f) {
  if (f.is(Kind::PropAtom)) return lpw::mk_prop(f.symbol() + "z");
  if (f.is(Kind::Member) || f.is(Kind::StrongEq) || f.is(Kind::WeakEq)) {
    lpw::Term a = lpw::Term::constant("Zz"), b = f.terms()[1];
    if (f.is(Kind::Member)) return lpw::mk_member(a, b);
    if (f.is(Kind::StrongEq)) return lpw::mk_strong_eq(a, b);
    return lpw::mk_weak_eq(a, b);
  }
  if (f.is(Kind::PredAtom)) return lpw::mk_pred(f.symbol() + "z", {f.terms().begin(), f.terms().end()});
  auto kids = lpw::children(f);
  auto first = rename_first_leaf(kids[0]);
  if (!first) return std::nullopt;
  kids[0] = *first;
  return lpw::rebuild(f, kids);
}

std::optional<Formula> flip_connective(const Formula& f) {
  auto kids = lpw::children(f);
  switch (f.kind()) {
    case Kind::And: return lpw::mk_or(kids[0], kids[1]);
    case Kind::Or: return lpw::mk_and(kids[0], kids[1]);
    case Kind::Imp: return lpw::mk_and(kids[0], kids[1]);
    case Kind::Iff: return lpw::mk_imp(kids[0], kids[1]);
    case Kind::Not: return lpw::mk_defneg(kids[0]);
    case Kind::DefNeg: return lpw::mk_not(kids[0]);
    case Kind::Forall: return lpw::mk_exists(f.symbol(), kids[0]);
    case Kind::Exists: return lpw::mk_forall(f.symbol(), kids[0]);
    case Kind::ConsLevel: return lpw::mk_incons(kids[0], f.level());
    case Kind::InconsLevel: return lpw::mk_cons(kids[0], f.level());
    default: return std::nullopt;
  }
}

std::vector<std::pair<std::string, Formula>> edits(const Formula& f) {
  std::vector<std::pair<std::string, Formula>> out;
  auto kids = lpw::children(f);
  out.emplace_back("negate", lpw::mk_not(f));
  out.emplace_back("duplicate conjunct", lpw::mk_and(f, f));
  out.emplace_back("weaken by disjunct", lpw::mk_or(f, lpw::mk_prop("Zz")));
  out.emplace_back("self implication", lpw::mk_imp(f, f));
  out.emplace_back("bind vacuously", lpw::mk_forall("z", f));
  out.emplace_back("inconsistency wrapper", lpw::mk_incons(f, lpw::LevelIndex::finite(0)));
  if (auto g = rename_first_leaf(f)) out.emplace_back("rename leaf", *g);
  if (auto g = flip_connective(f)) out.emplace_back("flip connective", *g);
  if (!kids.empty()) out.emplace_back("drop to first child", kids[0]);
  if (kids.size() == 2) {
    out.emplace_back("swap sides", lpw::rebuild(f, std::vector<Formula>{kids[1], kids[0]}));
    out.emplace_back("negate left", lpw::rebuild(f, std::vector<Formula>{lpw::mk_not(kids[0]), kids[1]}));
    out.emplace_back("negate right", lpw::rebuild(f, std::vector<Formula>{kids[0], lpw::mk_not(kids[1])}));
  }
  return out;
}

bool same_formula(const Formula& a, const Formula& b) {
  return naive::same(naive::expand(naive::from_formula(a)), naive::expand(naive::from_formula(b)));
}

bool is_hypothesis(const lpw::ProofLine& l) { return std::holds_alternative<lpw::Hypothesis>(l.justification); }

// Pointers to the premise id strings inside a justification.
std::vector<std::string*> premise_slots(lpw::Justification& j) {
  return std::visit(
      [](auto& x) -> std::vector<std::string*> {
        using J = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<J, lpw::ModusPonens>) return {&x.minor, &x.major};
        else if constexpr (std::is_same_v<J, lpw::ModusTollens>) return {&x.implication, &x.negation};
        else if constexpr (std::is_same_v<J, lpw::Generalize> || std::is_same_v<J, lpw::ExistsIntro> ||
                           std::is_same_v<J, lpw::EqExplosion> || std::is_same_v<J, lpw::DefNegUnfold>)
          return {&x.premise};
        else return {};
      },
      j);
}

}  // namespace

std::vector<Mutant> formula_edits(const lpw::ProofScript& s, const lpw::Registry& r) {
  std::vector<Mutant> out;
  for (std::size_t i = 0; i < s.lines.size(); ++i) {
    if (is_hypothesis(s.lines[i])) continue;
    for (auto& [what, g] : edits(s.lines[i].formula)) {
      if (same_formula(g, s.lines[i].formula)) continue;
      Mutant m{"line " + s.lines[i].id + ": " + what, s, r};
      m.script.lines[i].formula = g;
      out.push_back(std::move(m));
    }
  }
  return out;
}

std::vector<Mutant> premise_redirects(const lpw::ProofScript& s, const lpw::Registry& r) {
  std::vector<Mutant> out;
  for (std::size_t i = 0; i < s.lines.size(); ++i) {
    lpw::Justification j = s.lines[i].justification;
    auto slots = premise_slots(j);
    for (std::size_t k = 0; k < slots.size(); ++k) {
      auto orig = s.index_of(*slots[k]);
      for (std::size_t t = 0; t < s.lines.size(); ++t) {
        if (t == i || (orig && same_formula(s.lines[t].formula, s.lines[*orig].formula))) continue;
        Mutant m{"line " + s.lines[i].id + ": premise " + std::to_string(k + 1) + " -> " + s.lines[t].id, s, r};
        *premise_slots(m.script.lines[i].justification)[k] = s.lines[t].id;
        out.push_back(std::move(m));
      }
    }
  }
  return out;
}

std::vector<Mutant> registry_removals(const lpw::ProofScript& s, const lpw::Registry& r) {
  std::vector<Mutant> out;
  for (const auto& [atom, level] : r.entries()) {
    bool needed = false;
    for (const lpw::ProofLine& l : s.lines) {
      auto* ax = std::get_if<lpw::AxiomRef>(&l.justification);
      if (!ax || (ax->schema != "LP9" && ax->schema != "LP10" && ax->schema != "LP11")) continue;
      for (const Formula& a : lpw::atoms(l.formula))
        if (a == atom) needed = true;
    }
    if (needed) out.push_back({"registry without " + lpw::print_formula(atom), s, r.without(atom)});
  }
  return out;
}

std::vector<Mutant> all(const lpw::ProofScript& s, const lpw::Registry& r) {
  std::vector<Mutant> out = formula_edits(s, r);
  for (auto* part : {&premise_redirects, &registry_removals})
    for (Mutant& m : (*part)(s, r)) out.push_back(std::move(m));
  return out;
}

}  // namespace mutate
