#include "lpw/settheory.hpp"

#include <charconv>
#include <unordered_map>

#include "lpw/error.hpp"
#include "lpw/levels.hpp"
#include "lpw/syntax.hpp"

namespace lpw {

Formula leveled_membership(const Term& a, const Term& b, std::uint64_t n, LevelKind kind) {
  Formula m = mk_member(a, b);
  return kind == LevelKind::Cons ? expand_cons(m, LevelIndex::finite(n)) : expand_incons(m, LevelIndex::finite(n));
}

Formula absurdity(const std::string& u, const std::string& v) {
  const Term tu = Term::variable(u), tv = Term::variable(v);
  return mk_forall(u, mk_forall(v, mk_and(mk_member(tu, tv), mk_strong_eq(tu, tv))));
}

namespace {

Formula unfold_rec(const Formula& f, const Formula& k, std::unordered_map<const Formula::Node*, Formula>& memo) {
  if (f.is_atomic()) return f;
  if (auto it = memo.find(f.identity()); it != memo.end()) return it->second;
  std::vector<Formula> kids = children(f);
  for (Formula& c : kids) c = unfold_rec(c, k, memo);
  Formula out = f.is(Kind::DefNeg) ? mk_imp(kids[0], k) : rebuild(f, kids);
  memo.emplace(f.identity(), out);
  return out;
}

}  // namespace

Formula defneg_unfold_formula(const Formula& f) {
  std::unordered_map<const Formula::Node*, Formula> memo;
  return unfold_rec(f, absurdity(), memo);
}

std::pair<CollectionDef, Formula> russell_collection(std::optional<std::uint64_t> n) {
  const Term x = Term::variable("x");
  if (!n) {
    CollectionDef def{"Rt", mk_defneg(mk_member(x, x)), std::nullopt};
    Formula axiom = mk_forall("x", mk_iff(mk_member(x, Term::constant(def.name)), def.pattern));
    return {def, axiom};
  }
  CollectionDef def{"R" + std::to_string(*n), mk_not(leveled_membership(x, x, *n, LevelKind::Incons)), n};
  Formula axiom =
      mk_forall("x", mk_iff(leveled_membership(x, Term::constant(def.name), *n, LevelKind::Incons), def.pattern));
  return {def, axiom};
}

namespace {

class Builder {
 public:
  explicit Builder(std::vector<std::string> header) { script_.header = std::move(header); }

  std::string add(const std::string& formula, Justification j, std::string comment = {},
                  std::vector<std::string> leading = {}) {
    std::string id = std::to_string(script_.lines.size() + 1);
    script_.lines.push_back(
        {id, parse_formula(formula), std::move(j), script_.lines.size() + 1, std::move(leading), std::move(comment)});
    return id;
  }

  static Justification axiom(const std::string& schema) { return AxiomRef{schema, std::nullopt, {}}; }
  static Justification mp(const std::string& minor, const std::string& major) { return ModusPonens{minor, major}; }

  ProofScript script() const {
    // Round-trip through the printer so the in-memory script equals the shipped file.
    return parse_proof(print_proof(script_));
  }

 private:
  ProofScript script_;
};

std::string imp(const std::string& a, const std::string& b) { return "(" + a + ") -> (" + b + ")"; }
std::string conj(const std::string& a, const std::string& b) { return "(" + a + ") & (" + b + ")"; }
std::string iff(const std::string& a, const std::string& b) { return "(" + a + ") <-> (" + b + ")"; }

Bundle russell_defined_negation() {
  const std::string M = "Rt in Rt";
  const std::string NM = "~(Rt in Rt)";
  const std::string K = "forall x. forall y. x in y & x =s y";
  const std::string NK = "!(" + K + ")";
  Builder b({
      "Russell collection under the defined negation ~A := A -> forall x. forall y. x in y & x =s y.",
      "Rt names the collection that comprehension yields for the pattern ~(x in x).",
      "The three displayed steps carry the comments step (1), step (2) and step (3);",
      "the other lines are auxiliary propositional steps a Hilbert-style derivation",
      "needs between them. Which auxiliary axioms were meant is not recorded anywhere,",
      "so these are one choice among many.",
  });
  b.add("exists y. forall x. x in y <-> ~(x in x)", Comprehension{parse_formula("~(x in x)")},
        "comprehension for ~(x in x)");
  const std::string def = b.add("forall x. x in Rt <-> ~(x in x)", Hypothesis{}, "Rt witnesses line 1");
  // Nothing in the calculus yields a primitive negation of the absurdity, and
  // the last step needs one for modus tollens.
  const std::string nk = b.add(NK, Hypothesis{}, "the absurdity is false");
  const std::string inst = b.add(imp("forall x. x in Rt <-> ~(x in x)", iff(M, NM)), Builder::axiom("QII"),
                                 "instantiate x by Rt");
  const std::string s1 = b.add(iff(M, NM), Builder::mp(def, inst), "step (1)");
  const std::string a1 = b.add(imp(iff(M, NM), imp(M, NM)), Builder::axiom("LP4"), "first half of the biconditional",
                               {"Biconditional elimination through the unfolding (A -> B) & (B -> A)."});
  const std::string fwd = b.add(imp(M, NM), Builder::mp(s1, a1));
  const std::string a3 = b.add(imp(iff(M, NM), imp(NM, M)), Builder::axiom("LP5"), "second half");
  const std::string back = b.add(imp(NM, M), Builder::mp(s1, a3));
  const std::string unf = b.add(imp(M, imp(M, K)), DefNegUnfold{fwd}, "unfold ~ in the consequent");
  // Identity M -> M.
  const std::string i1 = b.add(imp(M, imp(imp(M, M), M)), Builder::axiom("LP1"), {}, {"The identity Rt in Rt -> Rt in Rt."});
  const std::string i2 = b.add(imp(M, imp(M, M)), Builder::axiom("LP1"));
  const std::string i3 =
      b.add(imp(imp(M, imp(M, M)), imp(imp(M, imp(imp(M, M), M)), imp(M, M))), Builder::axiom("LP2"));
  const std::string i4 = b.add(imp(imp(M, imp(imp(M, M), M)), imp(M, M)), Builder::mp(i2, i3));
  const std::string id = b.add(imp(M, M), Builder::mp(i1, i4));
  const std::string c1 = b.add(imp(imp(M, M), imp(imp(M, imp(M, K)), imp(M, K))), Builder::axiom("LP2"),
                               "contraction", {"Contract the repeated antecedent."});
  const std::string c2 = b.add(imp(imp(M, imp(M, K)), imp(M, K)), Builder::mp(id, c1));
  const std::string mk = b.add(imp(M, K), Builder::mp(unf, c2));
  const std::string nm = b.add(NM, DefNegUnfold{mk}, "fold back into ~");
  const std::string m = b.add(M, Builder::mp(nm, back));
  const std::string p1 = b.add(imp(M, imp(NM, conj(M, NM))), Builder::axiom("LP3"));
  const std::string p2 = b.add(imp(NM, conj(M, NM)), Builder::mp(m, p1));
  const std::string s2 = b.add(conj(M, NM), Builder::mp(nm, p2), "step (2)");
  // From step (2) to the primitive contradiction; MT is used with primitive !.
  const std::string e1 = b.add(imp(conj(M, NM), NM), Builder::axiom("LP5"), {},
                               {"From step (2) to a primitive contradiction. Modus tollens is used with",
                                "primitive !, against the hypothesis on line 3."});
  const std::string e2 = b.add(NM, Builder::mp(s2, e1));
  const std::string e3 = b.add(imp(M, K), DefNegUnfold{e2});
  const std::string e4 = b.add("!(" + M + ")", ModusTollens{e3, nk});
  const std::string e5 = b.add(imp(conj(M, NM), M), Builder::axiom("LP4"));
  const std::string e6 = b.add(M, Builder::mp(s2, e5));
  const std::string e7 = b.add(imp(M, imp("!(" + M + ")", conj(M, "!(" + M + ")"))), Builder::axiom("LP3"));
  const std::string e8 = b.add(imp("!(" + M + ")", conj(M, "!(" + M + ")")), Builder::mp(e6, e7));
  const std::string s3 = b.add(conj(M, "!(" + M + ")"), Builder::mp(e4, e8), "step (3)");
  return {b.script(), Registry{}, {{"(1)", s1}, {"(2)", s2}, {"(3)", s3}}};
}

Bundle russell_leveled(std::uint64_t n, const SchemaConfig& cfg) {
  if (n > cfg.level_cap)
    throw Error(ErrorCode::UnsupportedLevel,
                "level " + std::to_string(n) + " exceeds the level cap " + std::to_string(cfg.level_cap));
  const std::string R = "R" + std::to_string(n);
  const std::string lv = "^[" + std::to_string(n) + "]";
  const std::string L = "(" + R + " in " + R + ")" + lv;
  const std::string NL = "!(" + R + " in " + R + ")" + lv;
  const std::string C = conj(L, NL);
  const std::string D = "forall x. (x in " + R + ")" + lv + " <-> !(x in x)" + lv;
  Builder b({
      "Leveled Russell collection " + R + " at level " + std::to_string(n) + ".",
      "Line 1 names the collection by its defining biconditional (taken as a hypothesis);",
      "the last line is the leveled contradiction. Negation is primitive throughout.",
  });
  const std::string def = b.add(D, Hypothesis{}, "definition of " + R);
  const std::string q = b.add(imp(D, iff(L, NL)), Builder::axiom("QII"), "instantiate x by " + R);
  const std::string bi = b.add(iff(L, NL), Builder::mp(def, q));
  const std::string a1 = b.add(imp(iff(L, NL), imp(L, NL)), Builder::axiom("LP4"));
  const std::string fwd = b.add(imp(L, NL), Builder::mp(bi, a1));
  const std::string a2 = b.add(imp(iff(L, NL), imp(NL, L)), Builder::axiom("LP5"));
  const std::string back = b.add(imp(NL, L), Builder::mp(bi, a2));
  const std::string pair = b.add(imp(L, imp(NL, C)), Builder::axiom("LP3"), {}, {"Each side yields the contradiction."});
  const std::string t1 = b.add(imp(imp(L, NL), imp(imp(L, imp(NL, C)), imp(L, C))), Builder::axiom("LP2"));
  const std::string t2 = b.add(imp(imp(L, imp(NL, C)), imp(L, C)), Builder::mp(fwd, t1));
  const std::string lc = b.add(imp(L, C), Builder::mp(pair, t2));
  const std::string w1 = b.add(imp(imp(L, C), imp(NL, imp(L, C))), Builder::axiom("LP1"));
  const std::string w2 = b.add(imp(NL, imp(L, C)), Builder::mp(lc, w1));
  const std::string w3 = b.add(imp(imp(NL, L), imp(imp(NL, imp(L, C)), imp(NL, C))), Builder::axiom("LP2"));
  const std::string w4 = b.add(imp(imp(NL, imp(L, C)), imp(NL, C)), Builder::mp(back, w3));
  const std::string nlc = b.add(imp(NL, C), Builder::mp(w2, w4));
  const std::string o1 = b.add(imp(imp(L, C), imp(imp(NL, C), imp("(" + L + ") | (" + NL + ")", C))),
                               Builder::axiom("LP8"), {}, {"Case split on excluded middle for the compound side."});
  const std::string o2 = b.add(imp(imp(NL, C), imp("(" + L + ") | (" + NL + ")", C)), Builder::mp(lc, o1));
  const std::string o3 = b.add(imp("(" + L + ") | (" + NL + ")", C), Builder::mp(nlc, o2));
  const std::string em = b.add("(" + L + ") | (" + NL + ")", Builder::axiom("LP12"), "compound, so outside V_1");
  const std::string done = b.add(C, Builder::mp(em, o3), "the leveled contradiction");
  return {b.script(), Registry{}, {{"instantiated definition", bi}, {"contradiction", done}}};
}

Bundle nonexplosion() {
  Builder b({
      "A registered atom P at level 1 is contradictory: both P and !P are derivable,",
      "and the explosion postulate is never cited.",
  });
  const std::string c = b.add("P & !P", Builder::axiom("LP9"), "P is in V_1");
  const std::string l = b.add("P & !P -> P", Builder::axiom("LP4"));
  const std::string p = b.add("P", Builder::mp(c, l));
  const std::string r = b.add("P & !P -> !P", Builder::axiom("LP5"));
  const std::string np = b.add("!P", Builder::mp(c, r));
  Registry reg;
  reg.add(mk_prop("P"), 1);
  return {b.script(), reg, {{"contradiction", c}, {"P", p}, {"!P", np}}};
}

}  // namespace

Bundle bundled(std::string_view name, const SchemaConfig& cfg) {
  if (name == "thm4_3") return russell_defined_negation();
  if (name == "nonexplosion") return nonexplosion();
  if (name.starts_with("thm4_1:")) {
    std::string_view digits = name.substr(7);
    std::uint64_t n = 0;
    auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (!digits.empty() && ec == std::errc() && p == digits.data() + digits.size()) return russell_leveled(n, cfg);
  }
  throw Error(ErrorCode::UnknownName, "no bundled script named '" + std::string(name) + "'");
}

ProofScript bundled_script(std::string_view name, const SchemaConfig& cfg) { return bundled(name, cfg).script; }

std::vector<std::pair<std::string, std::string>> shipped_scripts() {
  return {{"thm4_3", "thm4_3"},
          {"thm4_1:0", "thm4_1_0"},
          {"thm4_1:1", "thm4_1_1"},
          {"thm4_1:2", "thm4_1_2"},
          {"nonexplosion", "nonexplosion"}};
}

}  // namespace lpw
