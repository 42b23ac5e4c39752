#include "lpw/formula.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "lpw/error.hpp"

namespace lpw {

std::uint64_t LevelIndex::value() const {
  if (omega_) throw Error(ErrorCode::OmegaNotExpandable, "level omega has no finite value");
  return n_;
}

bool is_atomic(Kind k) {
  return k == Kind::PropAtom || k == Kind::PredAtom || k == Kind::Member || k == Kind::StrongEq ||
         k == Kind::WeakEq;
}
bool is_binary(Kind k) { return k == Kind::And || k == Kind::Or || k == Kind::Imp || k == Kind::Iff; }
bool is_quantifier(Kind k) { return k == Kind::Forall || k == Kind::Exists; }
bool is_level_op(Kind k) { return k == Kind::ConsLevel || k == Kind::InconsLevel; }

struct Formula::Node {
  Kind kind;
  std::string symbol;
  std::vector<Term> terms;
  std::vector<Formula> kids;
  LevelIndex level = LevelIndex::finite(0);
  std::uint64_t count = 1;
  std::size_t hash = 0;
  std::vector<std::string> fv;
};

namespace {

using Node = Formula::Node;

void hash_mix(std::size_t& seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = a + b;
  return r < a ? std::numeric_limits<std::uint64_t>::max() : r;
}

Formula finish(Node n) {
  std::size_t h = std::hash<int>{}(static_cast<int>(n.kind));
  hash_mix(h, std::hash<std::string>{}(n.symbol));
  for (const Term& t : n.terms) {
    hash_mix(h, std::hash<std::string>{}(t.name));
    hash_mix(h, static_cast<std::size_t>(t.sort));
  }
  if (is_level_op(n.kind)) {
    hash_mix(h, n.level.is_omega() ? 0x5bd1e995U : std::hash<std::uint64_t>{}(n.level.value()));
  }
  std::uint64_t count = 1;
  std::vector<std::string> fv;
  for (const Term& t : n.terms)
    if (t.is_variable()) fv.push_back(t.name);
  for (const Formula& k : n.kids) {
    hash_mix(h, k.hash());
    count = sat_add(count, k.node_count());
    const auto& kfv = k.free_variables();
    fv.insert(fv.end(), kfv.begin(), kfv.end());
  }
  std::sort(fv.begin(), fv.end());
  fv.erase(std::unique(fv.begin(), fv.end()), fv.end());
  if (is_quantifier(n.kind)) std::erase(fv, n.symbol);
  n.hash = h;
  n.count = count;
  n.fv = std::move(fv);
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula make(Kind k, std::string symbol, std::vector<Term> terms, std::vector<Formula> kids,
             LevelIndex level = LevelIndex::finite(0)) {
  Node n{k, std::move(symbol), std::move(terms), std::move(kids), level, 1, 0, {}};
  return finish(std::move(n));
}

// Structural equality, memoized on node pairs so DAG-shaped expansions
// compare in time proportional to their shared size.
struct PairHash {
  std::size_t operator()(const std::pair<const Node*, const Node*>& p) const noexcept {
    std::size_t h = std::hash<const void*>{}(p.first);
    hash_mix(h, std::hash<const void*>{}(p.second));
    return h;
  }
};
using EqMemo = std::unordered_set<std::pair<const Node*, const Node*>, PairHash>;

bool shallow_equal(const Node& a, const Node& b) {
  return a.hash == b.hash && a.count == b.count && a.kind == b.kind && a.symbol == b.symbol &&
         a.terms == b.terms && a.level == b.level && a.kids.size() == b.kids.size();
}

bool deep_equal(const Formula& fa, const Formula& fb, EqMemo* memo) {
  const Node* a = fa.identity();
  const Node* b = fb.identity();
  if (a == b) return true;
  if (!shallow_equal(*a, *b)) return false;
  const bool big = a->count > 64;
  if (big) {
    if (memo == nullptr) {
      EqMemo local;
      return deep_equal(fa, fb, &local);
    }
    if (memo->contains({a, b})) return true;
  }
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (!deep_equal(a->kids[i], b->kids[i], memo)) return false;
  if (big) memo->insert({a, b});
  return true;
}

}  // namespace

Kind Formula::kind() const { return node_->kind; }
const std::string& Formula::symbol() const { return node_->symbol; }
std::span<const Term> Formula::terms() const { return node_->terms; }
const Formula& Formula::operand() const { return node_->kids.at(0); }
const Formula& Formula::lhs() const { return node_->kids.at(0); }
const Formula& Formula::rhs() const { return node_->kids.at(1); }
LevelIndex Formula::level() const { return node_->level; }
std::uint64_t Formula::node_count() const { return node_->count; }
std::size_t Formula::hash() const { return node_->hash; }
const std::vector<std::string>& Formula::free_variables() const { return node_->fv; }

bool operator==(const Formula& a, const Formula& b) { return deep_equal(a, b, nullptr); }

Formula mk_prop(std::string name) { return make(Kind::PropAtom, std::move(name), {}, {}); }
Formula mk_pred(std::string name, std::vector<Term> args) {
  return make(Kind::PredAtom, std::move(name), std::move(args), {});
}
Formula mk_member(Term element, Term collection) {
  return make(Kind::Member, "", {std::move(element), std::move(collection)}, {});
}
Formula mk_strong_eq(Term a, Term b) { return make(Kind::StrongEq, "", {std::move(a), std::move(b)}, {}); }
Formula mk_weak_eq(Term a, Term b) { return make(Kind::WeakEq, "", {std::move(a), std::move(b)}, {}); }
Formula mk_not(Formula f) { return make(Kind::Not, "", {}, {std::move(f)}); }
Formula mk_defneg(Formula f) { return make(Kind::DefNeg, "", {}, {std::move(f)}); }
Formula mk_and(Formula a, Formula b) { return make(Kind::And, "", {}, {std::move(a), std::move(b)}); }
Formula mk_or(Formula a, Formula b) { return make(Kind::Or, "", {}, {std::move(a), std::move(b)}); }
Formula mk_imp(Formula a, Formula b) { return make(Kind::Imp, "", {}, {std::move(a), std::move(b)}); }
Formula mk_iff(Formula a, Formula b) { return make(Kind::Iff, "", {}, {std::move(a), std::move(b)}); }
Formula mk_forall(std::string var, Formula body) {
  return make(Kind::Forall, std::move(var), {}, {std::move(body)});
}
Formula mk_exists(std::string var, Formula body) {
  return make(Kind::Exists, std::move(var), {}, {std::move(body)});
}
Formula mk_cons(Formula f, LevelIndex n) { return make(Kind::ConsLevel, "", {}, {std::move(f)}, n); }
Formula mk_incons(Formula f, LevelIndex n) { return make(Kind::InconsLevel, "", {}, {std::move(f)}, n); }

std::vector<Formula> children(const Formula& f) {
  std::vector<Formula> out;
  if (f.is_atomic()) return out;
  if (is_binary(f.kind())) return {f.lhs(), f.rhs()};
  return {f.operand()};
}

Formula rebuild(const Formula& f, std::span<const Formula> kids) {
  std::vector<Formula> v(kids.begin(), kids.end());
  return make(f.kind(), f.symbol(), {f.terms().begin(), f.terms().end()}, std::move(v), f.level());
}

std::set<std::string> free_vars(const Formula& f) {
  const auto& v = f.free_variables();
  return {v.begin(), v.end()};
}

bool occurs_free(const Formula& f, const std::string& var) {
  const auto& v = f.free_variables();
  return std::binary_search(v.begin(), v.end(), var);
}

namespace {

using Memo = std::unordered_map<const Node*, Formula>;

Formula subst_rec(const Formula& f, const std::string& var, const Term& t, Memo& memo) {
  if (!occurs_free(f, var)) return f;
  if (auto it = memo.find(f.identity()); it != memo.end()) return it->second;
  Formula out = f;
  if (f.is_atomic()) {
    std::vector<Term> terms(f.terms().begin(), f.terms().end());
    for (Term& x : terms)
      if (x.is_variable() && x.name == var) x = t;
    out = make(f.kind(), f.symbol(), std::move(terms), {});
  } else {
    if (is_quantifier(f.kind()) && t.is_variable() && f.symbol() == t.name) {
      throw Error(ErrorCode::CaptureError,
                  "variable '" + t.name + "' would be captured when substituting for '" + var + "'");
    }
    std::vector<Formula> kids = children(f);
    for (Formula& k : kids) k = subst_rec(k, var, t, memo);
    out = rebuild(f, kids);
  }
  memo.emplace(f.identity(), out);
  return out;
}

Formula unfold_iff_rec(const Formula& f, Memo& memo) {
  if (f.is_atomic()) return f;
  if (auto it = memo.find(f.identity()); it != memo.end()) return it->second;
  std::vector<Formula> kids = children(f);
  for (Formula& k : kids) k = unfold_iff_rec(k, memo);
  Formula out = f.is(Kind::Iff) ? mk_and(mk_imp(kids[0], kids[1]), mk_imp(kids[1], kids[0]))
                                : rebuild(f, kids);
  memo.emplace(f.identity(), out);
  return out;
}

bool contains_rec(const Formula& f, Kind k, std::unordered_set<const Node*>& seen) {
  if (f.is(k)) return true;
  if (!seen.insert(f.identity()).second) return false;
  for (const Formula& c : children(f))
    if (contains_rec(c, k, seen)) return true;
  return false;
}

struct AlphaEnv {
  std::vector<std::string> left, right;

  static long index_of(const std::vector<std::string>& stack, const std::string& name) {
    for (std::size_t i = stack.size(); i-- > 0;)
      if (stack[i] == name) return static_cast<long>(i);
    return -1;
  }

  bool same_term(const Term& a, const Term& b) const {
    if (a.sort != b.sort) return false;
    if (a.is_constant()) return a.name == b.name;
    long ia = index_of(left, a.name), ib = index_of(right, b.name);
    if (ia != ib) return false;
    return ia >= 0 || a.name == b.name;
  }
};

bool alpha_rec(const Formula& a, const Formula& b, AlphaEnv& env) {
  if (a.kind() != b.kind()) return false;
  if (a.is_atomic()) {
    if (a.symbol() != b.symbol() || a.terms().size() != b.terms().size()) return false;
    for (std::size_t i = 0; i < a.terms().size(); ++i)
      if (!env.same_term(a.terms()[i], b.terms()[i])) return false;
    return true;
  }
  if (is_level_op(a.kind()) && !(a.level() == b.level())) return false;
  if (is_quantifier(a.kind())) {
    env.left.push_back(a.symbol());
    env.right.push_back(b.symbol());
    bool ok = alpha_rec(a.operand(), b.operand(), env);
    env.left.pop_back();
    env.right.pop_back();
    return ok;
  }
  if (is_binary(a.kind())) return alpha_rec(a.lhs(), b.lhs(), env) && alpha_rec(a.rhs(), b.rhs(), env);
  return alpha_rec(a.operand(), b.operand(), env);
}

void post_order(const Formula& f, std::unordered_set<const Node*>& seen, std::unordered_set<Formula>& uniq,
                std::vector<Formula>& out) {
  if (!seen.insert(f.identity()).second) return;
  for (const Formula& c : children(f)) post_order(c, seen, uniq, out);
  if (uniq.insert(f).second) out.push_back(f);
}

}  // namespace

Formula substitute(const Formula& f, const std::string& var, const Term& t) {
  Memo memo;
  return subst_rec(f, var, t, memo);
}

Formula unfold_iff(const Formula& f) {
  Memo memo;
  return unfold_iff_rec(f, memo);
}

bool contains_kind(const Formula& f, Kind k) {
  std::unordered_set<const Node*> seen;
  return contains_rec(f, k, seen);
}

bool alpha_equal(const Formula& a, const Formula& b) {
  AlphaEnv env;
  return alpha_rec(a, b, env);
}

std::vector<Formula> subformulas(const Formula& f) {
  std::unordered_set<const Node*> seen;
  std::unordered_set<Formula> uniq;
  std::vector<Formula> out;
  post_order(f, seen, uniq, out);
  return out;
}

std::vector<Formula> atoms(const Formula& f) {
  std::vector<Formula> out;
  std::unordered_set<Formula> seen_atoms;
  std::unordered_set<const Node*> seen;
  std::vector<Formula> stack{f};
  while (!stack.empty()) {
    Formula g = stack.back();
    stack.pop_back();
    if (!seen.insert(g.identity()).second) continue;
    if (g.is_atomic()) {
      if (seen_atoms.insert(g).second) out.push_back(g);
      continue;
    }
    auto kids = children(g);
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

std::set<std::string> prop_atom_names(const Formula& f) {
  std::set<std::string> out;
  for (const Formula& a : atoms(f))
    if (a.is(Kind::PropAtom)) out.insert(a.symbol());
  return out;
}

}  // namespace lpw
