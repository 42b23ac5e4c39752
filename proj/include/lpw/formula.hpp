#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace lpw {

// Individual terms. There are no function symbols; constants exist so that
// collections such as the Russell class can be named.
struct Term {
  enum class Sort : std::uint8_t { Variable, Constant };

  Sort sort = Sort::Variable;
  std::string name;

  static Term variable(std::string name) { return {Sort::Variable, std::move(name)}; }
  static Term constant(std::string name) { return {Sort::Constant, std::move(name)}; }

  bool is_variable() const { return sort == Sort::Variable; }
  bool is_constant() const { return sort == Sort::Constant; }

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;
};

// Index of a consistency/inconsistency operator: a natural number or omega.
class LevelIndex {
 public:
  static LevelIndex finite(std::uint64_t n) { return LevelIndex(false, n); }
  static LevelIndex omega() { return LevelIndex(true, 0); }

  bool is_omega() const { return omega_; }
  bool is_finite() const { return !omega_; }
  // Throws OmegaNotExpandable for omega.
  std::uint64_t value() const;

  friend bool operator==(const LevelIndex&, const LevelIndex&) = default;

 private:
  LevelIndex(bool omega, std::uint64_t n) : omega_(omega), n_(n) {}
  bool omega_;
  std::uint64_t n_;
};

enum class Kind : std::uint8_t {
  PropAtom,
  PredAtom,
  Member,    // t1 in t2
  StrongEq,  // t1 =s t2
  WeakEq,    // t1 =w t2
  Not,       // primitive negation
  DefNeg,    // defined negation ~A
  And,
  Or,
  Imp,
  Iff,
  Forall,
  Exists,
  ConsLevel,    // A^(n)
  InconsLevel,  // A^[n]
};

bool is_atomic(Kind k);
bool is_binary(Kind k);
bool is_quantifier(Kind k);
bool is_level_op(Kind k);

// Immutable formula handle. Copies share structure; all operations that
// "modify" a formula return a new one. Nodes cache their hash, node count and
// free variables, so structurally shared (DAG-shaped) expansions stay cheap.
class Formula {
 public:
  struct Node;

  Kind kind() const;
  // Atom name for PropAtom/PredAtom, bound variable for quantifiers.
  const std::string& symbol() const;
  // Arguments of PredAtom; both sides of Member/StrongEq/WeakEq.
  std::span<const Term> terms() const;
  // Single child of Not/DefNeg/quantifiers/level operators.
  const Formula& operand() const;
  const Formula& lhs() const;
  const Formula& rhs() const;
  LevelIndex level() const;

  bool is(Kind k) const { return kind() == k; }
  bool is_atomic() const { return lpw::is_atomic(kind()); }

  // AST node count: atoms 1, unary/quantifier/level nodes 1 + operand,
  // binary nodes 1 + both operands. Saturates at UINT64_MAX.
  std::uint64_t node_count() const;
  std::size_t hash() const;
  // Sorted, duplicate-free.
  const std::vector<std::string>& free_variables() const;

  // Identity of the underlying node; equal identities imply equal formulas.
  const Node* identity() const { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

 private:
  std::shared_ptr<const Node> node_;
};

Formula mk_prop(std::string name);
Formula mk_pred(std::string name, std::vector<Term> args);
Formula mk_member(Term element, Term collection);
Formula mk_strong_eq(Term a, Term b);
Formula mk_weak_eq(Term a, Term b);
Formula mk_not(Formula f);
Formula mk_defneg(Formula f);
Formula mk_and(Formula a, Formula b);
Formula mk_or(Formula a, Formula b);
Formula mk_imp(Formula a, Formula b);
Formula mk_iff(Formula a, Formula b);
Formula mk_forall(std::string var, Formula body);
Formula mk_exists(std::string var, Formula body);
Formula mk_cons(Formula f, LevelIndex n);
Formula mk_incons(Formula f, LevelIndex n);

// Rebuilds a non-atomic node of the same kind/symbol/level over new children.
Formula rebuild(const Formula& f, std::span<const Formula> children);
std::vector<Formula> children(const Formula& f);

std::set<std::string> free_vars(const Formula& f);
bool occurs_free(const Formula& f, const std::string& var);

// Replaces every free occurrence of variable `var` by `t`.
// Throws CaptureError if `t` is a variable that a binder would capture.
Formula substitute(const Formula& f, const std::string& var, const Term& t);

// Replaces every Iff(A,B) by (A->B)&(B->A).
Formula unfold_iff(const Formula& f);
bool contains_kind(const Formula& f, Kind k);

// Equality up to renaming of bound variables. Plain operator== is literal.
bool alpha_equal(const Formula& a, const Formula& b);

// Distinct atomic subformulas in first-occurrence order.
std::vector<Formula> atoms(const Formula& f);
// Names of propositional atoms, sorted.
std::set<std::string> prop_atom_names(const Formula& f);

// Distinct subformulas (including f) in post-order.
std::vector<Formula> subformulas(const Formula& f);

}  // namespace lpw

template <>
struct std::hash<lpw::Formula> {
  std::size_t operator()(const lpw::Formula& f) const noexcept { return f.hash(); }
};
