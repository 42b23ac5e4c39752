#include "lpw/search.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "lpw/checker.hpp"
#include "lpw/error.hpp"
#include "lpw/levels.hpp"
#include "lpw/syntax.hpp"

namespace lpw {

namespace {

enum class Step { None, Hyp, Axiom, MP, MT, Gen, ExIntro };

struct Choice {
  Step step = Step::None;
  int a = -1, b = -1;  // premises: MP (minor, major), MT (implication, negation), Gen/ExIntro (premise)
  std::string label;   // schema id or quantified variable
};

class Pool {
 public:
  int intern(const Formula& f) {
    auto [it, fresh] = ids_.emplace(f, static_cast<int>(items_.size()));
    if (fresh) items_.push_back(f);
    return it->second;
  }
  int find(const Formula& f) const {
    auto it = ids_.find(f);
    return it == ids_.end() ? -1 : it->second;
  }
  const Formula& at(int i) const { return items_[static_cast<std::size_t>(i)]; }
  int size() const { return static_cast<int>(items_.size()); }

 private:
  std::vector<Formula> items_;
  std::unordered_map<Formula, int> ids_;
};

// One derivation option for a formula: the choice and the formulas it needs.
struct Option {
  Choice choice;
  std::vector<int> deps;
};

class Searcher {
 public:
  Searcher(const Formula& goal, const SearchConfig& cfg, const Registry& r)
      : cfg_(cfg), r_(r), started_(std::chrono::steady_clock::now()) {
    goal_ = expand_levels(goal);
    build_pool();
  }

  std::optional<ProofScript> run(SearchStats* stats) {
    std::optional<ProofScript> out;
    const int g = pool_.find(goal_);
    if (derivable_[static_cast<std::size_t>(g)]) {
      for (std::size_t bound = 1; bound <= cfg_.max_depth; ++bound) {
        depth_reached_ = bound;
        reset();
        add(g);
        if (dfs(0, bound)) {
          out = emit(g);
          break;
        }
      }
    } else {
      depth_reached_ = cfg_.max_depth;
    }
    if (stats) *stats = {leaves_, static_cast<std::size_t>(pool_.size()), nodes_, depth_reached_};
    return out;
  }

 private:
  // -- pool construction ----------------------------------------------------

  std::vector<std::string> whitelist() const {
    std::vector<std::string> out;
    for (const std::string& s : schema_order(cfg_.schemas.profile))
      if (!cfg_.schema_whitelist ||
          std::find(cfg_.schema_whitelist->begin(), cfg_.schema_whitelist->end(), s) !=
              cfg_.schema_whitelist->end())
        out.push_back(s);
    return out;
  }

  void add_leaf(const Formula& f, const std::string& schema) {
    int id = pool_.intern(f);
    if (leaf_.emplace(id, schema).second) ++leaves_;
  }

  void intern_closure(const Formula& f) {
    for (const Formula& s : subformulas(f)) pool_.intern(s);
  }

  void build_pool() {
    std::vector<Formula> universe;
    std::unordered_set<Formula> seen;
    auto take = [&](const Formula& f) {
      for (const Formula& s : subformulas(expand_levels(f)))
        if (seen.insert(s).second) universe.push_back(s);
    };
    if (cfg_.universe.empty())
      take(goal_);
    else
      for (const Formula& f : cfg_.universe) take(f);
    for (const Formula& p : cfg_.premises) take(p);

    // Leaves from generated instances over the universe.
    const std::vector<std::string> schemas = whitelist();
    for (const std::string& s : schemas) generate(s, universe);
    // Leaves among the universe itself, the goal and its subformulas; this
    // is where quantifier, equality and comprehension instances come from.
    std::vector<Formula> candidates = universe;
    for (const Formula& f : subformulas(goal_))
      if (!seen.contains(f)) candidates.push_back(f);
    for (const Formula& f : candidates) {
      for (const std::string& s : schemas) {
        if (match_schema(s, f, r_, cfg_.schemas).status == MatchStatus::Match) {
          add_leaf(f, s);
          break;
        }
      }
    }

    for (const Formula& p : cfg_.premises) premise_.insert(pool_.intern(expand_levels(p)));
    std::vector<Formula> roots;
    for (int i = 0; i < pool_.size(); ++i) roots.push_back(pool_.at(i));
    roots.push_back(goal_);
    for (const Formula& f : roots) intern_closure(f);

    // Premises of the quantifier rules, then the conclusions of MT.
    if (cfg_.rules.generalize || cfg_.rules.exists_intro) {
      const int n = pool_.size();
      for (int i = 0; i < n; ++i) {
        const Formula f = pool_.at(i);
        if (!f.is(Kind::Imp)) continue;
        if (cfg_.rules.generalize && f.rhs().is(Kind::Forall)) pool_.intern(mk_imp(f.lhs(), f.rhs().operand()));
        if (cfg_.rules.exists_intro && f.lhs().is(Kind::Exists)) pool_.intern(mk_imp(f.lhs().operand(), f.rhs()));
      }
    }
    if (cfg_.rules.modus_tollens) {
      const int n = pool_.size();
      for (int i = 0; i < n; ++i) {
        const Formula f = pool_.at(i);
        if (!f.is(Kind::Imp)) continue;
        pool_.intern(mk_not(f.lhs()));
        if (pool_.find(mk_defneg(f.rhs())) >= 0) pool_.intern(mk_defneg(f.lhs()));
      }
    }
    index_options();
    compute_derivable();
  }

  void generate(const std::string& s, const std::vector<Formula>& universe) {
    SchemaSignature sig = signature(s);
    if (!sig.terms.empty()) return;  // quantifier and equality schemata come from matching
    std::vector<std::uint64_t> levels{0};
    if (s == "LP14") {
      levels.clear();
      for (std::uint64_t n = 1; n <= cfg_.max_schema_level; ++n) levels.push_back(n);
    }
    const std::size_t k = sig.formulas.size();
    std::vector<std::size_t> pick(k, 0);
    if (universe.empty()) return;
    while (true) {
      SchemaInstance inst;
      inst.schema = s;
      bool ok = true;
      for (std::size_t i = 0; i < k; ++i) {
        const Formula& v = universe[pick[i]];
        if (sig.formulas[i] == "P" && !v.is_atomic()) ok = false;
        inst.subst.emplace(sig.formulas[i], v);
      }
      if (ok) {
        for (std::uint64_t n : levels) {
          if (sig.has_level && s != "LP11") inst.level_params["n"] = n;
          try {
            add_leaf(instantiate(s, inst, &r_, cfg_.schemas), s);
          } catch (const Error&) {
          }
        }
      }
      std::size_t i = 0;
      while (i < k && ++pick[i] == universe.size()) pick[i++] = 0;
      if (i == k) break;
    }
  }

  void index_options() {
    const int n = pool_.size();
    options_.assign(static_cast<std::size_t>(n), {});
    for (int m = 0; m < n; ++m) {
      const Formula& f = pool_.at(m);
      if (!f.is(Kind::Imp)) continue;
      const int a = pool_.find(f.lhs());
      const int b = pool_.find(f.rhs());
      if (cfg_.rules.modus_ponens) options_[static_cast<std::size_t>(b)].push_back({{Step::MP, a, m, {}}, {a, m}});
      if (cfg_.rules.modus_tollens) {
        for (Kind k : {Kind::Not, Kind::DefNeg}) {
          const Formula negb = k == Kind::Not ? mk_not(f.rhs()) : mk_defneg(f.rhs());
          const int nb = pool_.find(negb);
          const int na = pool_.find(k == Kind::Not ? mk_not(f.lhs()) : mk_defneg(f.lhs()));
          if (nb >= 0 && na >= 0) options_[static_cast<std::size_t>(na)].push_back({{Step::MT, m, nb, {}}, {m, nb}});
        }
      }
      if (cfg_.rules.generalize && f.rhs().is(Kind::Forall) && !occurs_free(f.lhs(), f.rhs().symbol())) {
        const int p = pool_.find(mk_imp(f.lhs(), f.rhs().operand()));
        if (p >= 0) options_[static_cast<std::size_t>(m)].push_back({{Step::Gen, p, -1, f.rhs().symbol()}, {p}});
      }
      if (cfg_.rules.exists_intro && f.lhs().is(Kind::Exists) && !occurs_free(f.rhs(), f.lhs().symbol())) {
        const int p = pool_.find(mk_imp(f.lhs().operand(), f.rhs()));
        if (p >= 0) options_[static_cast<std::size_t>(m)].push_back({{Step::ExIntro, p, -1, f.lhs().symbol()}, {p}});
      }
    }
  }

  // Forward closure ignoring the line bound; used to drop hopeless options.
  void compute_derivable() {
    const std::size_t n = static_cast<std::size_t>(pool_.size());
    derivable_.assign(n, false);
    for (const auto& [id, s] : leaf_) derivable_[static_cast<std::size_t>(id)] = true;
    for (int p : premise_) derivable_[static_cast<std::size_t>(p)] = true;
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t f = 0; f < n; ++f) {
        if (derivable_[f]) continue;
        for (const Option& o : options_[f]) {
          if (std::all_of(o.deps.begin(), o.deps.end(),
                          [&](int d) { return derivable_[static_cast<std::size_t>(d)]; })) {
            derivable_[f] = true;
            changed = true;
            break;
          }
        }
      }
    }
    for (auto& opts : options_)
      std::erase_if(opts, [&](const Option& o) {
        return !std::all_of(o.deps.begin(), o.deps.end(),
                            [&](int d) { return derivable_[static_cast<std::size_t>(d)]; });
      });
  }

  // -- search -------------------------------------------------------------------

  void reset() {
    members_.clear();
    in_proof_.assign(static_cast<std::size_t>(pool_.size()), false);
    choice_.assign(static_cast<std::size_t>(pool_.size()), Choice{});
  }

  void add(int f) {
    members_.push_back(f);
    in_proof_[static_cast<std::size_t>(f)] = true;
  }

  // Whether the justification chain of `from` already reaches `target`.
  bool reaches(int from, int target) const {
    std::vector<int> stack{from};
    std::unordered_set<int> seen;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      if (x == target) return true;
      if (!seen.insert(x).second) continue;
      const Choice& c = choice_[static_cast<std::size_t>(x)];
      if (c.a >= 0) stack.push_back(c.a);
      if (c.b >= 0) stack.push_back(c.b);
    }
    return false;
  }

  void tick() {
    if ((++nodes_ & 0xFF) == 0 && std::chrono::steady_clock::now() - started_ > cfg_.time_budget)
      throw Error(ErrorCode::BudgetExhausted, "search ran out of time at depth " + std::to_string(depth_reached_));
  }

  bool dfs(std::size_t cursor, std::size_t bound) {
    if (cursor == members_.size()) return true;
    tick();
    const int f = members_[cursor];
    Choice& slot = choice_[static_cast<std::size_t>(f)];
    // Zero-premise justifications cost nothing and dominate every other choice.
    if (auto it = leaf_.find(f); it != leaf_.end()) {
      slot = {Step::Axiom, -1, -1, it->second};
      if (dfs(cursor + 1, bound)) return true;
      slot = {};
      return false;
    }
    if (premise_.contains(f)) {
      slot = {Step::Hyp, -1, -1, {}};
      if (dfs(cursor + 1, bound)) return true;
      slot = {};
      return false;
    }
    const auto& opts = options_[static_cast<std::size_t>(f)];
    // Cheapest options first; ties keep pool order, so the result is deterministic.
    std::vector<std::pair<int, std::size_t>> order;
    for (std::size_t i = 0; i < opts.size(); ++i) {
      int fresh = 0;
      for (int d : opts[i].deps) fresh += in_proof_[static_cast<std::size_t>(d)] ? 0 : 1;
      order.emplace_back(fresh, i);
    }
    std::stable_sort(order.begin(), order.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (const auto& [fresh, i] : order) {
      if (members_.size() + static_cast<std::size_t>(fresh) > bound) break;
      const Option& o = opts[i];
      bool cyclic = false;
      for (int d : o.deps) cyclic = cyclic || reaches(d, f);
      if (cyclic) continue;
      const std::size_t mark = members_.size();
      for (int d : o.deps)
        if (!in_proof_[static_cast<std::size_t>(d)]) add(d);
      slot = o.choice;
      if (dfs(cursor + 1, bound)) return true;
      slot = {};
      while (members_.size() > mark) {
        in_proof_[static_cast<std::size_t>(members_.back())] = false;
        members_.pop_back();
      }
    }
    return false;
  }

  ProofScript emit(int goal) {
    ProofScript script;
    std::unordered_map<int, std::string> line_of;
    std::vector<std::pair<int, bool>> stack{{goal, false}};
    while (!stack.empty()) {
      auto [f, expanded] = stack.back();
      stack.pop_back();
      if (line_of.contains(f)) continue;
      const Choice& c = choice_[static_cast<std::size_t>(f)];
      if (!expanded) {
        stack.emplace_back(f, true);
        if (c.b >= 0) stack.emplace_back(c.b, false);
        if (c.a >= 0) stack.emplace_back(c.a, false);
        continue;
      }
      std::string id = std::to_string(script.lines.size() + 1);
      Justification j = Hypothesis{};
      switch (c.step) {
        case Step::Axiom: j = AxiomRef{c.label, std::nullopt, {}}; break;
        case Step::MP: j = ModusPonens{line_of.at(c.a), line_of.at(c.b)}; break;
        case Step::MT: j = ModusTollens{line_of.at(c.a), line_of.at(c.b)}; break;
        case Step::Gen: j = Generalize{line_of.at(c.a), c.label}; break;
        case Step::ExIntro: j = ExistsIntro{line_of.at(c.a), c.label}; break;
        default: break;
      }
      script.lines.push_back({id, pool_.at(f), j, script.lines.size() + 1, {}, {}});
      line_of.emplace(f, id);
    }
    CheckReport report = check_proof(script, r_, cfg_.schemas);
    if (!report.accepted())
      throw std::logic_error("search produced a proof the checker rejects at line " + report.first_failure->line +
                             ": " + report.first_failure->detail);
    return script;
  }

  const SearchConfig& cfg_;
  const Registry& r_;
  std::chrono::steady_clock::time_point started_;
  Formula goal_ = mk_prop("_");
  Pool pool_;
  std::unordered_map<int, std::string> leaf_;
  std::unordered_set<int> premise_;
  std::vector<std::vector<Option>> options_;
  std::vector<bool> derivable_;
  std::vector<int> members_;
  std::vector<bool> in_proof_;
  std::vector<Choice> choice_;
  std::size_t leaves_ = 0, nodes_ = 0, depth_reached_ = 0;
};

}  // namespace

std::optional<ProofScript> search(const Formula& goal, const SearchConfig& cfg, const Registry& r,
                                  SearchStats* stats) {
  if (cfg.max_depth == 0) return std::nullopt;
  Searcher s(goal, cfg, r);
  return s.run(stats);
}

}  // namespace lpw
