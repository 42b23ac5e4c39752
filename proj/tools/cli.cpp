#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lpw/checker.hpp"
#include "lpw/error.hpp"
#include "lpw/levels.hpp"
#include "lpw/schemata.hpp"
#include "lpw/search.hpp"
#include "lpw/settheory.hpp"
#include "lpw/syntax.hpp"

namespace lpw {

namespace {

constexpr int kOk = 0;
constexpr int kNo = 1;
constexpr int kUsage = 2;

// Usage problems raised while running a subcommand.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Registry load_registry(const std::string& path) { return path.empty() ? Registry{} : parse_registry(read_file(path)); }

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

LevelIndex parse_level_arg(const std::string& s) {
  if (s == "w") return LevelIndex::omega();
  try {
    std::size_t used = 0;
    unsigned long long v = std::stoull(s, &used);
    if (used == s.size()) return LevelIndex::finite(v);
  } catch (const std::exception&) {
  }
  throw UsageError("level must be a natural number or w, got '" + s + "'");
}

struct Common {
  std::string registry;
  std::string profile = "ksth";
  SchemaConfig config() const {
    SchemaConfig cfg;
    cfg.profile = parse_profile(profile);
    return cfg;
  }
};

int cmd_check(const std::string& path, const Common& c, bool json, std::ostream& out) {
  SchemaConfig cfg = c.config();
  ProofScript script = parse_proof(read_file(path));
  Registry r = load_registry(c.registry);
  CheckReport report = check_proof(script, r, cfg);
  if (json) {
    out << report_json(report) << '\n';
  } else {
    out << report_text(report);
    if (report.accepted()) out << "non-explosion audit: " << (audit_nonexplosion(script, r, report, cfg) ? "pass" : "fail") << '\n';
  }
  return report.accepted() ? kOk : kNo;
}

int cmd_expand(const std::string& text, const std::string& mode, const std::string& level, std::ostream& out) {
  Formula f = parse_formula(text);
  if (mode == "cons41") {
    out << print_formula(expand_cons_v41(expand_levels(f))) << '\n';
    return kOk;
  }
  LevelIndex n = parse_level_arg(level);
  if (n.is_finite() && n.value() > default_level_cap())
    throw UsageError("level " + level + " exceeds the level cap " + std::to_string(default_level_cap()));
  Formula g = expand_levels(f);
  out << print_formula(mode == "cons" ? expand_cons(g, n) : expand_incons(g, n)) << '\n';
  return kOk;
}

struct SearchArgs {
  std::string goal;
  std::size_t depth = 5;
  std::string axioms;
  std::vector<std::string> universe;
  std::vector<std::string> premises;
  std::string rules = "mp,mt";
  std::size_t timeout_ms = 10000;
  std::uint64_t max_level = 2;
};

int cmd_search(const SearchArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  SearchConfig cfg;
  cfg.schemas = c.config();
  cfg.max_depth = a.depth;
  if (!a.axioms.empty()) {
    cfg.schema_whitelist = split_list(a.axioms);
    for (const std::string& s : *cfg.schema_whitelist)
      if (!is_known_schema(s)) throw UsageError("unknown schema " + s);
  }
  for (const std::string& u : a.universe) cfg.universe.push_back(parse_formula(u));
  for (const std::string& p : a.premises) cfg.premises.push_back(parse_formula(p));
  cfg.rules = {false, false, false, false};
  for (const std::string& rule : split_list(a.rules)) {
    if (rule == "mp") cfg.rules.modus_ponens = true;
    else if (rule == "mt") cfg.rules.modus_tollens = true;
    else if (rule == "gen") cfg.rules.generalize = true;
    else if (rule == "exintro") cfg.rules.exists_intro = true;
    else throw UsageError("unknown rule " + rule + " (expected mp, mt, gen, exintro)");
  }
  cfg.time_budget = std::chrono::milliseconds(a.timeout_ms);
  cfg.max_schema_level = a.max_level;
  Formula goal = parse_formula(a.goal);
  Registry r = load_registry(c.registry);
  SearchStats stats;
  try {
    auto proof = search(goal, cfg, r, &stats);
    if (!proof) {
      err << "no proof of " << print_formula(goal) << " within " << a.depth << " lines\n";
      return kNo;
    }
    out << print_proof(*proof);
    return kOk;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BudgetExhausted) throw;
    err << e.what() << '\n';
    return kNo;
  }
}

void print_steps(const Bundle& b, std::ostream& out) {
  for (const DisplayedStep& s : b.steps) {
    auto idx = b.script.index_of(s.line);
    out << "  " << s.label << " = line " << s.line << ": " << print_formula(b.script.lines[*idx].formula) << '\n';
  }
}

int cmd_demo(const std::string& name, bool script_only, std::ostream& out) {
  SchemaConfig cfg;
  Bundle b = [&] {
    try {
      return bundled(name, cfg);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::UnknownName) throw UsageError(std::string(e.what()) + " (try thm4_3, thm4_1:<n>, nonexplosion)");
      throw;
    }
  }();
  if (script_only) {
    out << print_proof(b.script);
    return kOk;
  }
  out << print_proof(b.script) << '\n';
  if (!b.registry.empty()) out << "registry:\n" << print_registry(b.registry);
  CheckReport report = check_proof(b.script, b.registry, cfg);
  out << report_text(report);
  if (!report.accepted()) return kNo;
  out << "checked steps:\n";
  print_steps(b, out);

  if (name == "nonexplosion") {
    const std::vector<Formula> universe = {parse_formula("P"), parse_formula("A"), parse_formula("P & !P")};
    SearchConfig sc;
    sc.universe = universe;
    sc.time_budget = std::chrono::milliseconds(60000);
    sc.max_depth = 6;
    const Formula a = parse_formula("A");
    auto short_proof = search(a, sc, b.registry);
    out << "\nsearch for a fresh atom A from {P -> 1}, universe {P, A, P & !P}, at most 6 lines: "
        << (short_proof ? "found" : "none") << '\n';
    sc.max_depth = 8;
    if (auto longer = search(a, sc, b.registry)) {
      out << "the same search at most 8 lines finds A in " << longer->lines.size()
          << " lines; explosion goes through the compound P & !P, which is outside V:\n"
          << print_proof(*longer);
    }
    return short_proof ? kNo : kOk;
  }
  return kOk;
}

int cmd_parse(const std::string& text, bool expand, std::ostream& out) {
  Formula f = parse_formula(text);
  if (expand) f = expand_levels(f);
  out << print_formula(f) << '\n';
  return kOk;
}

int cmd_instantiate(const std::string& schema, const std::vector<std::string>& binds, const std::string& level,
                    const Common& c, std::ostream& out) {
  SchemaInstance inst;
  inst.schema = schema;
  for (const std::string& b : binds) {
    auto eq = b.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("binding must look like NAME=value, got '" + b + "'");
    std::string name = b.substr(0, eq), value = b.substr(eq + 1);
    if (std::islower(static_cast<unsigned char>(name[0])))
      inst.term_subst.insert_or_assign(name, parse_term(value));
    else
      inst.subst.insert_or_assign(name, parse_formula(value));
  }
  if (!level.empty()) {
    LevelIndex n = parse_level_arg(level);
    if (n.is_omega()) throw UsageError("schema levels must be finite");
    inst.level_params["n"] = n.value();
  }
  Registry r = load_registry(c.registry);
  out << print_formula(instantiate(schema, inst, c.registry.empty() ? nullptr : &r, c.config())) << '\n';
  return kOk;
}

int cmd_match(const std::string& text, const Common& c, std::ostream& out) {
  Formula f = parse_formula(text);
  Registry r = load_registry(c.registry);
  auto m = match_axiom(f, r, c.config());
  if (!m) {
    out << "no schema\n";
    return kNo;
  }
  out << m->schema;
  for (const auto& [k, v] : m->subst) out << ' ' << k << ":=" << print_formula(v);
  for (const auto& [k, v] : m->term_subst) out << ' ' << k << ":=" << print_term(v);
  for (const auto& [k, v] : m->level_params) out << ' ' << k << '=' << v;
  out << '\n';
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"lpw: proof checker for leveled paraconsistent logic and naive set theory"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub, bool with_registry) {
    if (with_registry) sub->add_option("--registry", common.registry, "registry file (default: empty)");
    sub->add_option("--profile", common.profile, "omega, lp1 or ksth")->check(CLI::IsMember({"omega", "lp1", "ksth"}));
  };

  std::string proof_path;
  bool json = false;
  auto* check = app.add_subcommand("check", "check a proof script");
  check->add_option("proof", proof_path, "proof script")->required();
  check->add_flag("--json", json, "print the report as JSON");
  add_common(check, true);

  std::string expand_text, mode = "cons", level = "0";
  auto* expand = app.add_subcommand("expand", "expand a level operator");
  expand->add_option("formula", expand_text)->required();
  expand->add_option("--mode", mode)->check(CLI::IsMember({"cons", "incons", "cons41"}));
  expand->add_option("--level", level, "natural number or w");

  SearchArgs sa;
  auto* srch = app.add_subcommand("search", "bounded proof search");
  srch->add_option("--goal", sa.goal)->required();
  srch->add_option("--depth", sa.depth, "maximum number of lines");
  srch->add_option("--axioms", sa.axioms, "comma-separated schema whitelist");
  srch->add_option("-u,--universe", sa.universe, "metavariable filler (repeatable)");
  srch->add_option("--premise", sa.premises, "hypothesis the proof may use (repeatable)");
  srch->add_option("--rules", sa.rules, "comma-separated: mp, mt, gen, exintro");
  srch->add_option("--timeout", sa.timeout_ms, "time budget in milliseconds");
  srch->add_option("--max-level", sa.max_level, "largest n tried for LP14");
  add_common(srch, true);

  std::string demo_name;
  bool script_only = false;
  auto* demo = app.add_subcommand("demo", "check a bundled derivation");
  demo->add_option("name", demo_name, "thm4_3, thm4_1:<n> or nonexplosion")->required();
  demo->add_flag("--script", script_only, "print only the proof script");

  std::string parse_text;
  bool parse_expand = false;
  auto* parse = app.add_subcommand("parse", "print a formula in canonical form");
  parse->add_option("formula", parse_text)->required();
  parse->add_flag("--expand", parse_expand, "expand finite level operators");

  std::string inst_schema, inst_level;
  std::vector<std::string> binds;
  auto* inst = app.add_subcommand("instantiate", "instantiate an axiom schema");
  inst->add_option("schema", inst_schema)->required();
  inst->add_option("--bind", binds, "NAME=value (repeatable)");
  inst->add_option("--level", inst_level);
  add_common(inst, true);

  std::string match_text;
  auto* match = app.add_subcommand("match", "find the axiom schema a formula instantiates");
  match->add_option("formula", match_text)->required();
  add_common(match, true);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << "run 'lpw --help' for usage\n";
    return kUsage;
  }

  const std::string& file = proof_path;
  try {
    if (*check) return cmd_check(proof_path, common, json, out);
    if (*expand) return cmd_expand(expand_text, mode, level, out);
    if (*srch) return cmd_search(sa, common, out, err);
    if (*demo) return cmd_demo(demo_name, script_only, out);
    if (*parse) return cmd_parse(parse_text, parse_expand, out);
    if (*inst) return cmd_instantiate(inst_schema, binds, inst_level, common, out);
    if (*match) return cmd_match(match_text, common, out);
  } catch (const ParseError& e) {
    if (!file.empty() && *check) err << file << ':';
    err << e.span().line << ':' << e.span().column << ": " << to_string(e.code()) << ": expected " << e.expected()
        << ", found " << e.found() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::SideConditionViolated ? kNo : kUsage;
  }
  return kUsage;
}

}  // namespace lpw
