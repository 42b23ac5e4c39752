#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = lpw::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kRoot = LPW_SOURCE_DIR;
const std::string kEmpty = kRoot + "/registries/empty.reg";
const std::string kP1 = kRoot + "/registries/p1.reg";

std::string script(const char* stem) { return kRoot + "/scripts/" + stem + ".lpw"; }

fs::path scratch(const std::string& name, const std::string& text) {
  fs::path p = fs::temp_directory_path() / ("lpw_cli_" + name);
  std::ofstream(p) << text;
  return p;
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("check") {
  Run ok = run({"check", script("thm4_3"), "--registry", kEmpty});
  CHECK(ok.code == 0);
  CHECK(ok.out.starts_with("accepted"));
  CHECK(contains(ok.out, "non-explosion audit: pass"));

  Run no_reg = run({"check", script("nonexplosion")});
  CHECK(no_reg.code == 1);
  CHECK(run({"check", script("nonexplosion"), "--registry", kP1}).code == 0);

  fs::path broken = scratch("broken.lpw", "1: P ; hyp\n2: P -> Q ; hyp\n3: R ; mp 1 2\n");
  Run bad = run({"check", broken.string()});
  CHECK(bad.code == 1);
  CHECK(contains(bad.out, "3"));

  CHECK(run({"check", "/nonexistent/proof.lpw"}).code == 2);
  fs::path unparsable = scratch("unparsable.lpw", "1: P & ; hyp\n");
  Run pe = run({"check", unparsable.string()});
  CHECK(pe.code == 2);
  CHECK(contains(pe.err, "1:"));
  CHECK(contains(pe.err, "ParseError"));
  CHECK(run({"check"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
}

TEST_CASE("check json is valid and stable") {
  Run a = run({"check", script("thm4_3"), "--json"});
  Run b = run({"check", script("thm4_3"), "--json"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  auto j = nlohmann::json::parse(a.out);
  CHECK(j.at("verdict") == "accepted");
  CHECK(j.at("explosion_used") == false);
  CHECK(j.contains("schema_usage"));
  CHECK(j.contains("hypotheses"));
  Run r = run({"check", script("nonexplosion"), "--json"});
  CHECK(r.code == 1);
  auto k = nlohmann::json::parse(r.out);
  CHECK(k.at("verdict") == "rejected");
  CHECK(k.contains("first_failure"));
}

TEST_CASE("expand") {
  Run a = run({"expand", "--mode", "incons", "--level", "0", "P"});
  CHECK(a.code == 0);
  CHECK(a.out == "P & !P\n");
  CHECK(run({"expand", "--mode", "cons", "--level", "0", "P"}).out == "!(P & !P)\n");
  CHECK(run({"expand", "--mode", "cons", "--level", "w", "P"}).code == 2);
  CHECK(run({"expand", "--mode", "cons", "--level", "33", "P"}).code == 2);
  CHECK(run({"expand", "--mode", "cons", "--level", "1", "P &"}).code == 2);
  CHECK(run({"expand", "--mode", "sideways", "--level", "1", "P"}).code == 2);
}

TEST_CASE("search") {
  Run a = run({"search", "--goal", "A -> A", "--depth", "5"});
  CHECK(a.code == 0);
  fs::path found = scratch("found.lpw", a.out);
  Run back = run({"check", found.string()});
  CHECK(back.code == 0);
  CHECK(contains(back.out, "5 lines"));

  Run none = run({"search", "--goal", "A", "--depth", "3", "--axioms", "LP1"});
  CHECK(none.code == 1);
  CHECK(contains(none.err, "within 3 lines"));
  CHECK(run({"search", "--goal", "P | !P", "--depth", "1", "--registry", kP1, "--axioms", "LP12"}).code == 1);
  CHECK(run({"search", "--goal", "P | !P", "--depth", "1", "--axioms", "LP12"}).code == 0);
  CHECK(run({"search", "--goal", "P |", "--depth", "1"}).code == 2);
  CHECK(run({"search", "--goal", "A", "--axioms", "LP99"}).code == 2);
}

TEST_CASE("search output always rechecks") {
  struct Case {
    std::vector<std::string> args;
    std::string registry;
  };
  std::vector<Case> cases = {
      {{"--goal", "A -> A", "--depth", "5"}, ""},
      {{"--goal", "Q", "--premise", "P", "--premise", "P -> Q", "--depth", "3"}, ""},
      {{"--goal", "!P", "--premise", "P -> Q", "--premise", "!Q", "--depth", "3"}, ""},
      {{"--goal", "A", "-u", "P", "-u", "A", "-u", "P & !P", "--depth", "8"}, kP1},
      {{"--goal", "P | !P", "--depth", "1"}, ""},
  };
  for (const Case& c : cases) {
    std::vector<std::string> args = {"search"};
    args.insert(args.end(), c.args.begin(), c.args.end());
    std::vector<std::string> check = {"check"};
    if (!c.registry.empty()) {
      args.insert(args.end(), {"--registry", c.registry});
      check.insert(check.end(), {"--registry", c.registry});
    }
    Run s = run(args);
    REQUIRE_MESSAGE(s.code == 0, s.err);
    CHECK(run(args).out == s.out);
    check.push_back(scratch("recheck.lpw", s.out).string());
    CHECK(run(check).code == 0);
  }
}

TEST_CASE("demo") {
  Run a = run({"demo", "thm4_3"});
  CHECK(a.code == 0);
  for (const char* label : {"(1)", "(2)", "(3)"}) CHECK(contains(a.out, label));
  CHECK(contains(a.out, "Rt in Rt & !(Rt in Rt)"));
  CHECK(run({"demo", "thm4_1:2"}).code == 0);
  CHECK(run({"demo", "bogus"}).code == 2);
  CHECK(run({"demo", "thm4_1:x"}).code == 2);
  Run ne = run({"demo", "nonexplosion"});
  CHECK(ne.code == 0);
  CHECK(contains(ne.out, "none"));
  CHECK(run({"demo", "--script", "thm4_3"}).out == [] {
    std::ifstream in(script("thm4_3"));
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }());
}

TEST_CASE("parse, instantiate and match") {
  Run p = run({"parse", "P->(Q->P)"});
  CHECK(p.code == 0);
  CHECK(p.out == "P -> Q -> P\n");
  CHECK(run({"parse", "P^[0]", "--expand"}).out == "P & !P\n");
  CHECK(run({"parse", "P Q"}).code == 2);

  Run i = run({"instantiate", "LP1", "--bind", "A=Q", "--bind", "B=R"});
  CHECK(i.code == 0);
  CHECK(i.out == "Q -> R -> Q\n");
  CHECK(run({"instantiate", "LP12", "--bind", "A=P", "--registry", kP1}).code == 1);
  CHECK(run({"instantiate", "LP1", "--bind", "A=Q"}).code == 2);

  Run m = run({"match", "(P <-> Q) -> P -> Q"});
  CHECK(m.code == 0);
  CHECK(contains(m.out, "LP4"));
  CHECK(run({"match", "P -> Q"}).code == 1);
}
