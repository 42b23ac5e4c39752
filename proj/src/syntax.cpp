#include "lpw/syntax.hpp"

#include <cctype>
#include <charconv>
#include <sstream>
#include <unordered_set>

namespace lpw {

ParseError::ParseError(SourceSpan span, std::string expected, std::string found, ErrorCode code)
    : Error(code, "line " + std::to_string(span.line) + ", column " + std::to_string(span.column) +
                      ": expected " + expected + ", found " + found),
      span_(span),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

namespace {

// ---------------------------------------------------------------------------
// Lexer

struct Token {
  enum class Type { Ident, Number, Sym, End };
  Type type = Type::End;
  std::string text;
  SourceSpan span;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Lexes one chunk of text. `first_line` is the line number of text[0].
std::vector<Token> lex(std::string_view text, std::size_t first_line = 1) {
  std::vector<Token> out;
  std::size_t line = first_line, col = 1;
  std::size_t last_line = first_line, last_col = 1;
  auto span_at = [&](std::size_t len) { return SourceSpan{line, col, len}; };
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      last_line = line;
      last_col = col;
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() &&
             (ident_char(text[j]) || (text[j] == '-' && j + 1 < text.size() && ident_start(text[j + 1]))))
        ++j;
      t = {Token::Type::Ident, std::string(text.substr(i, j - i)), span_at(j - i)};
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      t = {Token::Type::Number, std::string(text.substr(i, j - i)), span_at(j - i)};
    } else {
      static constexpr std::string_view multi[] = {"<->", "->", ":="};
      std::string_view sym;
      for (std::string_view m : multi)
        if (text.substr(i, m.size()) == m) {
          sym = m;
          break;
        }
      if (sym.empty() && c == '=' && i + 1 < text.size() && (text[i + 1] == 's' || text[i + 1] == 'w') &&
          (i + 2 >= text.size() || !ident_char(text[i + 2]))) {
        sym = text.substr(i, 2);
      }
      if (sym.empty() && std::string_view("!~&|()[]^.,:;{}=").find(c) != std::string_view::npos)
        sym = text.substr(i, 1);
      if (sym.empty()) {
        throw ParseError(span_at(1), "a token", "'" + std::string(1, c) + "'");
      }
      t = {Token::Type::Sym, std::string(sym), span_at(sym.size())};
    }
    out.push_back(t);
    advance(t.text.size());
  }
  Token end;
  end.type = Token::Type::End;
  end.text = "end of input";
  // Points at the last character so that every span lies inside the text.
  end.span = text.empty() ? SourceSpan{first_line, 1, 1} : SourceSpan{last_line, last_col, 1};
  out.push_back(end);
  return out;
}

bool is_keyword(const std::string& s) { return s == "forall" || s == "exists" || s == "in"; }
bool is_upper_ident(const std::string& s) { return !s.empty() && std::isupper(static_cast<unsigned char>(s[0])); }
bool plain_name(const std::string& s) { return s.find('-') == std::string::npos; }

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  Parser(std::vector<Token> toks, const std::set<std::string>& constants)
      : toks_(std::move(toks)), constants_(constants) {}

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at_end() const { return peek().type == Token::Type::End; }
  bool at_sym(std::string_view s, std::size_t k = 0) const {
    return peek(k).type == Token::Type::Sym && peek(k).text == s;
  }
  bool at_word(std::string_view s) const { return peek().type == Token::Type::Ident && peek().text == s; }
  Token next() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }

  [[noreturn]] void fail(const Token& t, const std::string& expected) const {
    std::string found = t.type == Token::Type::End ? t.text : "'" + t.text + "'";
    throw ParseError(t.span, expected, found);
  }

  void expect_sym(std::string_view s) {
    if (!at_sym(s)) fail(peek(), "'" + std::string(s) + "'");
    next();
  }

  void expect_end() {
    if (!at_end()) fail(peek(), "end of input");
  }

  Formula formula() {
    Formula lhs = implication();
    if (at_sym("<->")) {
      next();
      Formula rhs = implication();
      if (at_sym("<->")) fail(peek(), "parentheses around a nested '<->'");
      return mk_iff(lhs, rhs);
    }
    return lhs;
  }

  Term term() {
    const Token& t = peek();
    if (t.type != Token::Type::Ident || is_keyword(t.text) || !plain_name(t.text)) fail(t, "a term");
    next();
    if (is_upper_ident(t.text) || constants_.contains(t.text)) return Term::constant(t.text);
    return Term::variable(t.text);
  }

  std::string variable() {
    const Token& t = peek();
    if (t.type != Token::Type::Ident || is_keyword(t.text) || is_upper_ident(t.text) ||
        constants_.contains(t.text) || !plain_name(t.text))
      fail(t, "a variable");
    next();
    return t.text;
  }

  std::uint64_t number() {
    const Token& t = peek();
    std::uint64_t v = 0;
    if (t.type != Token::Type::Number) fail(t, "a number");
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || p != t.text.data() + t.text.size()) fail(t, "a number");
    next();
    return v;
  }

  std::size_t position() const { return pos_; }

 private:
  Formula implication() {
    Formula lhs = disjunction();
    if (at_sym("->")) {
      next();
      return mk_imp(lhs, implication());
    }
    return lhs;
  }

  Formula disjunction() {
    Formula acc = conjunction();
    while (at_sym("|")) {
      next();
      acc = mk_or(acc, conjunction());
    }
    return acc;
  }

  Formula conjunction() {
    Formula acc = unary();
    while (at_sym("&")) {
      next();
      acc = mk_and(acc, unary());
    }
    return acc;
  }

  Formula unary() {
    if (at_sym("!")) {
      next();
      return mk_not(unary());
    }
    if (at_sym("~")) {
      next();
      return mk_defneg(unary());
    }
    if (at_word("forall") || at_word("exists")) {
      bool all = next().text == "forall";
      std::string v = variable();
      expect_sym(".");
      Formula body = formula();
      return all ? mk_forall(v, body) : mk_exists(v, body);
    }
    return postfix();
  }

  Formula postfix() {
    bool relational = false;
    Formula f = primary(relational);
    while (at_sym("^")) {
      if (relational) fail(peek(), "parentheses around a relation before a level operator");
      next();
      bool round = at_sym("(");
      if (!round && !at_sym("[")) fail(peek(), "'(' or '['");
      next();
      LevelIndex n = LevelIndex::finite(0);
      if (at_word("w")) {
        next();
        n = LevelIndex::omega();
      } else {
        n = LevelIndex::finite(number());
      }
      expect_sym(round ? ")" : "]");
      f = round ? mk_cons(f, n) : mk_incons(f, n);
    }
    return f;
  }

  Formula primary(bool& relational) {
    if (at_sym("(")) {
      next();
      Formula f = formula();
      expect_sym(")");
      return f;
    }
    const Token& t = peek();
    if (t.type != Token::Type::Ident || is_keyword(t.text) || !plain_name(t.text)) fail(t, "a formula");
    const bool upper = is_upper_ident(t.text);
    if (upper && at_sym("(", 1)) {
      std::string name = next().text;
      next();
      std::vector<Term> args{term()};
      while (at_sym(",")) {
        next();
        args.push_back(term());
      }
      expect_sym(")");
      return mk_pred(name, std::move(args));
    }
    const Token& after = peek(1);
    const bool rel_follows = (after.type == Token::Type::Ident && after.text == "in") ||
                             (after.type == Token::Type::Sym && (after.text == "=s" || after.text == "=w"));
    if (upper && !rel_follows && !constants_.contains(t.text)) {
      next();
      return mk_prop(t.text);
    }
    Term a = term();
    relational = true;
    if (at_word("in")) {
      next();
      return mk_member(a, term());
    }
    if (at_sym("=s")) {
      next();
      return mk_strong_eq(a, term());
    }
    if (at_sym("=w")) {
      next();
      return mk_weak_eq(a, term());
    }
    fail(peek(), "'in', '=s' or '=w'");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const std::set<std::string>& constants_;
};

// ---------------------------------------------------------------------------
// Printer

int precedence(const Formula& f) {
  switch (f.kind()) {
    case Kind::Iff: return 1;
    case Kind::Imp: return 2;
    case Kind::Or: return 3;
    case Kind::And: return 4;
    case Kind::Not:
    case Kind::DefNeg: return 5;
    case Kind::ConsLevel:
    case Kind::InconsLevel: return 6;
    case Kind::Forall:
    case Kind::Exists: return 0;
    default: return 7;
  }
}

bool is_relation(const Formula& f) {
  return f.is(Kind::Member) || f.is(Kind::StrongEq) || f.is(Kind::WeakEq);
}

void print_rec(const Formula& f, bool rightmost, std::string& out);

// `min_prec` is the smallest precedence printed bare; quantifiers print bare
// only when nothing follows them.
void print_child(const Formula& c, int min_prec, bool rightmost, std::string& out) {
  bool paren = is_quantifier(c.kind()) ? !rightmost : precedence(c) < min_prec;
  if (paren) out += '(';
  print_rec(c, paren || rightmost, out);
  if (paren) out += ')';
}

void print_rec(const Formula& f, bool rightmost, std::string& out) {
  switch (f.kind()) {
    case Kind::PropAtom: out += f.symbol(); return;
    case Kind::PredAtom: {
      out += f.symbol();
      out += '(';
      for (std::size_t i = 0; i < f.terms().size(); ++i) {
        if (i) out += ", ";
        out += f.terms()[i].name;
      }
      out += ')';
      return;
    }
    case Kind::Member:
    case Kind::StrongEq:
    case Kind::WeakEq: {
      const char* op = f.is(Kind::Member) ? " in " : f.is(Kind::StrongEq) ? " =s " : " =w ";
      out += f.terms()[0].name + op + f.terms()[1].name;
      return;
    }
    case Kind::Not:
    case Kind::DefNeg: {
      out += f.is(Kind::Not) ? '!' : '~';
      const Formula& c = f.operand();
      if (is_relation(c)) {
        out += '(';
        print_rec(c, true, out);
        out += ')';
      } else {
        print_child(c, 5, rightmost, out);
      }
      return;
    }
    case Kind::And:
    case Kind::Or: {
      const int p = precedence(f);
      print_child(f.lhs(), p, false, out);
      out += f.is(Kind::And) ? " & " : " | ";
      print_child(f.rhs(), p + 1, rightmost, out);
      return;
    }
    case Kind::Imp:
      print_child(f.lhs(), 3, false, out);
      out += " -> ";
      print_child(f.rhs(), 2, rightmost, out);
      return;
    case Kind::Iff:
      print_child(f.lhs(), 2, false, out);
      out += " <-> ";
      print_child(f.rhs(), 2, rightmost, out);
      return;
    case Kind::Forall:
    case Kind::Exists:
      out += f.is(Kind::Forall) ? "forall " : "exists ";
      out += f.symbol();
      out += ". ";
      print_rec(f.operand(), true, out);
      return;
    case Kind::ConsLevel:
    case Kind::InconsLevel: {
      const Formula& c = f.operand();
      bool bare = c.is(Kind::PropAtom) || c.is(Kind::PredAtom) || is_level_op(c.kind());
      if (!bare) out += '(';
      print_rec(c, true, out);
      if (!bare) out += ')';
      out += '^';
      const bool round = f.is(Kind::ConsLevel);
      out += round ? '(' : '[';
      out += f.level().is_omega() ? std::string("w") : std::to_string(f.level().value());
      out += round ? ')' : ']';
      return;
    }
  }
}

// Splits text into physical lines, keeping 1-based line numbers.
std::vector<std::pair<std::size_t, std::string_view>> split_lines(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> out;
  std::size_t line = 1, start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '\n') {
      out.emplace_back(line++, text.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Text after an unquoted '#', trimmed; empty if none.
std::string trailing_comment(std::string_view line) {
  auto pos = line.find('#');
  if (pos == std::string_view::npos) return {};
  return std::string(trim(line.substr(pos + 1)));
}

bool is_term_metavar(const std::string& name) {
  return !name.empty() && std::islower(static_cast<unsigned char>(name[0]));
}

std::string line_id(Parser& p) {
  const Token& t = p.peek();
  if (t.type != Token::Type::Ident && t.type != Token::Type::Number) p.fail(t, "a line id");
  return p.next().text;
}

Justification parse_justification(Parser& p) {
  const Token& kw = p.peek();
  if (kw.type != Token::Type::Ident) p.fail(kw, "a justification");
  const std::string word = p.next().text;
  if (word == "hyp") return Hypothesis{};
  if (word == "mp") {
    std::string a = line_id(p);
    return ModusPonens{a, line_id(p)};
  }
  if (word == "mt") {
    std::string a = line_id(p);
    return ModusTollens{a, line_id(p)};
  }
  if (word == "gen" || word == "exintro") {
    std::string a = line_id(p);
    std::string v = p.variable();
    if (word == "gen") return Generalize{a, v};
    return ExistsIntro{a, v};
  }
  if (word == "eqexpl") return EqExplosion{line_id(p)};
  if (word == "defneg-unfold") return DefNegUnfold{line_id(p)};
  if (word == "comp") return Comprehension{p.formula()};
  if (word == "axiom") {
    AxiomRef ref;
    const Token& s = p.peek();
    if (s.type == Token::Type::Number) {
      // Bare numbers name the propositional postulates.
      ref.schema = "LP" + p.next().text;
    } else {
      if (s.type != Token::Type::Ident) p.fail(s, "a schema id");
      ref.schema = p.next().text;
    }
    if (p.at_word("n") && p.at_sym("=", 1)) {
      p.next();
      p.next();
      ref.level = p.number();
    }
    if (p.at_sym("{")) {
      p.next();
      while (true) {
        const Token& name = p.peek();
        if (name.type != Token::Type::Ident) p.fail(name, "a metavariable name");
        std::string meta = p.next().text;
        p.expect_sym(":=");
        if (is_term_metavar(meta))
          ref.bindings.emplace_back(meta, p.term());
        else
          ref.bindings.emplace_back(meta, p.formula());
        if (p.at_sym(",")) {
          p.next();
          continue;
        }
        p.expect_sym("}");
        break;
      }
    }
    return ref;
  }
  throw ParseError(kw.span, "a justification keyword", "'" + word + "'");
}

}  // namespace

// ---------------------------------------------------------------------------

Formula parse_formula(std::string_view text, const std::set<std::string>& constants) {
  Parser p(lex(text), constants);
  Formula f = p.formula();
  p.expect_end();
  return f;
}

Term parse_term(std::string_view text, const std::set<std::string>& constants) {
  Parser p(lex(text), constants);
  Term t = p.term();
  p.expect_end();
  return t;
}

std::string print_formula(const Formula& f) {
  std::string out;
  print_rec(f, true, out);
  return out;
}

std::string print_term(const Term& t) { return t.name; }

std::string print_level(LevelIndex n) {
  return n.is_omega() ? std::string("w") : std::to_string(n.value());
}

std::vector<std::string> premises_of(const Justification& j) {
  return std::visit(
      [](const auto& v) -> std::vector<std::string> {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ModusPonens>) return {v.minor, v.major};
        else if constexpr (std::is_same_v<T, ModusTollens>) return {v.implication, v.negation};
        else if constexpr (std::is_same_v<T, Generalize> || std::is_same_v<T, ExistsIntro> ||
                           std::is_same_v<T, EqExplosion> || std::is_same_v<T, DefNegUnfold>)
          return {v.premise};
        else return {};
      },
      j);
}

std::optional<std::size_t> ProofScript::index_of(const std::string& id) const {
  for (std::size_t i = 0; i < lines.size(); ++i)
    if (lines[i].id == id) return i;
  return std::nullopt;
}

ProofScript parse_proof(std::string_view text) {
  ProofScript script;
  std::set<std::string> constants;
  std::unordered_set<std::string> ids;
  std::vector<std::string> pending_comments;
  for (auto [lineno, raw] : split_lines(text)) {
    std::string_view body = trim(raw);
    if (body.empty()) continue;
    if (body.front() == '#') {
      std::string c(trim(body.substr(1)));
      if (script.lines.empty() && script.constants.empty())
        script.header.push_back(c);
      else
        pending_comments.push_back(c);
      continue;
    }
    std::vector<Token> toks = lex(raw, lineno);
    // Column numbers are relative to the raw line, which lex() already tracks.
    Parser p(toks, constants);
    if (p.at_word("const")) {
      p.next();
      do {
        const Token& t = p.peek();
        if (t.type != Token::Type::Ident || is_keyword(t.text) || !plain_name(t.text)) p.fail(t, "a constant name");
        constants.insert(t.text);
        script.constants.push_back(p.next().text);
        if (p.at_sym(",")) p.next();
      } while (!p.at_end());
      continue;
    }
    const Token id_tok = p.peek();
    ProofLine line{line_id(p), mk_prop("_"), Hypothesis{}, lineno, std::move(pending_comments), {}};
    pending_comments.clear();
    p.expect_sym(":");
    line.formula = p.formula();
    p.expect_sym(";");
    line.justification = parse_justification(p);
    p.expect_end();
    line.comment = trailing_comment(raw);
    if (!ids.insert(line.id).second)
      throw ParseError(id_tok.span, "a fresh line id", "'" + line.id + "'", ErrorCode::DuplicateLineId);
    script.lines.push_back(std::move(line));
  }
  return script;
}

std::string print_justification(const Justification& j) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Hypothesis>) return "hyp";
        else if constexpr (std::is_same_v<T, ModusPonens>) return "mp " + v.minor + " " + v.major;
        else if constexpr (std::is_same_v<T, ModusTollens>) return "mt " + v.implication + " " + v.negation;
        else if constexpr (std::is_same_v<T, Generalize>) return "gen " + v.premise + " " + v.var;
        else if constexpr (std::is_same_v<T, ExistsIntro>) return "exintro " + v.premise + " " + v.var;
        else if constexpr (std::is_same_v<T, EqExplosion>) return "eqexpl " + v.premise;
        else if constexpr (std::is_same_v<T, DefNegUnfold>) return "defneg-unfold " + v.premise;
        else if constexpr (std::is_same_v<T, Comprehension>) return "comp " + print_formula(v.pattern);
        else {
          std::string out = "axiom " + v.schema;
          if (v.level) out += " n=" + std::to_string(*v.level);
          if (!v.bindings.empty()) {
            out += " {";
            for (std::size_t i = 0; i < v.bindings.size(); ++i) {
              if (i) out += ", ";
              out += v.bindings[i].first + ":=";
              const MetaValue& m = v.bindings[i].second;
              out += std::holds_alternative<Term>(m) ? print_term(std::get<Term>(m))
                                                    : print_formula(std::get<Formula>(m));
            }
            out += "}";
          }
          return out;
        }
      },
      j);
}

std::string print_proof(const ProofScript& script) {
  std::ostringstream out;
  for (const std::string& h : script.header) out << (h.empty() ? "#" : "# " + h) << '\n';
  if (!script.header.empty()) out << '\n';
  for (const std::string& c : script.constants) out << "const " << c << '\n';
  if (!script.constants.empty()) out << '\n';
  for (const ProofLine& line : script.lines) {
    for (const std::string& c : line.leading_comments) out << (c.empty() ? "#" : "# " + c) << '\n';
    out << line.id << ": " << print_formula(line.formula) << " ; " << print_justification(line.justification);
    if (!line.comment.empty()) out << "  # " << line.comment;
    out << '\n';
  }
  return out.str();
}

Registry parse_registry(std::string_view text) {
  Registry reg;
  std::set<std::string> constants;
  for (auto [lineno, raw] : split_lines(text)) {
    std::vector<Token> toks = lex(raw, lineno);
    if (toks.size() == 1) continue;
    Parser p(toks, constants);
    if (p.at_word("const")) {
      p.next();
      while (!p.at_end()) {
        const Token& t = p.peek();
        if (t.type != Token::Type::Ident || is_keyword(t.text)) p.fail(t, "a constant name");
        constants.insert(p.next().text);
      }
      continue;
    }
    // The level is the last token; everything before it is the atom.
    const Token& level_tok = toks[toks.size() - 2];
    if (level_tok.type != Token::Type::Number) throw ParseError(level_tok.span, "a level", "'" + level_tok.text + "'");
    std::vector<Token> atom_toks(toks.begin(), toks.end() - 2);
    if (atom_toks.empty()) throw ParseError(level_tok.span, "an atom before the level", "'" + level_tok.text + "'");
    Token end;
    end.type = Token::Type::End;
    end.text = "end of input";
    end.span = level_tok.span;
    atom_toks.push_back(end);
    Parser ap(atom_toks, constants);
    const Token first = ap.peek();
    Formula atom = ap.formula();
    ap.expect_end();
    Parser lp({level_tok, end}, constants);
    std::uint64_t level = lp.number();
    if (!atom.is_atomic()) throw ParseError(first.span, "an atomic formula", "'" + print_formula(atom) + "'");
    if (level < 1)
      throw ParseError(level_tok.span, "a level >= 1", "'" + level_tok.text + "'", ErrorCode::InvalidLevel);
    try {
      reg.add(atom, level);
    } catch (const Error& e) {
      throw ParseError(first.span, "a fresh atom", "'" + print_formula(atom) + "'", e.code());
    }
  }
  return reg;
}

std::string print_registry(const Registry& r) {
  std::ostringstream out;
  std::set<std::string> lower_constants;
  for (const auto& [atom, n] : r.entries())
    for (const Term& t : atom.terms())
      if (t.is_constant() && !is_upper_ident(t.name)) lower_constants.insert(t.name);
  for (const std::string& c : lower_constants) out << "const " << c << '\n';
  for (const auto& [atom, n] : r.entries()) out << print_formula(atom) << ' ' << n << '\n';
  return out.str();
}

}  // namespace lpw
