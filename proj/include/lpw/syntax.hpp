#pragma once

#include <set>
#include <string>
#include <string_view>

#include "lpw/error.hpp"
#include "lpw/formula.hpp"
#include "lpw/proof.hpp"
#include "lpw/registry.hpp"

namespace lpw {

// 1-based position of a token in the parsed text.
struct SourceSpan {
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t length = 1;
};

class ParseError : public Error {
 public:
  ParseError(SourceSpan span, std::string expected, std::string found,
             ErrorCode code = ErrorCode::ParseError);

  const SourceSpan& span() const { return span_; }
  const std::string& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  SourceSpan span_;
  std::string expected_;
  std::string found_;
};

// Identifiers in term position are constants when they start with an
// uppercase letter or appear in `constants`; otherwise they are variables.
Formula parse_formula(std::string_view text, const std::set<std::string>& constants = {});
Term parse_term(std::string_view text, const std::set<std::string>& constants = {});

// Canonical text with minimal parentheses. parse_formula inverts it, given the
// constants that were declared for lowercase constant names.
std::string print_formula(const Formula& f);
std::string print_term(const Term& t);
std::string print_level(LevelIndex n);

ProofScript parse_proof(std::string_view text);
std::string print_justification(const Justification& j);
std::string print_proof(const ProofScript& script);

Registry parse_registry(std::string_view text);
std::string print_registry(const Registry& r);

}  // namespace lpw
