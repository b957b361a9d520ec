#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "foldlang/automata.hpp"

namespace foldlang {

// Dialect: literals, grouping, `|`, `*`, `+`, `?` and backslash escapes. An
// empty group or an empty alternative denotes the empty word. Whitespace is
// rejected.
struct RegexAst {
  enum class Kind { Empty, Epsilon, Literal, Concat, Union, Star, Plus, Optional };

  Kind kind = Kind::Epsilon;
  Symbol literal = 0;
  std::vector<RegexAst> children;

  static RegexAst empty() { return {Kind::Empty, 0, {}}; }
  static RegexAst epsilon() { return {Kind::Epsilon, 0, {}}; }
  static RegexAst symbol(Symbol c) { return {Kind::Literal, c, {}}; }
  static RegexAst unary(Kind kind, RegexAst child);
  // Collapses to the single child when given one, as Concat/Union need two.
  static RegexAst nary(Kind kind, std::vector<RegexAst> children);

  friend bool operator==(const RegexAst&, const RegexAst&) = default;
};

RegexAst parse_regex(std::string_view text);

// Literals occurring in the tree, as an alphabet.
Alphabet literals_of(const RegexAst& ast);

// Thompson construction.
Nfa regex_to_nfa(const RegexAst& ast);

// Minimal total DFA for the expression. The alphabet is the hint if given,
// otherwise the literals that appear. Throws ParseError or AlphabetMismatch.
Dfa compile_regex(std::string_view text, const std::optional<Alphabet>& alphabet_hint = std::nullopt);

}  // namespace foldlang
