#include "foldlang/regex.hpp"

#include <string>
#include <utility>

#include "foldlang/error.hpp"

namespace foldlang {

RegexAst RegexAst::unary(Kind kind, RegexAst child) {
  RegexAst node{kind, 0, {}};
  node.children.push_back(std::move(child));
  return node;
}

RegexAst RegexAst::nary(Kind kind, std::vector<RegexAst> children) {
  if (children.empty()) return kind == Kind::Union ? empty() : epsilon();
  if (children.size() == 1) return std::move(children.front());
  return RegexAst{kind, 0, std::move(children)};
}

namespace {

class RegexParser {
 public:
  explicit RegexParser(std::string_view text) : text_(text) {}

  RegexAst parse() {
    RegexAst ast = alternation();
    if (pos_ < text_.size()) fail(text_[pos_] == ')' ? "unmatched ')'" : "unexpected character");
    return ast;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& reason) const { throw ParseError(reason, pos_); }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  RegexAst alternation() {
    std::vector<RegexAst> branches;
    branches.push_back(concatenation());
    while (!at_end() && peek() == '|') {
      ++pos_;
      branches.push_back(concatenation());
    }
    return RegexAst::nary(RegexAst::Kind::Union, std::move(branches));
  }

  RegexAst concatenation() {
    std::vector<RegexAst> parts;
    while (!at_end() && peek() != '|' && peek() != ')') parts.push_back(postfix());
    return RegexAst::nary(RegexAst::Kind::Concat, std::move(parts));
  }

  RegexAst postfix() {
    RegexAst node = atom();
    while (!at_end()) {
      char c = peek();
      if (c == '*') {
        node = RegexAst::unary(RegexAst::Kind::Star, std::move(node));
      } else if (c == '+') {
        node = RegexAst::unary(RegexAst::Kind::Plus, std::move(node));
      } else if (c == '?') {
        node = RegexAst::unary(RegexAst::Kind::Optional, std::move(node));
      } else {
        break;
      }
      ++pos_;
    }
    return node;
  }

  RegexAst atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      RegexAst inner = alternation();
      if (at_end() || peek() != ')') fail("missing ')'");
      ++pos_;
      return inner;
    }
    if (c == '\\') {
      ++pos_;
      if (at_end()) fail("dangling escape");
      return literal(peek());
    }
    if (c == '*' || c == '+' || c == '?') fail("repetition operator without operand");
    return literal(c);
  }

  RegexAst literal(char c) {
    if (!is_valid_symbol(c)) fail("symbol must be printable, non-space ASCII");
    ++pos_;
    return RegexAst::symbol(c);
  }
};

void collect_literals(const RegexAst& ast, std::string& out) {
  if (ast.kind == RegexAst::Kind::Literal) out.push_back(ast.literal);
  for (const auto& child : ast.children) collect_literals(child, out);
}

struct Fragment {
  State entry;
  State exit;
};

Fragment build(const RegexAst& ast, Nfa& nfa) {
  using Kind = RegexAst::Kind;
  switch (ast.kind) {
    case Kind::Empty: {
      return {nfa.add_state(), nfa.add_state()};
    }
    case Kind::Epsilon: {
      State s = nfa.add_state();
      return {s, s};
    }
    case Kind::Literal: {
      State s = nfa.add_state();
      State t = nfa.add_state();
      nfa.add(s, ast.literal, t);
      return {s, t};
    }
    case Kind::Concat: {
      Fragment first = build(ast.children.front(), nfa);
      State exit = first.exit;
      for (std::size_t i = 1; i < ast.children.size(); ++i) {
        Fragment next = build(ast.children[i], nfa);
        nfa.add(exit, std::nullopt, next.entry);
        exit = next.exit;
      }
      return {first.entry, exit};
    }
    case Kind::Union: {
      State s = nfa.add_state();
      State t = nfa.add_state();
      for (const auto& child : ast.children) {
        Fragment f = build(child, nfa);
        nfa.add(s, std::nullopt, f.entry);
        nfa.add(f.exit, std::nullopt, t);
      }
      return {s, t};
    }
    case Kind::Star:
    case Kind::Plus:
    case Kind::Optional: {
      State s = nfa.add_state();
      State t = nfa.add_state();
      Fragment f = build(ast.children.front(), nfa);
      nfa.add(s, std::nullopt, f.entry);
      nfa.add(f.exit, std::nullopt, t);
      if (ast.kind != Kind::Plus) nfa.add(s, std::nullopt, t);
      if (ast.kind != Kind::Optional) nfa.add(f.exit, std::nullopt, f.entry);
      return {s, t};
    }
  }
  throw std::logic_error("unknown regex node");
}

}  // namespace

RegexAst parse_regex(std::string_view text) { return RegexParser(text).parse(); }

Alphabet literals_of(const RegexAst& ast) {
  std::string symbols;
  collect_literals(ast, symbols);
  return Alphabet(symbols);
}

Nfa regex_to_nfa(const RegexAst& ast) {
  Nfa nfa;
  Fragment f = build(ast, nfa);
  nfa.start = f.entry;
  nfa.accepting[f.exit] = true;
  return nfa;
}

Dfa compile_regex(std::string_view text, const std::optional<Alphabet>& alphabet_hint) {
  RegexAst ast = parse_regex(text);
  Alphabet literals = literals_of(ast);
  Alphabet alphabet = alphabet_hint.value_or(literals);
  if (!literals.is_subset_of(alphabet)) {
    std::string extra;
    for (char c : literals) {
      if (!alphabet.contains(c)) extra.push_back(c);
    }
    throw AlphabetMismatch("regex literals outside alphabet: " + extra);
  }
  return minimize(determinize(regex_to_nfa(ast), alphabet));
}

}  // namespace foldlang
