#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "foldlang/automata.hpp"

namespace foldlang {

// Linear grammar: every rule is A -> u B v or A -> u with u, v terminal strings.
struct LinearGrammar {
  using NonterminalId = std::size_t;
  struct Rule {
    NonterminalId lhs;
    std::string left;
    std::optional<NonterminalId> middle;
    std::string right;  // empty unless middle is set

    bool is_unit() const noexcept { return middle && left.empty() && right.empty(); }
    friend bool operator==(const Rule&, const Rule&) = default;
  };

  std::vector<std::string> nonterminals;
  Alphabet terminals;
  std::vector<Rule> rules;
  NonterminalId start = 0;

  // Throws std::invalid_argument on dangling ids, terminals outside the
  // alphabet, or a right block without a middle nonterminal.
  void validate() const;
  std::optional<NonterminalId> find(std::string_view name) const;
  // Throws UnknownNonterminal.
  NonterminalId id_of(std::string_view name) const;
  // True when no rule has terminals after its nonterminal.
  bool is_right_linear() const noexcept;

  friend bool operator==(const LinearGrammar&, const LinearGrammar&) = default;
};

// Name of the product nonterminal for a pair, e.g. "(S0,T0)".
std::string product_name(std::string_view left, std::string_view right);

// --- Text and JSON forms --------------------------------------------------

// Grammar file format:
//   start <Name>
//   <Name> -> tok tok ... | tok ... | ...
// A token is a nonterminal iff it is some rule's left-hand side (or the start);
// otherwise it is a single-character terminal, optionally single-quoted. `eps`
// alone is the empty right-hand side; `#` at line start begins a comment.
// Throws ParseError or NotLinear.
LinearGrammar parse_grammar(std::string_view text);

// Inverse of parse_grammar. Rules that mention a nonterminal with no rules of
// its own cannot be written in the file format; they never complete a
// derivation, so they are left out and counted in a trailing comment.
std::string to_text(const LinearGrammar& g);

// { "start": str, "rules": [ { "lhs": str, "rhs": [ { "kind": "T"|"N", "value": str } ] } ] }
std::string to_json(const LinearGrammar& g, int indent = 2);
LinearGrammar grammar_from_json(std::string_view json_text);

// --- Conversions ------------------------------------------------------------

LinearGrammar from_right_linear(const RightLinearGrammar& g);
// Strict: every rule must already be A -> a B or A -> eps. Throws NotNormalForm.
RightLinearGrammar as_normal_form(const LinearGrammar& g);
// Any right-linear grammar (A -> u B, A -> u, unit rules) rewritten into normal
// form with fresh nonterminals. Throws NotNormalForm if g is not right-linear.
RightLinearGrammar to_right_linear(const LinearGrammar& g);

// --- Constructions ------------------------------------------------------------

// Rules over V1 x V2, exactly R_u, R_d and R_eps:
//   (A,B) -> a (C,D)  for A -> a C, B -> u D
//   (A,B) -> (C,D) a  for A -> a C, B -> d D
//   (A,B) -> eps      for A -> eps, B -> eps
// Nonterminal (A_i, B_j) has id i * |V2| + j. Start is (S1, S2).
// Throws ProcAlphabetError if g2 uses symbols outside {u, d}.
LinearGrammar product_construct(const RightLinearGrammar& g1, const RightLinearGrammar& g2);
// Throws NotNormalForm when either grammar is not in normal form.
LinearGrammar product_construct(const LinearGrammar& g1, const LinearGrammar& g2);

// trim(product(rlg(reverse(core)), rlg(reverse(proc)))). Core nonterminals are
// named S<i>, procedure nonterminals T<i>.
LinearGrammar fsystem_to_linear(const Dfa& core, const Dfa& proc, bool trimmed = true);

// Removes nonproductive and unreachable nonterminals. The start is always
// kept; it has no rules when the language is empty.
LinearGrammar trim(const LinearGrammar& g);
std::vector<bool> productive_nonterminals(const LinearGrammar& g);

// Equal up to a renaming of nonterminals that maps start to start. Rule order
// is ignored. Intended for small grammars (at most 9 nonterminals).
bool isomorphic(const LinearGrammar& a, const LinearGrammar& b);

LinearGrammar start_variant(const LinearGrammar& g, std::string_view start);
RightLinearGrammar start_variant(const RightLinearGrammar& g, std::string_view start);

// --- Membership and enumeration ----------------------------------------------

// Recognizer over a binarized copy of the grammar (rules A -> a B, A -> B a,
// A -> eps, plus unit rules closed transitively). accepts() runs a span
// dynamic program in O(n^2 |R|) time, keeping only two span-length layers.
class LinearRecognizer {
 public:
  explicit LinearRecognizer(const LinearGrammar& g);
  bool accepts(std::string_view word) const;

  std::size_t node_count() const noexcept { return node_count_; }

 private:
  struct LeftStep {
    std::size_t lhs;
    Symbol symbol;
    std::size_t rest;
  };
  struct RightStep {
    std::size_t lhs;
    std::size_t rest;
    Symbol symbol;
  };

  Alphabet terminals_;
  std::size_t node_count_ = 0;
  std::size_t start_ = 0;
  std::vector<std::size_t> epsilon_nodes_;
  // Indexed by symbol code.
  std::vector<std::vector<LeftStep>> left_by_symbol_;
  std::vector<std::vector<RightStep>> right_by_symbol_;
  // unit_ancestors_[X]: every A with A =>* X through unit rules, X included.
  std::vector<std::vector<std::size_t>> unit_ancestors_;
};

bool member_linear(const LinearGrammar& g, std::string_view word);

std::vector<Word> enumerate_linear(const LinearGrammar& g, std::size_t max_length);
std::vector<Word> enumerate_linear(const LinearGrammar& g, std::size_t max_length, std::size_t cap);

}  // namespace foldlang
