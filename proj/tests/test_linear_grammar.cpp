#include <gtest/gtest.h>

#include <random>

#include "foldlang/error.hpp"
#include "foldlang/linear_grammar.hpp"
#include "foldlang/properties.hpp"
#include "foldlang/regex.hpp"
#include "support/oracles.hpp"

using namespace foldlang;

namespace {

constexpr std::string_view kAbcGrammar =
    "start (S0,T0)\n"
    "(S0,T0) -> eps | (S1,T1) c\n"
    "(S1,T1) -> (S2,T2) b\n"
    "(S2,T2) -> a (S0,T0)\n";

LinearGrammar abc_udd() { return parse_grammar(kAbcGrammar); }

RightLinearGrammar abc_g1() {
  return dfa_to_rlg(dfa_reverse(compile_regex("(abc)*")), "S");
}
RightLinearGrammar udd_g2() {
  return dfa_to_rlg(dfa_reverse(compile_regex("(udd)*", direction_alphabet())), "T");
}

}  // namespace

TEST(GrammarParse, Examples) {
  const auto g = parse_grammar("start S\nS -> a S b c | a '#' b c\n");
  EXPECT_EQ(g.rules.size(), 2U);
  EXPECT_EQ(g.terminals.symbols(), "#abc");
  EXPECT_EQ(g.rules[0].left, "a");
  EXPECT_EQ(g.rules[0].right, "bc");
  EXPECT_FALSE(g.rules[1].middle.has_value());
  EXPECT_EQ(g.rules[1].left, "a#bc");

  const auto eps = parse_grammar("start S\nS -> eps\n");
  EXPECT_EQ(enumerate_linear(eps, 5), std::vector<Word>{""});
  EXPECT_THROW(parse_grammar("start S\nS -> a S S\n"), NotLinear);
}

TEST(GrammarParse, Errors) {
  EXPECT_THROW(parse_grammar(""), ParseError);
  EXPECT_THROW(parse_grammar("S -> a\n"), ParseError);
  EXPECT_THROW(parse_grammar("start S\nS ->\n"), ParseError);
  EXPECT_THROW(parse_grammar("start S\nS -> a | | b\n"), ParseError);
  EXPECT_THROW(parse_grammar("start S\nS -> a eps\n"), ParseError);
  EXPECT_THROW(parse_grammar("start S\nS -> ab\n"), ParseError);
  EXPECT_THROW(parse_grammar("start S\nS -> # a\n"), ParseError);
  EXPECT_THROW(parse_grammar("start S\nS => a\n"), ParseError);
  try {
    parse_grammar("start S\nS -> a | b | xy\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 21U);
  }
}

TEST(GrammarParse, CommentsAndQuotes) {
  const auto g = parse_grammar("# leading comment\nstart S\n# more\nS -> '|' S '-' | 'S' | eps\n");
  EXPECT_EQ(g.terminals.symbols(), "-S|");
  EXPECT_TRUE(member_linear(g, "|S-"));
  EXPECT_TRUE(member_linear(g, ""));
}

TEST(GrammarText, RoundTrip) {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    auto g = oracle::random_linear_grammar(rng, "ab#", 4, 8);
    // Only the rule set survives a text round trip; compare languages.
    const auto again = parse_grammar(to_text(g));
    EXPECT_EQ(enumerate_linear(again, 6), enumerate_linear(g, 6)) << to_text(g);
    EXPECT_EQ(parse_grammar(to_text(again)), again);
  }
  const auto g = abc_udd();
  EXPECT_EQ(parse_grammar(to_text(g)), g);
  EXPECT_EQ(to_text(g), std::string(kAbcGrammar));
}

TEST(GrammarJson, RoundTrip) {
  const auto g = thm2_language();
  EXPECT_EQ(grammar_from_json(to_json(g)), g);
  const auto e = abc_udd();
  EXPECT_EQ(grammar_from_json(to_json(e, -1)), e);
  std::mt19937 rng(22);
  for (int trial = 0; trial < 30; ++trial) {
    const auto r = oracle::random_linear_grammar(rng, "xy", 3, 6);
    EXPECT_EQ(enumerate_linear(grammar_from_json(to_json(r)), 6), enumerate_linear(r, 6));
  }
  EXPECT_THROW(grammar_from_json("{"), ParseError);
  EXPECT_THROW(grammar_from_json(R"({"start":"S","rules":[{"lhs":"S","rhs":[{"kind":"N","value":"S"},{"kind":"N","value":"S"}]}]})"),
               NotLinear);
}

TEST(GrammarJson, Schema) {
  const auto text = to_json(parse_grammar("start S\nS -> a S | eps\n"), -1);
  EXPECT_EQ(text,
            R"({"start":"S","rules":[{"lhs":"S","rhs":[{"kind":"T","value":"a"},{"kind":"N","value":"S"}]},{"lhs":"S","rhs":[]}]})");
}

TEST(Product, AbcUddRawAndTrimmed) {
  const auto raw = product_construct(abc_g1(), udd_g2());
  EXPECT_EQ(raw.nonterminals.size(), 9U);
  EXPECT_EQ(raw.nonterminals[0], "(S0,T0)");
  for (const auto& r : raw.rules) {
    const bool eps = !r.middle && r.left.empty() && r.right.empty();
    const bool up = r.middle && r.left.size() == 1 && r.right.empty();
    const bool down = r.middle && r.left.empty() && r.right.size() == 1;
    EXPECT_TRUE(eps || up || down);
  }
  const auto trimmed = trim(raw);
  EXPECT_TRUE(isomorphic(trimmed, abc_udd()));
  EXPECT_EQ(trim(trimmed), trimmed);
  EXPECT_EQ(enumerate_linear(trimmed, 7), (std::vector<Word>{"", "abc", "aabcbc"}));
}

TEST(Product, EpsilonTimesEpsilon) {
  const auto e1 = dfa_to_rlg(Dfa::epsilon_only(Alphabet("a")), "S");
  const auto e2 = dfa_to_rlg(Dfa::epsilon_only(direction_alphabet()), "T");
  const auto g = product_construct(e1, e2);
  EXPECT_EQ(enumerate_linear(g, 6), std::vector<Word>{""});
}

TEST(Product, RejectsForeignProcedureSymbols) {
  const auto g1 = abc_g1();
  auto g2 = dfa_to_rlg(compile_regex("ab"), "T");
  EXPECT_THROW(product_construct(g1, g2), ProcAlphabetError);
  EXPECT_THROW(product_construct(abc_udd(), abc_udd()), NotNormalForm);
}

TEST(Trim, NonproductiveOnly) {
  const auto g = trim(parse_grammar("start S\nS -> a S\n"));
  EXPECT_EQ(g.nonterminals, std::vector<std::string>{"S"});
  EXPECT_TRUE(g.rules.empty());
  EXPECT_TRUE(enumerate_linear(g, 10).empty());
}

TEST(Trim, PreservesLanguageOfRandomGrammars) {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const auto g = oracle::random_linear_grammar(rng, "ab", 5, 9);
    const auto t = trim(g);
    EXPECT_LE(t.nonterminals.size(), g.nonterminals.size());
    EXPECT_EQ(enumerate_linear(t, 7), enumerate_linear(g, 7));
    EXPECT_EQ(trim(t), t);
  }
}

TEST(Fsystem, ToLinearExamples) {
  const auto g1 = fsystem_to_linear(compile_regex("(abc)*"), compile_regex("(udd)*", direction_alphabet()));
  EXPECT_EQ(enumerate_linear(g1, 12), (std::vector<Word>{"", "abc", "aabcbc", "aaabcbcbc", "aaaabcbcbcbc"}));
  const auto g2 = fsystem_to_linear(compile_regex("(abc)*"), compile_regex("(uud)*", direction_alphabet()));
  EXPECT_EQ(enumerate_linear(g2, 3), (std::vector<Word>{"", "bac"}));
  const auto g3 = fsystem_to_linear(compile_regex("(edf)*"), compile_regex("(uud)*", direction_alphabet()));
  EXPECT_EQ(enumerate_linear(g3, 6), (std::vector<Word>{"", "def", "dedeff"}));
  EXPECT_THROW(fsystem_to_linear(compile_regex("a"), compile_regex("x")), ProcAlphabetError);
}

TEST(Recognizer, Examples) {
  const auto thm2 = thm2_language();
  EXPECT_TRUE(member_linear(thm2, "a#bc"));
  EXPECT_TRUE(member_linear(thm2, "de#f"));
  EXPECT_FALSE(member_linear(thm2, "abc"));
  EXPECT_FALSE(member_linear(thm2, "a#bcbc"));
  EXPECT_TRUE(member_linear(abc_udd(), "aabcbc"));
  EXPECT_FALSE(member_linear(abc_udd(), "abcabc"));
  EXPECT_TRUE(member_linear(abc_udd(), ""));
}

TEST(Recognizer, AgreesWithDerivationOracle) {
  std::mt19937 rng(24);
  for (int trial = 0; trial < 80; ++trial) {
    const auto g = oracle::random_linear_grammar(rng, "ab", 4, 8);
    const LinearRecognizer rec(g);
    for (std::size_t n = 0; n <= 6; ++n) {
      for (const auto& w : oracle::all_words("ab", n)) {
        ASSERT_EQ(rec.accepts(w), oracle::derives(g, w)) << to_text(g) << "word '" << w << "'";
      }
    }
  }
}

TEST(Recognizer, UnitCycles) {
  const auto g = parse_grammar("start S\nS -> A | a\nA -> S | b A b\n");
  EXPECT_TRUE(member_linear(g, "bab"));
  EXPECT_TRUE(member_linear(g, "bbabb"));
  EXPECT_FALSE(member_linear(g, "bb"));
  EXPECT_EQ(enumerate_linear(g, 5), (std::vector<Word>{"a", "bab", "bbabb"}));
}

TEST(EnumerateLinear, Examples) {
  EXPECT_EQ(enumerate_linear(abc_udd(), 7), (std::vector<Word>{"", "abc", "aabcbc"}));
  EXPECT_TRUE(enumerate_linear(trim(parse_grammar("start S\nS -> a S\n")), 10).empty());
  EXPECT_EQ(enumerate_linear(thm2_language(), 4), (std::vector<Word>{"a#bc", "de#f"}));
  EXPECT_THROW(enumerate_linear(abc_udd(), 30, 24), CapExceeded);
}

TEST(EnumerateLinear, AgreesWithDerivationOracle) {
  std::mt19937 rng(25);
  for (int trial = 0; trial < 60; ++trial) {
    const auto g = oracle::random_linear_grammar(rng, "abc", 4, 8);
    EXPECT_EQ(enumerate_linear(g, 5), oracle::sorted(oracle::grammar_language(g, 5))) << to_text(g);
  }
}

TEST(ToRightLinear, PreservesLanguage) {
  const auto g = parse_grammar("start S\nS -> a b S | c | A | eps\nA -> b a A | a\n");
  const auto rl = to_right_linear(g);
  for (const auto& r : rl.rules) {
    if (r.step) EXPECT_TRUE(rl.terminals.contains(r.step->symbol));
  }
  EXPECT_EQ(oracle::sorted(oracle::rlg_language(rl, rl.start, 7)), enumerate_linear(g, 7));
  EXPECT_THROW(to_right_linear(parse_grammar("start S\nS -> a S b | eps\n")), NotNormalForm);
}

TEST(StartVariant, Examples) {
  const auto g = abc_udd();
  EXPECT_EQ(start_variant(g, "(S0,T0)"), g);
  EXPECT_THROW(start_variant(g, "Z"), UnknownNonterminal);
  const auto v = start_variant(g, "(S1,T1)");
  // (S1,T1) derives (S2,T2) b -> a (S0,T0) b, so words are a x b with x in L(G).
  EXPECT_EQ(enumerate_linear(v, 8), (std::vector<Word>{"ab", "aabcb", "aaabcbcb"}));
  EXPECT_THROW(start_variant(abc_g1(), "Q"), UnknownNonterminal);
}

TEST(Isomorphic, DetectsRenamingOnly) {
  const auto g = abc_udd();
  auto renamed = g;
  renamed.nonterminals = {"X", "Y", "Z"};
  EXPECT_TRUE(isomorphic(g, renamed));
  auto different = g;
  different.rules.pop_back();
  EXPECT_FALSE(isomorphic(g, different));
}
