#include <gtest/gtest.h>

#include <cstdlib>
#include <random>
#include <regex>

#include "foldlang/automata.hpp"
#include "foldlang/error.hpp"
#include "foldlang/properties.hpp"
#include "foldlang/regex.hpp"
#include "support/oracles.hpp"

using namespace foldlang;

namespace {

std::vector<Word> words(std::initializer_list<const char*> list) {
  return std::vector<Word>(list.begin(), list.end());
}

Dfa re(std::string_view text, std::string_view sigma) { return compile_regex(text, Alphabet(sigma)); }

// Same language up to max_length, checked word by word.
void expect_same_language(const Dfa& d, const oracle::RawDfa& raw, std::size_t max_length) {
  for (std::size_t n = 0; n <= max_length; ++n) {
    for (const auto& w : oracle::all_words(raw.sigma, n)) {
      ASSERT_EQ(d.accepts(w), raw.accepts(w)) << "'" << w << "'";
    }
  }
}

}  // namespace

TEST(AlphabetTest, SortsAndDeduplicates) {
  Alphabet a("cabca");
  EXPECT_EQ(a.symbols(), "abc");
  EXPECT_EQ(a.index_of('c'), 2U);
  EXPECT_FALSE(a.index_of('z').has_value());
  EXPECT_TRUE(Alphabet("ab").is_subset_of(a));
  EXPECT_EQ(a.united_with(Alphabet("#z")).symbols(), "#abcz");
  EXPECT_THROW(Alphabet("a b"), ParseError);
  EXPECT_EQ(direction_alphabet().symbols(), "du");
}

TEST(CanonicalOrderTest, LengthThenCode) {
  WordSet s{"b", "", "aa", "a", "ab"};
  EXPECT_EQ(std::vector<Word>(s.begin(), s.end()), words({"", "a", "b", "aa", "ab"}));
}

TEST(Regex, ParsesAndRejects) {
  EXPECT_EQ(enumerate_dfa(compile_regex("(abc)*"), 7), words({"", "abc", "abcabc"}));
  EXPECT_EQ(enumerate_dfa(compile_regex("()"), 5), words({""}));
  EXPECT_EQ(enumerate_dfa(re("(udd)*", "du"), 6), words({"", "udd", "uddudd"}));
  EXPECT_EQ(enumerate_dfa(compile_regex("a\\*b?"), 3), words({"a*", "a*b"}));
  EXPECT_EQ(enumerate_dfa(compile_regex("(a|)b+"), 3), words({"b", "ab", "bb", "abb", "bbb"}));
  EXPECT_THROW(compile_regex("(ab"), ParseError);
  EXPECT_THROW(compile_regex("ab)"), ParseError);
  EXPECT_THROW(compile_regex("*a"), ParseError);
  EXPECT_THROW(compile_regex("a\\"), ParseError);
  EXPECT_THROW(compile_regex("a b"), ParseError);
  EXPECT_THROW(re("abx", "ab"), AlphabetMismatch);
}

TEST(Regex, AgreesWithStdRegex) {
  const std::vector<std::string> patterns = {
      "(abc)*",     "a*b*",        "(a|b)*abb",  "(ab|ba)+c?", "((a|b)(a|b))*",
      "a(b|c)*a|c", "(a*|b+)(ca)*", "()|a(bc)*",  "(a?b?c?)+",  "(a|bc|cab)*b",
  };
  for (const auto& p : patterns) {
    const Dfa d = re(p, "abc");
    const std::regex oracle_re(p);
    for (std::size_t n = 0; n <= 7; ++n) {
      for (const auto& w : oracle::all_words("abc", n)) {
        ASSERT_EQ(d.accepts(w), std::regex_match(w, oracle_re)) << p << " on '" << w << "'";
      }
    }
  }
}

TEST(Dfa, ConstructorValidates) {
  const Alphabet ab("ab");
  EXPECT_THROW(Dfa(ab, 0, 0, {}, {}), std::invalid_argument);
  EXPECT_THROW(Dfa(ab, 1, 1, {true}, {0, 0}), std::invalid_argument);
  EXPECT_THROW(Dfa(ab, 1, 0, {true}, {0}), std::invalid_argument);
  EXPECT_THROW(Dfa(ab, 1, 0, {true}, {0, 1}), std::invalid_argument);
  EXPECT_FALSE(Dfa::universal(ab).accepts("abc"));
  EXPECT_TRUE(Dfa::universal(ab).accepts("abba"));
  EXPECT_TRUE(Dfa::epsilon_only(ab).accepts(""));
  EXPECT_FALSE(Dfa::epsilon_only(ab).accepts("a"));
  EXPECT_TRUE(enumerate_dfa(Dfa::empty_language(ab), 10).empty());
}

TEST(Minimize, PreservesLanguageOfRandomAutomata) {
  std::mt19937 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const auto raw = oracle::random_dfa(rng, "ab", 6);
    const Dfa m = minimize(raw.to_dfa());
    expect_same_language(m, raw, 8);
    EXPECT_LE(m.state_count(), raw.n + 0);
    EXPECT_EQ(minimize(m), m);
    EXPECT_EQ(canonical_numbering(raw.to_dfa()).state_count() >= m.state_count(), true);
  }
}

TEST(Minimize, EquivalentRegexesGiveIdenticalAutomata) {
  EXPECT_EQ(re("(abc)*", "abc"), re("(abc)*abc|()", "abc"));
  EXPECT_EQ(re("(a|b)*", "ab"), re("(a*b*)*", "ab"));
  EXPECT_EQ(re("(abc)*", "abc").state_count(), 4U);
}

TEST(Determinize, SubsetConstructionMatchesNfa) {
  // a-NFA for words whose third symbol from the end is a.
  Nfa nfa;
  State s0 = nfa.add_state();
  State s1 = nfa.add_state();
  State s2 = nfa.add_state();
  State s3 = nfa.add_state(true);
  nfa.start = s0;
  nfa.add(s0, 'a', s0);
  nfa.add(s0, 'b', s0);
  nfa.add(s0, 'a', s1);
  nfa.add(s1, 'a', s2);
  nfa.add(s1, 'b', s2);
  nfa.add(s2, 'a', s3);
  nfa.add(s2, 'b', s3);
  const Dfa d = minimize(determinize(nfa, Alphabet("ab")));
  EXPECT_EQ(d.state_count(), 8U);
  for (std::size_t n = 0; n <= 8; ++n) {
    for (const auto& w : oracle::all_words("ab", n)) {
      EXPECT_EQ(d.accepts(w), n >= 3 && w[n - 3] == 'a') << w;
    }
  }
}

TEST(Reverse, Examples) {
  EXPECT_TRUE(dfa_equiv(dfa_reverse(re("(abc)*", "abc")), re("(cba)*", "abc")));
  EXPECT_TRUE(dfa_equiv(dfa_reverse(re("()", "ab")), re("()", "ab")));
  EXPECT_EQ(enumerate_dfa(dfa_reverse(re("ab|b", "ab")), 4), words({"b", "ba"}));
}

TEST(Reverse, RandomAutomata) {
  std::mt19937 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const auto raw = oracle::random_dfa(rng, "abc", 4);
    const Dfa r = dfa_reverse(raw.to_dfa());
    for (std::size_t n = 0; n <= 5; ++n) {
      for (const auto& w : oracle::all_words("abc", n)) {
        ASSERT_EQ(r.accepts(oracle::reversed(w)), raw.accepts(w));
      }
    }
  }
}

TEST(BooleanOps, Examples) {
  const Alphabet abc("abc");
  const Dfa star = re("(abc)*", "abc");
  EXPECT_TRUE(dfa_equiv(dfa_intersect(star, Dfa::universal(abc)), star));
  EXPECT_TRUE(enumerate_dfa(dfa_intersect(star, length_filter(abc, 3, 1, 0)), 12).empty());
  EXPECT_EQ(enumerate_dfa(dfa_intersect(re("a*", "ab"), re("(a|b)(a|b)", "ab")), 3), words({"aa"}));
  EXPECT_THROW(dfa_intersect(star, re("a*", "ab")), AlphabetMismatch);
}

TEST(BooleanOps, RandomAutomataAgreeWithSetOperations) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto x = oracle::random_dfa(rng, "ab", 4);
    const auto y = oracle::random_dfa(rng, "ab", 4);
    const Dfa i = dfa_intersect(x.to_dfa(), y.to_dfa());
    const Dfa u = dfa_union(x.to_dfa(), y.to_dfa());
    const Dfa c = dfa_complement(x.to_dfa());
    for (std::size_t n = 0; n <= 6; ++n) {
      for (const auto& w : oracle::all_words("ab", n)) {
        ASSERT_EQ(i.accepts(w), x.accepts(w) && y.accepts(w));
        ASSERT_EQ(u.accepts(w), x.accepts(w) || y.accepts(w));
        ASSERT_EQ(c.accepts(w), !x.accepts(w));
      }
    }
    // Automata with at most 4 states are equivalent iff they agree up to length 7.
    bool agree = true;
    for (std::size_t n = 0; n <= 7 && agree; ++n) {
      for (const auto& w : oracle::all_words("ab", n)) agree = agree && x.accepts(w) == y.accepts(w);
    }
    EXPECT_EQ(dfa_equiv(x.to_dfa(), y.to_dfa()), agree);
  }
}

TEST(Equiv, Examples) {
  const Dfa star = re("(abc)*", "abc");
  EXPECT_TRUE(dfa_equiv(star, dfa_reverse(dfa_reverse(star))));
  EXPECT_TRUE(dfa_equiv(star, re("(abc)*abc|()", "abc")));
  EXPECT_FALSE(dfa_equiv(star, re("(acb)*", "abc")));
}

TEST(LengthFilter, Examples) {
  const Alphabet a("a");
  std::vector<Word> expected;
  for (std::size_t n : {4, 7, 10}) expected.emplace_back(n, 'a');
  EXPECT_EQ(enumerate_dfa(length_filter(a, 3, 1, 4), 12), expected);
  EXPECT_TRUE(dfa_equiv(length_filter(Alphabet("ab"), 1, 0, 0), Dfa::universal(Alphabet("ab"))));
  for (const auto& w : enumerate_dfa(length_filter(Alphabet("ab"), 2, 0, 2), 5)) {
    EXPECT_TRUE(w.size() == 2 || w.size() == 4) << w;
  }
  EXPECT_EQ(count_words(length_filter(Alphabet("ab"), 2, 0, 2), 4), 16U);
  EXPECT_THROW(length_filter(a, 0, 0, 0), InvalidResidue);
  EXPECT_THROW(length_filter(a, 3, 3, 0), InvalidResidue);
}

TEST(ExtendAlphabet, NewSymbolsAreRejected) {
  const Dfa d = extend_alphabet(re("a*", "a"), Alphabet("ab"));
  EXPECT_TRUE(d.accepts("aaa"));
  EXPECT_FALSE(d.accepts("ab"));
  EXPECT_THROW(extend_alphabet(re("ab", "ab"), Alphabet("a")), AlphabetMismatch);
}

TEST(RightLinear, DfaRoundTrip) {
  const auto g1 = dfa_to_rlg(dfa_reverse(re("(abc)*", "abc")), "S");
  EXPECT_EQ(g1.nonterminals, (std::vector<std::string>{"S0", "S1", "S2"}));
  EXPECT_EQ(g1.rules.size(), 4U);
  const auto g2 = dfa_to_rlg(dfa_reverse(re("(udd)*", "du")), "T");
  EXPECT_EQ(g2.nonterminals.size(), 3U);
  // Empty language keeps only the start.
  const auto empty = dfa_to_rlg(Dfa::empty_language(Alphabet("ab")));
  EXPECT_EQ(empty.nonterminals.size(), 1U);
  EXPECT_TRUE(empty.rules.empty());

  std::mt19937 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const auto raw = oracle::random_dfa(rng, "ab", 5);
    const auto g = dfa_to_rlg(raw.to_dfa());
    for (const auto& r : g.rules) {
      if (!r.step) {
        EXPECT_TRUE(std::count_if(g.rules.begin(), g.rules.end(),
                                  [&](const auto& s) { return s.lhs == r.lhs && !s.step; }) == 1);
      }
    }
    EXPECT_EQ(oracle::sorted(oracle::rlg_language(g, g.start, 7)), oracle::sorted(raw.language(7)));
    expect_same_language(rlg_to_dfa(g), raw, 7);
  }
}

TEST(Enumerate, ExamplesAndCounts) {
  EXPECT_EQ(enumerate_dfa(re("(abc)*", "abc"), 7), words({"", "abc", "abcabc"}));
  EXPECT_TRUE(enumerate_dfa(Dfa::empty_language(Alphabet("a")), 10).empty());
  EXPECT_EQ(count_words(re("(abc)*", "abc"), 6), 1U);
  EXPECT_EQ(count_words(re("(a|b)*", "ab"), 3), 8U);
  EXPECT_EQ(count_words(re("a*", "ab"), 0), 1U);
  EXPECT_EQ(count_words(re("a+", "ab"), 0), 0U);
  EXPECT_EQ(count_words(Dfa::universal(Alphabet("ab")), 70), UINT64_MAX);
  EXPECT_THROW(enumerate_dfa(re("a*", "a"), 30, 24), CapExceeded);
}

TEST(Enumerate, RandomAutomataMatchBruteForce) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto raw = oracle::random_dfa(rng, "abc", 4);
    const Dfa d = raw.to_dfa();
    const auto expected = raw.language(6);
    EXPECT_EQ(enumerate_dfa(d, 6), oracle::sorted(expected));
    const auto counts = count_words_upto(d, 6);
    for (std::size_t n = 0; n <= 6; ++n) {
      const auto slice = words_of_length(d, n);
      EXPECT_EQ(counts[n], slice.size());
      EXPECT_EQ(count_words(d, n), slice.size());
    }
  }
}

TEST(Enumerate, CapFromEnvironment) {
  ::setenv("FOLDLANG_MAX_ENUM", "5", 1);
  EXPECT_EQ(enumeration_cap(), 5U);
  EXPECT_THROW(enumerate_dfa(re("a*", "a"), 6), CapExceeded);
  ::unsetenv("FOLDLANG_MAX_ENUM");
  EXPECT_EQ(enumeration_cap(), kDefaultEnumerationCap);
}

TEST(Dump, Format) {
  const Dfa d = re("ab", "ab");
  const std::string text = dump(d);
  EXPECT_EQ(text.rfind("alphabet: a b\n", 0), 0U) << text;
  EXPECT_NE(text.find("0 a -> 1"), std::string::npos) << text;
  EXPECT_EQ(compact_dump(Dfa::universal(Alphabet("du"))),
            "{alphabet=du states=1 start=0 accept=[0] delta=0,0}");
}

TEST(CanonicalEnumeration, CountsMatchExhaustiveTableCheck) {
  for (std::size_t k = 1; k <= 3; ++k) {
    for (std::size_t n = 1; n <= 3; ++n) {
      if (n == 3 && k == 3) continue;
      std::string sigma = std::string("abc").substr(0, k);
      std::uint64_t expected = 0;
      for (std::size_t m = 1; m <= n; ++m) {
        expected += oracle::count_canonical_tables(m, k) << m;
      }
      std::uint64_t seen = 0;
      for_each_canonical_dfa(Alphabet(sigma), n, [&](const Dfa& d) {
        ++seen;
        EXPECT_EQ(canonical_numbering(d), d);
        return true;
      });
      EXPECT_EQ(seen, expected) << "n=" << n << " k=" << k;
    }
  }
  // Two states over seven symbols: 2 + 4 * (2^7 - 1) * 2^7.
  std::uint64_t seven = 0;
  for_each_canonical_dfa(Alphabet("abcdef#"), 2, [&](const Dfa&) {
    ++seven;
    return true;
  });
  EXPECT_EQ(seven, 65026U);
}
