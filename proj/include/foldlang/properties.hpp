#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "foldlang/automata.hpp"
#include "foldlang/folding.hpp"
#include "foldlang/fsystem.hpp"
#include "foldlang/linear_grammar.hpp"

namespace foldlang {

// S -> S1 | S2, S1 -> a S1 b c | a # b c, S2 -> d e S2 f | d e # f
// over {a, b, c, d, e, f, #}.
LinearGrammar thm2_language();

// Exactly one '#', splitting the word as u1 # u2 with |u1| <= 2|u2| and
// |u2| <= 2|u1|.
bool balance_check(std::string_view word);

// A simultaneous loop of the core and procedure automata inside a prefix
// pair: the core state after x1 equals the state after x1 y1, and likewise
// for x2 and x2 y2.
struct PumpDecomposition {
  std::string x1, y1, z1;
  DirectionWord x2, y2, z2;
  std::size_t core_state_count = 0;  // N1
  std::size_t proc_state_count = 0;  // N2
  std::size_t bound = 0;             // N1 * N2
  // The analyzed prefixes can still be completed to accepted words. The
  // decomposition is only useful for pumping members when both hold.
  bool core_prefix_live = false;
  bool proc_prefix_live = false;

  std::string pumped_core(std::size_t k) const;
  DirectionWord pumped_proc(std::size_t k) const;
};

// Picks the first repeated state pair: the loop closing earliest, starting at
// the unique earlier occurrence. Throws LengthMismatch, TooShort when
// |w1| <= N1 * N2, or PreconditionViolation for symbols outside the alphabets.
PumpDecomposition pump_decompose(const Dfa& core, const Dfa& proc, std::string_view w1,
                                 std::string_view v1);

// Calls visit for every total DFA over the alphabet with 1..max_states
// states in breadth-first canonical numbering (every state reachable, states
// numbered in discovery order), ordered by state count, then transition
// table, then accepting set. Stops early when visit returns false.
void for_each_canonical_dfa(const Alphabet& alphabet, std::size_t max_states,
                            const std::function<bool(const Dfa&)>& visit);

struct RefuterConfig {
  std::size_t max_core_states = 1;
  std::size_t max_proc_states = 1;
  std::size_t max_length = 1;
  Alphabet core_alphabet;
  std::size_t cap = kBruteForceCap;
  // 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;

  // Throws PreconditionViolation or CapExceeded.
  void validate() const;
};

struct RefuterOutcome {
  enum class Verdict { Refuted, Found };

  Verdict verdict = Verdict::Refuted;
  std::optional<FSystem> witness;
  std::uint64_t candidates_tried = 0;
  std::uint64_t candidates_pruned = 0;
  // Pruned candidate pairs by the first length whose word counts ruled them out.
  std::vector<std::uint64_t> pruned_at_length;
  // Pairs that survived pruning and were compared word by word.
  std::uint64_t candidates_compared = 0;
};

// Exhaustive search over canonical core and procedure automata within the
// bounds for an F-system agreeing with target up to max_length. Pairs are
// pruned by per-length word counts before any folding. Found carries the
// smallest witness in enumeration order (core first, then procedure). When
// progress is given, writes `tried=<n> pruned=<n> elapsed=<s>` lines as the
// candidate count passes multiples of 10^4.
RefuterOutcome refute_bounded(const LinearGrammar& target, const RefuterConfig& config,
                              std::ostream* progress = nullptr);

// `REFUTED bounds=(s,p,len)` or `FOUND core=<dump> proc=<dump>`.
std::string verdict_line(const RefuterOutcome& outcome, const RefuterConfig& config);

struct UnionDemoReport {
  std::size_t max_length = 0;
  std::vector<Word> union_words;     // L((abc)*,(udd)*) u L((edf)*,(uud)*)
  std::vector<Word> expected_words;  // a^n (bc)^n and (de)^n f^n
  std::vector<Word> target_words;    // thm2_language()
  bool matches_expected = false;
  bool equals_target = false;
  // Smallest word of the symmetric difference with the target, and the
  // smallest target word outside the union.
  std::optional<Word> first_divergence;
  std::optional<Word> first_target_word_outside_union;
};

UnionDemoReport union_demo(std::size_t max_length, std::size_t cap = kDefaultEnumerationCap);

}  // namespace foldlang
