#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "foldlang/automata.hpp"
#include "foldlang/linear_grammar.hpp"

namespace foldlang {

inline constexpr std::size_t kBruteForceCap = 14;
// Word lists in reports are cut to this many entries; totals are kept.
inline constexpr std::size_t kReportListLimit = 20;

// A folding system: core language over Sigma, procedure language over {u, d}.
class FSystem {
 public:
  // Throws ProcAlphabetError if the procedure alphabet is not within {u, d}.
  // The procedure automaton is widened to exactly {u, d}.
  FSystem(Dfa core, Dfa proc);

  const Dfa& core() const noexcept { return core_; }
  const Dfa& proc() const noexcept { return proc_; }

 private:
  Dfa core_;
  Dfa proc_;
};

// All folds h(w, v) with w in the core, v in the procedure language and
// |w| = |v| <= max_length, deduplicated, in canonical order. This is the
// reference oracle for everything grammar-based. Lengths are evaluated
// concurrently and merged deterministically.
std::vector<Word> brute_language(const FSystem& phi, std::size_t max_length,
                                 std::size_t cap = kBruteForceCap);
// Folds of exactly the given length.
WordSet brute_words_of_length(const FSystem& phi, std::size_t length);

bool member_fsystem(const FSystem& phi, std::string_view word);

struct EquivalenceReport {
  std::size_t max_length = 0;
  bool equivalent = true;
  std::size_t system_count = 0;
  std::size_t grammar_count = 0;
  // Words of the system missing from the grammar, and words the grammar has
  // that the system does not. Truncated to kReportListLimit.
  std::vector<Word> missing;
  std::vector<Word> extra;
  std::size_t missing_total = 0;
  std::size_t extra_total = 0;
  // Symbols of the core alphabet absent from the grammar terminals and vice versa.
  std::string symbols_only_in_system;
  std::string symbols_only_in_grammar;
};

// Compares two canonical word lists; used by every bounded comparison.
EquivalenceReport compare_word_lists(const std::vector<Word>& system,
                                     const std::vector<Word>& grammar, std::size_t max_length);

EquivalenceReport bounded_equiv(const FSystem& phi, const LinearGrammar& g, std::size_t max_length,
                                std::size_t cap = kBruteForceCap);

struct ClaimPairResult {
  std::string left;   // nonterminal of g1
  std::string right;  // nonterminal of g2
  bool passed = true;
  EquivalenceReport report;
};

struct ClaimAReport {
  std::size_t max_length = 0;
  std::size_t pairs_checked = 0;
  std::vector<ClaimPairResult> failures;
  bool passed() const noexcept { return failures.empty(); }
};

// For every (A1, A2), compares the system (L(g1^A1)^R, L(g2^A2)^R) with the
// product grammar started at (A1, A2), up to max_length.
ClaimAReport claim_A_check(const RightLinearGrammar& g1, const RightLinearGrammar& g2,
                           std::size_t max_length, std::size_t cap = kBruteForceCap);

struct InterchangeReport {
  std::string own_first;   // fold(w1, v1)
  std::string own_second;  // fold(w2, v2)
  std::string cross_first;   // fold(w1, v2)
  std::string cross_second;  // fold(w2, v1)
  bool cross_first_member = false;
  bool cross_second_member = false;
  bool holds() const noexcept { return cross_first_member && cross_second_member; }
};

// Throws PreconditionViolation when a word is outside its language or the
// four lengths differ.
InterchangeReport interchange_demo(const FSystem& phi, std::string_view w1, std::string_view v1,
                                   std::string_view w2, std::string_view v2);

// --- Language specs --------------------------------------------------------

// A regex, or `@path` naming a right-linear grammar file. Relative paths are
// resolved against base_dir.
Dfa load_language(std::string_view spec, const std::optional<Alphabet>& alphabet_hint = std::nullopt,
                  const std::filesystem::path& base_dir = {});
// Procedure spec: always over {u, d}.
Dfa load_procedure(std::string_view spec, const std::filesystem::path& base_dir = {});

// Two lines `core: <regex or @grammar-file>` and `proc: <regex>`.
FSystem parse_fsystem_spec(std::string_view text, const std::filesystem::path& base_dir = {});

std::string read_file(const std::filesystem::path& path);

}  // namespace foldlang
