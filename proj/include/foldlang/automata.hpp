#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace foldlang {

// Symbols are printable, non-space ASCII characters.
using Symbol = char;
using Word = std::string;
using State = std::uint32_t;

bool is_valid_symbol(char c) noexcept;

// Orders words by length, then lexicographically by symbol code. Alphabets
// are kept sorted by code, so this is also the alphabet order.
struct CanonicalOrder {
  bool operator()(std::string_view a, std::string_view b) const noexcept {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
  using is_transparent = void;
};

using WordSet = std::set<Word, CanonicalOrder>;

// Default enumeration length cap; the FOLDLANG_MAX_ENUM environment variable
// overrides it.
inline constexpr std::size_t kDefaultEnumerationCap = 24;
std::size_t enumeration_cap();

class Alphabet {
 public:
  Alphabet() = default;
  // Symbols are sorted and deduplicated. Throws ParseError on an invalid symbol.
  explicit Alphabet(std::string_view symbols);

  std::size_t size() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }
  std::string_view symbols() const noexcept { return symbols_; }

  std::optional<std::size_t> index_of(Symbol c) const noexcept;
  bool contains(Symbol c) const noexcept { return index_of(c).has_value(); }
  bool contains_all(std::string_view word) const noexcept;
  bool is_subset_of(const Alphabet& other) const noexcept;
  Alphabet united_with(const Alphabet& other) const;

  auto begin() const noexcept { return symbols_.begin(); }
  auto end() const noexcept { return symbols_.end(); }

  friend bool operator==(const Alphabet& a, const Alphabet& b) noexcept {
    return a.symbols_ == b.symbols_;
  }

 private:
  std::string symbols_;
  std::array<std::int16_t, 128> index_{make_empty_index()};

  static constexpr std::array<std::int16_t, 128> make_empty_index() {
    std::array<std::int16_t, 128> idx{};
    for (auto& v : idx) v = -1;
    return idx;
  }
};

// The procedure alphabet {d, u}.
const Alphabet& direction_alphabet();

// Nondeterministic automaton with epsilon moves; an intermediate form only.
struct Nfa {
  struct Transition {
    State from;
    std::optional<Symbol> symbol;  // nullopt is epsilon
    State to;
  };

  std::size_t state_count = 0;
  State start = 0;
  std::vector<bool> accepting;
  std::vector<Transition> transitions;

  State add_state(bool accept = false);
  void add(State from, std::optional<Symbol> symbol, State to);
};

// Total deterministic automaton. delta is stored row-major: the successor of
// state q on the i-th alphabet symbol is delta[q * |alphabet| + i].
class Dfa {
 public:
  // Validates totality and id ranges; throws std::invalid_argument otherwise.
  Dfa(Alphabet alphabet, std::size_t state_count, State start, std::vector<bool> accepting,
      std::vector<State> delta);

  static Dfa empty_language(const Alphabet& alphabet);
  static Dfa universal(const Alphabet& alphabet);
  static Dfa epsilon_only(const Alphabet& alphabet);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t state_count() const noexcept { return state_count_; }
  State start() const noexcept { return start_; }
  bool accepting(State q) const { return accepting_[q]; }
  const std::vector<bool>& accepting_states() const noexcept { return accepting_; }
  State next(State q, std::size_t symbol_index) const {
    return delta_[q * alphabet_.size() + symbol_index];
  }
  const std::vector<State>& delta() const noexcept { return delta_; }

  // State reached on word, or nullopt if it contains a symbol outside the alphabet.
  std::optional<State> run(std::string_view word) const;
  std::optional<State> run_from(State q, std::string_view word) const;
  bool accepts(std::string_view word) const;

  // States from which some accepting state is reachable.
  std::vector<bool> live_states() const;

  friend bool operator==(const Dfa&, const Dfa&) = default;

 private:
  Alphabet alphabet_;
  std::size_t state_count_;
  State start_;
  std::vector<bool> accepting_;
  std::vector<State> delta_;
};

// Normal-form right-linear grammar: every rule is A -> a B or A -> eps.
struct RightLinearGrammar {
  using NonterminalId = std::size_t;
  struct Step {
    Symbol symbol;
    NonterminalId target;
    friend bool operator==(const Step&, const Step&) = default;
  };
  struct Rule {
    NonterminalId lhs;
    std::optional<Step> step;  // nullopt is A -> eps
    friend bool operator==(const Rule&, const Rule&) = default;
  };

  std::vector<std::string> nonterminals;
  Alphabet terminals;
  std::vector<Rule> rules;
  NonterminalId start = 0;

  // Throws std::invalid_argument when a rule or the start is out of range or
  // uses a terminal outside the alphabet.
  void validate() const;
  std::optional<NonterminalId> find(std::string_view name) const;
};

// Determinization by subset construction over the given alphabet. The result
// is total but not minimized.
Dfa determinize(const Nfa& nfa, const Alphabet& alphabet);

// Partition-refinement minimization followed by breadth-first renumbering.
Dfa minimize(const Dfa& d);

// Reachable part, renumbered in breadth-first order from the start (symbols in
// alphabet order). Language and totality are preserved.
Dfa canonical_numbering(const Dfa& d);

Dfa dfa_reverse(const Dfa& d);
Dfa dfa_intersect(const Dfa& d1, const Dfa& d2);
Dfa dfa_union(const Dfa& d1, const Dfa& d2);
Dfa dfa_complement(const Dfa& d);
bool dfa_equiv(const Dfa& d1, const Dfa& d2);

// Same language over a larger alphabet; new symbols lead to a sink.
Dfa extend_alphabet(const Dfa& d, const Alphabet& superset);

Dfa length_filter(const Alphabet& alphabet, std::size_t modulus, std::size_t residue,
                  std::size_t min_length);

// One nonterminal per reachable state that can still reach acceptance (the
// start is always kept). Nonterminals are named prefix + index in
// breadth-first order.
RightLinearGrammar dfa_to_rlg(const Dfa& d, std::string_view prefix = "S");
Dfa rlg_to_dfa(const RightLinearGrammar& g);

std::vector<Word> enumerate_dfa(const Dfa& d, std::size_t max_length);
std::vector<Word> enumerate_dfa(const Dfa& d, std::size_t max_length, std::size_t cap);
// Words of exactly the given length, lexicographic.
std::vector<Word> words_of_length(const Dfa& d, std::size_t length);

// Saturates at UINT64_MAX.
std::uint64_t count_words(const Dfa& d, std::size_t length);
// Counts for every length 0..max_length.
std::vector<std::uint64_t> count_words_upto(const Dfa& d, std::size_t max_length);

// Debug dump: header lines then one `state symbol -> state` line per transition.
std::string dump(const Dfa& d);
// Single-line form used in refuter verdicts.
std::string compact_dump(const Dfa& d);

}  // namespace foldlang
