#include "foldlang/automata.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <deque>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "foldlang/error.hpp"

namespace foldlang {

bool is_valid_symbol(char c) noexcept { return c > 0x20 && c < 0x7f; }

std::size_t enumeration_cap() {
  const char* env = std::getenv("FOLDLANG_MAX_ENUM");
  if (env == nullptr) return kDefaultEnumerationCap;
  std::string_view text(env);
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || value == 0) {
    return kDefaultEnumerationCap;
  }
  return value;
}

// ---------------------------------------------------------------------------
// Alphabet

Alphabet::Alphabet(std::string_view symbols) {
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (!is_valid_symbol(symbols[i])) {
      throw ParseError("invalid alphabet symbol (must be printable, non-space ASCII)", i);
    }
  }
  symbols_.assign(symbols.begin(), symbols.end());
  std::sort(symbols_.begin(), symbols_.end());
  symbols_.erase(std::unique(symbols_.begin(), symbols_.end()), symbols_.end());
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    index_[static_cast<unsigned char>(symbols_[i])] = static_cast<std::int16_t>(i);
  }
}

std::optional<std::size_t> Alphabet::index_of(Symbol c) const noexcept {
  auto u = static_cast<unsigned char>(c);
  if (u >= index_.size() || index_[u] < 0) return std::nullopt;
  return static_cast<std::size_t>(index_[u]);
}

bool Alphabet::contains_all(std::string_view word) const noexcept {
  return std::all_of(word.begin(), word.end(), [this](char c) { return contains(c); });
}

bool Alphabet::is_subset_of(const Alphabet& other) const noexcept {
  return other.contains_all(symbols_);
}

Alphabet Alphabet::united_with(const Alphabet& other) const {
  return Alphabet(symbols_ + other.symbols_);
}

const Alphabet& direction_alphabet() {
  static const Alphabet gamma("ud");
  return gamma;
}

// ---------------------------------------------------------------------------
// Nfa

State Nfa::add_state(bool accept) {
  accepting.push_back(accept);
  return static_cast<State>(state_count++);
}

void Nfa::add(State from, std::optional<Symbol> symbol, State to) {
  transitions.push_back({from, symbol, to});
}

// ---------------------------------------------------------------------------
// Dfa

Dfa::Dfa(Alphabet alphabet, std::size_t state_count, State start, std::vector<bool> accepting,
         std::vector<State> delta)
    : alphabet_(std::move(alphabet)),
      state_count_(state_count),
      start_(start),
      accepting_(std::move(accepting)),
      delta_(std::move(delta)) {
  if (state_count_ == 0) throw std::invalid_argument("DFA needs at least one state");
  if (start_ >= state_count_) throw std::invalid_argument("DFA start out of range");
  if (accepting_.size() != state_count_) throw std::invalid_argument("DFA accepting size");
  if (delta_.size() != state_count_ * alphabet_.size()) {
    throw std::invalid_argument("DFA transition table is not total");
  }
  for (State t : delta_) {
    if (t >= state_count_) throw std::invalid_argument("DFA transition target out of range");
  }
}

Dfa Dfa::empty_language(const Alphabet& alphabet) {
  return Dfa(alphabet, 1, 0, {false}, std::vector<State>(alphabet.size(), 0));
}

Dfa Dfa::universal(const Alphabet& alphabet) {
  return Dfa(alphabet, 1, 0, {true}, std::vector<State>(alphabet.size(), 0));
}

Dfa Dfa::epsilon_only(const Alphabet& alphabet) {
  if (alphabet.empty()) return universal(alphabet);
  std::vector<State> delta(2 * alphabet.size(), 1);
  return Dfa(alphabet, 2, 0, {true, false}, std::move(delta));
}

std::optional<State> Dfa::run_from(State q, std::string_view word) const {
  for (char c : word) {
    auto idx = alphabet_.index_of(c);
    if (!idx) return std::nullopt;
    q = next(q, *idx);
  }
  return q;
}

std::optional<State> Dfa::run(std::string_view word) const { return run_from(start_, word); }

bool Dfa::accepts(std::string_view word) const {
  auto q = run(word);
  return q.has_value() && accepting_[*q];
}

std::vector<bool> Dfa::live_states() const {
  std::vector<std::vector<State>> preds(state_count_);
  for (State q = 0; q < state_count_; ++q) {
    for (std::size_t a = 0; a < alphabet_.size(); ++a) preds[next(q, a)].push_back(q);
  }
  std::vector<bool> live(accepting_);
  std::deque<State> work;
  for (State q = 0; q < state_count_; ++q) {
    if (live[q]) work.push_back(q);
  }
  while (!work.empty()) {
    State q = work.front();
    work.pop_front();
    for (State p : preds[q]) {
      if (!live[p]) {
        live[p] = true;
        work.push_back(p);
      }
    }
  }
  return live;
}

// ---------------------------------------------------------------------------
// RightLinearGrammar

void RightLinearGrammar::validate() const {
  if (start >= nonterminals.size()) throw std::invalid_argument("start nonterminal out of range");
  for (const auto& r : rules) {
    if (r.lhs >= nonterminals.size()) throw std::invalid_argument("rule lhs out of range");
    if (r.step) {
      if (r.step->target >= nonterminals.size()) {
        throw std::invalid_argument("rule target out of range");
      }
      if (!terminals.contains(r.step->symbol)) {
        throw std::invalid_argument("rule terminal outside alphabet");
      }
    }
  }
}

std::optional<RightLinearGrammar::NonterminalId> RightLinearGrammar::find(
    std::string_view name) const {
  for (std::size_t i = 0; i < nonterminals.size(); ++i) {
    if (nonterminals[i] == name) return i;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Constructions

namespace {

std::vector<State> epsilon_closure(const std::vector<std::vector<State>>& eps,
                                   std::vector<State> states) {
  std::vector<bool> seen(eps.size(), false);
  std::vector<State> stack;
  for (State s : states) {
    if (!seen[s]) {
      seen[s] = true;
      stack.push_back(s);
    }
  }
  std::vector<State> out;
  while (!stack.empty()) {
    State s = stack.back();
    stack.pop_back();
    out.push_back(s);
    for (State t : eps[s]) {
      if (!seen[t]) {
        seen[t] = true;
        stack.push_back(t);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void require_same_alphabet(const Dfa& d1, const Dfa& d2) {
  if (!(d1.alphabet() == d2.alphabet())) {
    throw AlphabetMismatch("automata alphabets differ: {" + std::string(d1.alphabet().symbols()) +
                           "} vs {" + std::string(d2.alphabet().symbols()) + "}");
  }
}

template <typename AcceptFn>
Dfa product(const Dfa& d1, const Dfa& d2, AcceptFn accept) {
  require_same_alphabet(d1, d2);
  const std::size_t k = d1.alphabet().size();
  std::map<std::pair<State, State>, State> ids;
  std::deque<std::pair<State, State>> work;
  std::vector<bool> accepting;
  std::vector<State> delta;
  auto intern = [&](std::pair<State, State> p) {
    auto [it, inserted] = ids.emplace(p, static_cast<State>(ids.size()));
    if (inserted) {
      work.push_back(p);
      accepting.push_back(accept(d1.accepting(p.first), d2.accepting(p.second)));
    }
    return it->second;
  };
  intern({d1.start(), d2.start()});
  while (!work.empty()) {
    auto p = work.front();
    work.pop_front();
    State id = ids.at(p);
    delta.resize(std::max<std::size_t>(delta.size(), (id + 1) * k));
    for (std::size_t a = 0; a < k; ++a) {
      delta[id * k + a] = intern({d1.next(p.first, a), d2.next(p.second, a)});
    }
  }
  delta.resize(ids.size() * k);
  return minimize(Dfa(d1.alphabet(), ids.size(), 0, std::move(accepting), std::move(delta)));
}

}  // namespace

Dfa determinize(const Nfa& nfa, const Alphabet& alphabet) {
  const std::size_t k = alphabet.size();
  std::vector<std::vector<State>> eps(nfa.state_count);
  std::vector<std::vector<std::vector<State>>> moves(nfa.state_count,
                                                     std::vector<std::vector<State>>(k));
  for (const auto& t : nfa.transitions) {
    if (!t.symbol) {
      eps[t.from].push_back(t.to);
      continue;
    }
    auto idx = alphabet.index_of(*t.symbol);
    if (!idx) {
      throw AlphabetMismatch(std::string("symbol '") + *t.symbol + "' outside alphabet");
    }
    moves[t.from][*idx].push_back(t.to);
  }

  std::map<std::vector<State>, State> ids;
  std::vector<std::vector<State>> sets;
  std::vector<State> delta;
  std::vector<bool> accepting;
  auto intern = [&](std::vector<State> set) {
    auto [it, inserted] = ids.emplace(set, static_cast<State>(sets.size()));
    if (inserted) {
      bool acc = std::any_of(set.begin(), set.end(), [&](State s) { return nfa.accepting[s]; });
      accepting.push_back(acc);
      sets.push_back(std::move(set));
    }
    return it->second;
  };
  intern(epsilon_closure(eps, {nfa.start}));
  for (std::size_t i = 0; i < sets.size(); ++i) {
    delta.resize((i + 1) * k);
    for (std::size_t a = 0; a < k; ++a) {
      std::vector<State> target;
      for (State s : sets[i]) {
        target.insert(target.end(), moves[s][a].begin(), moves[s][a].end());
      }
      State id = intern(epsilon_closure(eps, std::move(target)));
      delta[i * k + a] = id;
    }
  }
  return Dfa(alphabet, sets.size(), 0, std::move(accepting), std::move(delta));
}

Dfa canonical_numbering(const Dfa& d) {
  const std::size_t k = d.alphabet().size();
  std::vector<std::int64_t> id(d.state_count(), -1);
  std::vector<State> order;
  id[d.start()] = 0;
  order.push_back(d.start());
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t a = 0; a < k; ++a) {
      State t = d.next(order[i], a);
      if (id[t] < 0) {
        id[t] = static_cast<std::int64_t>(order.size());
        order.push_back(t);
      }
    }
  }
  std::vector<bool> accepting(order.size());
  std::vector<State> delta(order.size() * k);
  for (std::size_t i = 0; i < order.size(); ++i) {
    accepting[i] = d.accepting(order[i]);
    for (std::size_t a = 0; a < k; ++a) {
      delta[i * k + a] = static_cast<State>(id[d.next(order[i], a)]);
    }
  }
  return Dfa(d.alphabet(), order.size(), 0, std::move(accepting), std::move(delta));
}

Dfa minimize(const Dfa& input) {
  const Dfa d = canonical_numbering(input);
  const std::size_t n = d.state_count();
  const std::size_t k = d.alphabet().size();

  // Moore refinement: split classes by (class, successor classes) until stable.
  std::vector<State> cls(n);
  for (State q = 0; q < n; ++q) cls[q] = d.accepting(q) ? 1 : 0;
  std::size_t class_count = 0;
  while (true) {
    std::map<std::vector<State>, State> signatures;
    std::vector<State> refined(n);
    for (State q = 0; q < n; ++q) {
      std::vector<State> sig;
      sig.reserve(k + 1);
      sig.push_back(cls[q]);
      for (std::size_t a = 0; a < k; ++a) sig.push_back(cls[d.next(q, a)]);
      auto [it, inserted] = signatures.emplace(std::move(sig), static_cast<State>(signatures.size()));
      refined[q] = it->second;
    }
    cls = std::move(refined);
    if (signatures.size() == class_count) break;
    class_count = signatures.size();
  }

  std::vector<bool> accepting(class_count);
  std::vector<State> delta(class_count * k);
  for (State q = 0; q < n; ++q) {
    accepting[cls[q]] = d.accepting(q);
    for (std::size_t a = 0; a < k; ++a) delta[cls[q] * k + a] = cls[d.next(q, a)];
  }
  return canonical_numbering(
      Dfa(d.alphabet(), class_count, cls[d.start()], std::move(accepting), std::move(delta)));
}

Dfa dfa_reverse(const Dfa& d) {
  Nfa nfa;
  for (State q = 0; q < d.state_count(); ++q) nfa.add_state(q == d.start());
  State start = nfa.add_state(false);
  nfa.start = start;
  for (State q = 0; q < d.state_count(); ++q) {
    if (d.accepting(q)) nfa.add(start, std::nullopt, q);
    for (std::size_t a = 0; a < d.alphabet().size(); ++a) {
      nfa.add(d.next(q, a), d.alphabet()[a], q);
    }
  }
  return minimize(determinize(nfa, d.alphabet()));
}

Dfa dfa_intersect(const Dfa& d1, const Dfa& d2) {
  return product(d1, d2, [](bool a, bool b) { return a && b; });
}

Dfa dfa_union(const Dfa& d1, const Dfa& d2) {
  return product(d1, d2, [](bool a, bool b) { return a || b; });
}

Dfa dfa_complement(const Dfa& d) {
  std::vector<bool> accepting(d.state_count());
  for (State q = 0; q < d.state_count(); ++q) accepting[q] = !d.accepting(q);
  return minimize(Dfa(d.alphabet(), d.state_count(), d.start(), std::move(accepting), d.delta()));
}

bool dfa_equiv(const Dfa& d1, const Dfa& d2) {
  require_same_alphabet(d1, d2);
  const std::size_t k = d1.alphabet().size();
  std::vector<bool> seen(d1.state_count() * d2.state_count(), false);
  std::deque<std::pair<State, State>> work{{d1.start(), d2.start()}};
  seen[d1.start() * d2.state_count() + d2.start()] = true;
  while (!work.empty()) {
    auto [p, q] = work.front();
    work.pop_front();
    if (d1.accepting(p) != d2.accepting(q)) return false;
    for (std::size_t a = 0; a < k; ++a) {
      State np = d1.next(p, a);
      State nq = d2.next(q, a);
      auto slot = np * d2.state_count() + nq;
      if (!seen[slot]) {
        seen[slot] = true;
        work.emplace_back(np, nq);
      }
    }
  }
  return true;
}

Dfa extend_alphabet(const Dfa& d, const Alphabet& superset) {
  if (!d.alphabet().is_subset_of(superset)) {
    throw AlphabetMismatch("target alphabet does not contain {" +
                           std::string(d.alphabet().symbols()) + "}");
  }
  if (d.alphabet() == superset) return d;
  const std::size_t k = superset.size();
  const std::size_t n = d.state_count();
  const State sink = static_cast<State>(n);
  std::vector<bool> accepting(d.accepting_states());
  accepting.push_back(false);
  std::vector<State> delta((n + 1) * k, sink);
  for (State q = 0; q < n; ++q) {
    for (std::size_t a = 0; a < k; ++a) {
      if (auto old = d.alphabet().index_of(superset[a])) delta[q * k + a] = d.next(q, *old);
    }
  }
  return minimize(Dfa(superset, n + 1, d.start(), std::move(accepting), std::move(delta)));
}

Dfa length_filter(const Alphabet& alphabet, std::size_t modulus, std::size_t residue,
                  std::size_t min_length) {
  if (modulus == 0 || residue >= modulus) {
    throw InvalidResidue("residue " + std::to_string(residue) + " is not below modulus " +
                         std::to_string(modulus));
  }
  // States 0..min_length-1 count short prefixes; the cycle min_length..+modulus
  // tracks the residue of longer words.
  const std::size_t k = alphabet.size();
  const std::size_t n = min_length + modulus;
  auto cycle_state = [&](std::size_t length) {
    return static_cast<State>(min_length + length % modulus);
  };
  std::vector<bool> accepting(n, false);
  std::vector<State> delta(n * k);
  for (std::size_t q = 0; q < n; ++q) {
    State target;
    if (q + 1 < min_length) {
      target = static_cast<State>(q + 1);
    } else if (q < min_length) {
      target = cycle_state(min_length);
    } else {
      target = static_cast<State>(min_length + (q - min_length + 1) % modulus);
    }
    for (std::size_t a = 0; a < k; ++a) delta[q * k + a] = target;
  }
  for (std::size_t c = 0; c < modulus; ++c) {
    accepting[min_length + c] = (c == residue);
  }
  // A word of length min_length sits in cycle slot min_length % modulus.
  State start = min_length == 0 ? cycle_state(0) : 0;
  return minimize(Dfa(alphabet, n, start, std::move(accepting), std::move(delta)));
}

RightLinearGrammar dfa_to_rlg(const Dfa& input, std::string_view prefix) {
  const Dfa d = canonical_numbering(input);
  const auto live = d.live_states();
  const std::size_t k = d.alphabet().size();

  std::vector<std::int64_t> id(d.state_count(), -1);
  RightLinearGrammar g;
  g.terminals = d.alphabet();
  for (State q = 0; q < d.state_count(); ++q) {
    if (q == d.start() || live[q]) {
      id[q] = static_cast<std::int64_t>(g.nonterminals.size());
      g.nonterminals.push_back(std::string(prefix) + std::to_string(g.nonterminals.size()));
    }
  }
  g.start = static_cast<std::size_t>(id[d.start()]);
  for (State q = 0; q < d.state_count(); ++q) {
    if (id[q] < 0) continue;
    auto lhs = static_cast<std::size_t>(id[q]);
    if (d.accepting(q)) g.rules.push_back({lhs, std::nullopt});
    for (std::size_t a = 0; a < k; ++a) {
      State t = d.next(q, a);
      if (live[t]) {
        g.rules.push_back({lhs, RightLinearGrammar::Step{d.alphabet()[a], static_cast<std::size_t>(id[t])}});
      }
    }
  }
  return g;
}

Dfa rlg_to_dfa(const RightLinearGrammar& g) {
  g.validate();
  Nfa nfa;
  for (std::size_t i = 0; i < g.nonterminals.size(); ++i) nfa.add_state(false);
  nfa.start = static_cast<State>(g.start);
  for (const auto& r : g.rules) {
    if (!r.step) {
      nfa.accepting[r.lhs] = true;
    } else {
      nfa.add(static_cast<State>(r.lhs), r.step->symbol, static_cast<State>(r.step->target));
    }
  }
  return minimize(determinize(nfa, g.terminals));
}

// ---------------------------------------------------------------------------
// Enumeration and counting

std::vector<Word> words_of_length(const Dfa& d, std::size_t length) {
  const std::size_t n = d.state_count();
  const std::size_t k = d.alphabet().size();
  // reach[r][q]: some word of exactly r symbols leads from q to acceptance.
  std::vector<std::vector<bool>> reach(length + 1, std::vector<bool>(n));
  reach[0] = d.accepting_states();
  for (std::size_t r = 1; r <= length; ++r) {
    for (State q = 0; q < n; ++q) {
      bool any = false;
      for (std::size_t a = 0; a < k && !any; ++a) any = reach[r - 1][d.next(q, a)];
      reach[r][q] = any;
    }
  }
  std::vector<Word> out;
  if (!reach[length][d.start()]) return out;

  Word current;
  current.reserve(length);
  // Depth-first in alphabet order yields lexicographic output.
  auto visit = [&](auto& self, State q) -> void {
    std::size_t remaining = length - current.size();
    if (remaining == 0) {
      out.push_back(current);
      return;
    }
    for (std::size_t a = 0; a < k; ++a) {
      State t = d.next(q, a);
      if (!reach[remaining - 1][t]) continue;
      current.push_back(d.alphabet()[a]);
      self(self, t);
      current.pop_back();
    }
  };
  visit(visit, d.start());
  return out;
}

std::vector<Word> enumerate_dfa(const Dfa& d, std::size_t max_length, std::size_t cap) {
  if (max_length > cap) {
    throw CapExceeded("enumeration length " + std::to_string(max_length) + " exceeds cap " +
                      std::to_string(cap));
  }
  std::vector<Word> out;
  for (std::size_t len = 0; len <= max_length; ++len) {
    auto words = words_of_length(d, len);
    out.insert(out.end(), std::make_move_iterator(words.begin()),
               std::make_move_iterator(words.end()));
  }
  return out;
}

std::vector<Word> enumerate_dfa(const Dfa& d, std::size_t max_length) {
  return enumerate_dfa(d, max_length, enumeration_cap());
}

std::vector<std::uint64_t> count_words_upto(const Dfa& d, std::size_t max_length) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  const std::size_t n = d.state_count();
  const std::size_t k = d.alphabet().size();
  std::vector<std::uint64_t> paths(n, 0);
  paths[d.start()] = 1;
  std::vector<std::uint64_t> counts(max_length + 1, 0);
  for (std::size_t len = 0;; ++len) {
    std::uint64_t total = 0;
    for (State q = 0; q < n; ++q) {
      if (d.accepting(q)) total = (paths[q] > kMax - total) ? kMax : total + paths[q];
    }
    counts[len] = total;
    if (len == max_length) break;
    std::vector<std::uint64_t> next(n, 0);
    for (State q = 0; q < n; ++q) {
      if (paths[q] == 0) continue;
      for (std::size_t a = 0; a < k; ++a) {
        auto& slot = next[d.next(q, a)];
        slot = (paths[q] > kMax - slot) ? kMax : slot + paths[q];
      }
    }
    paths = std::move(next);
  }
  return counts;
}

std::uint64_t count_words(const Dfa& d, std::size_t length) {
  return count_words_upto(d, length).back();
}

// ---------------------------------------------------------------------------
// Dumps

std::string dump(const Dfa& d) {
  std::ostringstream out;
  out << "alphabet:";
  for (char c : d.alphabet()) out << ' ' << c;
  out << "\nstart " << d.start() << "\naccept";
  for (State q = 0; q < d.state_count(); ++q) {
    if (d.accepting(q)) out << ' ' << q;
  }
  out << '\n';
  for (State q = 0; q < d.state_count(); ++q) {
    for (std::size_t a = 0; a < d.alphabet().size(); ++a) {
      out << q << ' ' << d.alphabet()[a] << " -> " << d.next(q, a) << '\n';
    }
  }
  return out.str();
}

std::string compact_dump(const Dfa& d) {
  std::ostringstream out;
  out << "{alphabet=" << d.alphabet().symbols() << " states=" << d.state_count()
      << " start=" << d.start() << " accept=[";
  bool first = true;
  for (State q = 0; q < d.state_count(); ++q) {
    if (!d.accepting(q)) continue;
    if (!first) out << ',';
    out << q;
    first = false;
  }
  out << "] delta=";
  for (State q = 0; q < d.state_count(); ++q) {
    if (q > 0) out << ';';
    for (std::size_t a = 0; a < d.alphabet().size(); ++a) {
      if (a > 0) out << ',';
      out << d.next(q, a);
    }
  }
  out << '}';
  return out.str();
}

}  // namespace foldlang
