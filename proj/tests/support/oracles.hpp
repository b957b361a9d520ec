#pragma once

// Test-side reference implementations. Nothing here calls into the library
// except to convert a raw table into a foldlang::Dfa for the code under test.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "foldlang/automata.hpp"
#include "foldlang/linear_grammar.hpp"

namespace oracle {

struct ByLengthThenCode {
  bool operator()(const std::string& a, const std::string& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};
using Words = std::set<std::string, ByLengthThenCode>;

inline std::vector<std::string> sorted(const Words& w) { return {w.begin(), w.end()}; }

// Literal transcription of the recursive definition: h(w'a, v'b) = f(h(w', v'), a, b).
inline std::optional<std::string> recursive_fold(const std::string& w, const std::string& v) {
  if (w.size() != v.size()) return std::nullopt;
  if (w.empty()) return std::string();
  auto inner = recursive_fold(w.substr(0, w.size() - 1), v.substr(0, v.size() - 1));
  const char a = w.back();
  return v.back() == 'u' ? a + *inner : *inner + a;
}

inline std::vector<std::string> all_words(const std::string& sigma, std::size_t n) {
  std::vector<std::string> out;
  if (sigma.empty()) {
    if (n == 0) out.emplace_back();
    return out;
  }
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    std::string w;
    for (auto i : idx) w += sigma[i];
    out.push_back(w);
    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < sigma.size()) break;
      idx[pos] = 0;
      if (pos == 0) return out;
    }
    if (n == 0) return out;
  }
}

// Plain transition table; symbols are looked up by linear search.
struct RawDfa {
  std::string sigma;  // sorted
  std::size_t n = 1;
  std::size_t start = 0;
  std::vector<std::size_t> delta;  // delta[q * |sigma| + i]
  std::vector<bool> accepting;

  bool accepts(const std::string& w) const {
    std::size_t q = start;
    for (char c : w) {
      auto pos = sigma.find(c);
      if (pos == std::string::npos) return false;
      q = delta[q * sigma.size() + pos];
    }
    return accepting[q];
  }

  Words language(std::size_t max_length) const {
    Words out;
    for (std::size_t n = 0; n <= max_length; ++n) {
      for (auto& w : all_words(sigma, n)) {
        if (accepts(w)) out.insert(w);
      }
    }
    return out;
  }

  foldlang::Dfa to_dfa() const {
    std::vector<foldlang::State> d(delta.begin(), delta.end());
    return foldlang::Dfa(foldlang::Alphabet(sigma), n, static_cast<foldlang::State>(start),
                         accepting, d);
  }
};

inline RawDfa random_dfa(std::mt19937& rng, const std::string& sigma, std::size_t max_states) {
  RawDfa d;
  d.sigma = sigma;
  d.n = std::uniform_int_distribution<std::size_t>(1, max_states)(rng);
  std::uniform_int_distribution<std::size_t> state(0, d.n - 1);
  d.start = state(rng);
  for (std::size_t i = 0; i < d.n * sigma.size(); ++i) d.delta.push_back(state(rng));
  std::bernoulli_distribution coin(0.5);
  for (std::size_t q = 0; q < d.n; ++q) d.accepting.push_back(coin(rng));
  return d;
}

inline std::string random_word(std::mt19937& rng, const std::string& sigma, std::size_t n) {
  std::uniform_int_distribution<std::size_t> pick(0, sigma.size() - 1);
  std::string w;
  for (std::size_t i = 0; i < n; ++i) w += sigma[pick(rng)];
  return w;
}

// All h(w, v) with w accepted by core, v by proc, |w| = |v| <= max_length.
inline Words fsystem_language(const RawDfa& core, const RawDfa& proc, std::size_t max_length) {
  Words out;
  for (std::size_t n = 0; n <= max_length; ++n) {
    std::vector<std::string> vs;
    for (auto& v : all_words("du", n)) {
      if (proc.accepts(v)) vs.push_back(v);
    }
    if (vs.empty()) continue;
    for (auto& w : all_words(core.sigma, n)) {
      if (!core.accepts(w)) continue;
      for (auto& v : vs) out.insert(*recursive_fold(w, v));
    }
  }
  return out;
}

// Membership in a linear grammar straight from the rules: a table over spans
// filled by increasing length, with unit rules iterated to a fixpoint.
inline bool derives(const foldlang::LinearGrammar& g, const std::string& word) {
  const std::size_t n = word.size();
  const std::size_t k = g.nonterminals.size();
  // table[i][len][A]
  std::vector<std::vector<std::vector<bool>>> table(
      n + 1, std::vector<std::vector<bool>>(n + 1, std::vector<bool>(k, false)));
  for (std::size_t len = 0; len <= n; ++len) {
    for (std::size_t i = 0; i + len <= n; ++i) {
      const std::string span = word.substr(i, len);
      bool changed = true;
      while (changed) {
        changed = false;
        for (const auto& r : g.rules) {
          if (table[i][len][r.lhs]) continue;
          bool ok = false;
          if (!r.middle) {
            ok = span == r.left;
          } else {
            const std::size_t outer = r.left.size() + r.right.size();
            if (outer <= len && span.compare(0, r.left.size(), r.left) == 0 &&
                span.compare(len - r.right.size(), r.right.size(), r.right) == 0) {
              ok = table[i + r.left.size()][len - outer][*r.middle];
            }
          }
          if (ok) {
            table[i][len][r.lhs] = true;
            changed = true;
          }
        }
      }
    }
  }
  return table[0][n][g.start];
}

inline Words grammar_language(const foldlang::LinearGrammar& g, std::size_t max_length) {
  Words out;
  const std::string sigma(g.terminals.symbols());
  for (std::size_t n = 0; n <= max_length; ++n) {
    for (auto& w : all_words(sigma, n)) {
      if (derives(g, w)) out.insert(w);
    }
  }
  return out;
}

// Random linear grammar with blocks of up to two terminals on each side and
// some unit and terminal-only rules.
inline foldlang::LinearGrammar random_linear_grammar(std::mt19937& rng, const std::string& sigma,
                                                     std::size_t nonterminals, std::size_t rules) {
  foldlang::LinearGrammar g;
  for (std::size_t i = 0; i < nonterminals; ++i) g.nonterminals.push_back("N" + std::to_string(i));
  g.terminals = foldlang::Alphabet(sigma);
  std::uniform_int_distribution<std::size_t> nt(0, nonterminals - 1);
  std::uniform_int_distribution<std::size_t> block(0, 2);
  std::uniform_int_distribution<int> shape(0, 9);
  for (std::size_t r = 0; r < rules; ++r) {
    foldlang::LinearGrammar::Rule rule{nt(rng), "", std::nullopt, ""};
    const int s = shape(rng);
    if (s < 2) {
      rule.left = random_word(rng, sigma, block(rng));
    } else {
      rule.middle = nt(rng);
      rule.left = random_word(rng, sigma, block(rng));
      rule.right = random_word(rng, sigma, block(rng));
    }
    g.rules.push_back(rule);
  }
  return g;
}

inline foldlang::RightLinearGrammar random_normal_rlg(std::mt19937& rng, const std::string& sigma,
                                                      std::size_t nonterminals, std::size_t rules,
                                                      const std::string& prefix) {
  foldlang::RightLinearGrammar g;
  for (std::size_t i = 0; i < nonterminals; ++i) g.nonterminals.push_back(prefix + std::to_string(i));
  g.terminals = foldlang::Alphabet(sigma);
  std::uniform_int_distribution<std::size_t> nt(0, nonterminals - 1);
  std::uniform_int_distribution<std::size_t> sym(0, sigma.size() - 1);
  std::bernoulli_distribution eps(0.25);
  for (std::size_t r = 0; r < rules; ++r) {
    foldlang::RightLinearGrammar::Rule rule{nt(rng), std::nullopt};
    if (!eps(rng)) rule.step = foldlang::RightLinearGrammar::Step{sigma[sym(rng)], nt(rng)};
    if (std::find(g.rules.begin(), g.rules.end(), rule) == g.rules.end()) g.rules.push_back(rule);
  }
  return g;
}

// Words of a normal-form right-linear grammar from nonterminal a, by direct
// expansion.
inline Words rlg_language(const foldlang::RightLinearGrammar& g, std::size_t a,
                          std::size_t max_length) {
  Words out;
  std::vector<std::pair<std::string, std::size_t>> frontier{{"", a}};
  for (std::size_t len = 0; len <= max_length; ++len) {
    std::vector<std::pair<std::string, std::size_t>> next;
    std::set<std::pair<std::string, std::size_t>> seen;
    for (auto& [w, x] : frontier) {
      for (const auto& r : g.rules) {
        if (r.lhs != x) continue;
        if (!r.step) {
          out.insert(w);
        } else if (seen.insert({w + r.step->symbol, r.step->target}).second) {
          next.emplace_back(w + r.step->symbol, r.step->target);
        }
      }
    }
    frontier = std::move(next);
  }
  return out;
}

inline std::string reversed(std::string w) {
  std::reverse(w.begin(), w.end());
  return w;
}

// Number of reachable, breadth-first numbered total DFAs with exactly n
// states over k symbols, found by checking every table.
inline std::uint64_t count_canonical_tables(std::size_t n, std::size_t k) {
  const std::size_t cells = n * k;
  std::vector<std::size_t> t(cells, 0);
  std::uint64_t count = 0;
  while (true) {
    // BFS from 0 visiting successors in symbol order must discover 0, 1, 2, ...
    std::vector<std::size_t> order{0};
    std::vector<bool> seen(n, false);
    seen[0] = true;
    for (std::size_t head = 0; head < order.size(); ++head) {
      for (std::size_t i = 0; i < k; ++i) {
        auto s = t[order[head] * k + i];
        if (!seen[s]) {
          seen[s] = true;
          order.push_back(s);
        }
      }
    }
    bool canonical = order.size() == n;
    for (std::size_t i = 0; canonical && i < n; ++i) canonical = order[i] == i;
    if (canonical) ++count;
    std::size_t pos = cells;
    while (pos > 0) {
      --pos;
      if (++t[pos] < n) break;
      t[pos] = 0;
      if (pos == 0) return count;
    }
    if (cells == 0) return count;
  }
}

}  // namespace oracle
