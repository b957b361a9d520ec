#include <algorithm>
#include <cstdint>

#include "foldlang/error.hpp"
#include "foldlang/linear_grammar.hpp"

namespace foldlang {

LinearRecognizer::LinearRecognizer(const LinearGrammar& g)
    : terminals_(g.terminals),
      node_count_(g.nonterminals.size()),
      start_(g.start),
      left_by_symbol_(128),
      right_by_symbol_(128) {
  g.validate();
  std::vector<std::pair<std::size_t, std::size_t>> units;
  auto fresh = [this] { return node_count_++; };
  auto index = [](Symbol c) { return static_cast<unsigned char>(c); };

  // Each rule becomes a chain that peels its left block front to back, then
  // its right block back to front, ending at the middle nonterminal (or at an
  // epsilon node for terminal-only rules).
  for (const auto& r : g.rules) {
    const std::size_t total = r.left.size() + r.right.size();
    if (r.middle && total == 0) {
      units.emplace_back(r.lhs, *r.middle);
      continue;
    }
    std::size_t cur = r.lhs;
    std::size_t step = 0;
    auto next_node = [&] {
      ++step;
      return (r.middle && step == total) ? *r.middle : fresh();
    };
    for (char c : r.left) {
      std::size_t next = next_node();
      left_by_symbol_[index(c)].push_back({cur, c, next});
      cur = next;
    }
    for (auto it = r.right.rbegin(); it != r.right.rend(); ++it) {
      std::size_t next = next_node();
      right_by_symbol_[index(*it)].push_back({cur, next, *it});
      cur = next;
    }
    if (!r.middle) epsilon_nodes_.push_back(cur);
  }

  std::vector<std::vector<std::size_t>> unit_parents(node_count_);
  for (auto [a, b] : units) unit_parents[b].push_back(a);
  unit_ancestors_.resize(node_count_);
  for (std::size_t x = 0; x < node_count_; ++x) {
    std::vector<bool> seen(node_count_, false);
    std::vector<std::size_t> stack{x};
    seen[x] = true;
    while (!stack.empty()) {
      std::size_t y = stack.back();
      stack.pop_back();
      unit_ancestors_[x].push_back(y);
      for (std::size_t p : unit_parents[y]) {
        if (!seen[p]) {
          seen[p] = true;
          stack.push_back(p);
        }
      }
    }
  }
}

bool LinearRecognizer::accepts(std::string_view word) const {
  if (!terminals_.contains_all(word)) return false;
  const std::size_t n = word.size();
  const std::size_t v = node_count_;
  // layer[i * v + A]: A derives the span of the current length starting at i.
  std::vector<std::uint8_t> prev((n + 1) * v, 0);
  std::vector<std::uint8_t> cur((n + 1) * v, 0);

  auto mark = [&](std::vector<std::uint8_t>& layer, std::size_t i, std::size_t node) {
    std::uint8_t* row = layer.data() + i * v;
    if (row[node]) return;
    for (std::size_t a : unit_ancestors_[node]) row[a] = 1;
  };

  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t e : epsilon_nodes_) mark(prev, i, e);
  }
  for (std::size_t len = 1; len <= n; ++len) {
    bool any = false;
    const std::size_t spans = n - len + 1;
    std::fill(cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(spans * v), 0);
    for (std::size_t i = 0; i < spans; ++i) {
      const std::size_t j = i + len;
      for (const auto& s : left_by_symbol_[static_cast<unsigned char>(word[i])]) {
        if (prev[(i + 1) * v + s.rest]) {
          mark(cur, i, s.lhs);
          any = true;
        }
      }
      for (const auto& s : right_by_symbol_[static_cast<unsigned char>(word[j - 1])]) {
        if (prev[i * v + s.rest]) {
          mark(cur, i, s.lhs);
          any = true;
        }
      }
    }
    if (!any) return false;
    std::swap(prev, cur);
  }
  return prev[start_] != 0;
}

bool member_linear(const LinearGrammar& g, std::string_view word) {
  return LinearRecognizer(g).accepts(word);
}

// Words derivable from each nonterminal are built up by exact length; unit
// rules are closed by iterating to a fixpoint within a length.
std::vector<Word> enumerate_linear(const LinearGrammar& g, std::size_t max_length,
                                   std::size_t cap) {
  if (max_length > cap) {
    throw CapExceeded("enumeration length " + std::to_string(max_length) + " exceeds cap " +
                      std::to_string(cap));
  }
  g.validate();
  const std::size_t n = g.nonterminals.size();
  const auto productive = productive_nonterminals(g);
  std::vector<std::vector<WordSet>> words(n, std::vector<WordSet>(max_length + 1));

  std::vector<const LinearGrammar::Rule*> units;
  for (const auto& r : g.rules) {
    if (r.is_unit()) units.push_back(&r);
  }

  for (std::size_t len = 0; len <= max_length; ++len) {
    for (const auto& r : g.rules) {
      if (!productive[r.lhs] || r.is_unit()) continue;
      const std::size_t fixed = r.left.size() + r.right.size();
      if (!r.middle) {
        if (fixed == len) words[r.lhs][len].insert(r.left);
        continue;
      }
      if (fixed > len || !productive[*r.middle]) continue;
      for (const auto& inner : words[*r.middle][len - fixed]) {
        words[r.lhs][len].insert(r.left + inner + r.right);
      }
    }
    bool changed = !units.empty();
    while (changed) {
      changed = false;
      for (const auto* r : units) {
        auto& target = words[r->lhs][len];
        const auto before = target.size();
        const auto& source = words[*r->middle][len];
        target.insert(source.begin(), source.end());
        changed = changed || target.size() != before;
      }
    }
  }

  std::vector<Word> out;
  for (std::size_t len = 0; len <= max_length; ++len) {
    const auto& set = words[g.start][len];
    out.insert(out.end(), set.begin(), set.end());
  }
  return out;
}

std::vector<Word> enumerate_linear(const LinearGrammar& g, std::size_t max_length) {
  return enumerate_linear(g, max_length, enumeration_cap());
}

}  // namespace foldlang
