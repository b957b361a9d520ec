#include "foldlang/linear_grammar.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <tuple>
#include <stdexcept>
#include <unordered_set>

#include "foldlang/error.hpp"

namespace foldlang {

void LinearGrammar::validate() const {
  if (start >= nonterminals.size()) throw std::invalid_argument("start nonterminal out of range");
  for (const auto& r : rules) {
    if (r.lhs >= nonterminals.size()) throw std::invalid_argument("rule lhs out of range");
    if (r.middle && *r.middle >= nonterminals.size()) {
      throw std::invalid_argument("rule nonterminal out of range");
    }
    if (!r.middle && !r.right.empty()) {
      throw std::invalid_argument("terminal-only rule must keep its terminals on the left");
    }
    if (!terminals.contains_all(r.left) || !terminals.contains_all(r.right)) {
      throw std::invalid_argument("rule terminal outside alphabet");
    }
  }
}

std::optional<LinearGrammar::NonterminalId> LinearGrammar::find(std::string_view name) const {
  for (std::size_t i = 0; i < nonterminals.size(); ++i) {
    if (nonterminals[i] == name) return i;
  }
  return std::nullopt;
}

LinearGrammar::NonterminalId LinearGrammar::id_of(std::string_view name) const {
  if (auto id = find(name)) return *id;
  throw UnknownNonterminal("unknown nonterminal '" + std::string(name) + "'");
}

bool LinearGrammar::is_right_linear() const noexcept {
  return std::all_of(rules.begin(), rules.end(), [](const Rule& r) { return r.right.empty(); });
}

std::string product_name(std::string_view left, std::string_view right) {
  std::string name = "(";
  name += left;
  name += ',';
  name += right;
  name += ')';
  return name;
}

// ---------------------------------------------------------------------------
// Conversions

LinearGrammar from_right_linear(const RightLinearGrammar& g) {
  g.validate();
  LinearGrammar out;
  out.nonterminals = g.nonterminals;
  out.terminals = g.terminals;
  out.start = g.start;
  for (const auto& r : g.rules) {
    if (r.step) {
      out.rules.push_back({r.lhs, std::string(1, r.step->symbol), r.step->target, ""});
    } else {
      out.rules.push_back({r.lhs, "", std::nullopt, ""});
    }
  }
  return out;
}

RightLinearGrammar as_normal_form(const LinearGrammar& g) {
  g.validate();
  RightLinearGrammar out;
  out.nonterminals = g.nonterminals;
  out.terminals = g.terminals;
  out.start = g.start;
  for (const auto& r : g.rules) {
    if (!r.middle && r.left.empty()) {
      out.rules.push_back({r.lhs, std::nullopt});
    } else if (r.middle && r.left.size() == 1 && r.right.empty()) {
      out.rules.push_back({r.lhs, RightLinearGrammar::Step{r.left[0], *r.middle}});
    } else {
      throw NotNormalForm("rule for '" + g.nonterminals[r.lhs] +
                          "' is not of the form A -> a B or A -> eps");
    }
  }
  return out;
}

RightLinearGrammar to_right_linear(const LinearGrammar& g) {
  g.validate();
  if (!g.is_right_linear()) throw NotNormalForm("grammar is not right-linear");

  RightLinearGrammar out;
  out.nonterminals = g.nonterminals;
  out.terminals = g.terminals;
  out.start = g.start;
  std::unordered_set<std::string> taken(g.nonterminals.begin(), g.nonterminals.end());
  auto fresh = [&](const std::string& base) {
    for (std::size_t k = 1;; ++k) {
      std::string name = base + "_" + std::to_string(k);
      if (taken.insert(name).second) {
        out.nonterminals.push_back(name);
        return out.nonterminals.size() - 1;
      }
    }
  };
  std::optional<std::size_t> final_state;

  const std::size_t original = g.nonterminals.size();
  std::vector<std::vector<std::size_t>> units(original);
  for (const auto& r : g.rules) {
    if (r.is_unit()) {
      units[r.lhs].push_back(*r.middle);
      continue;
    }
    if (!r.middle && r.left.empty()) {
      out.rules.push_back({r.lhs, std::nullopt});
      continue;
    }
    std::size_t target;
    if (r.middle) {
      target = *r.middle;
    } else {
      if (!final_state) {
        final_state = fresh("F");
        out.rules.push_back({*final_state, std::nullopt});
      }
      target = *final_state;
    }
    std::size_t cur = r.lhs;
    for (std::size_t i = 0; i < r.left.size(); ++i) {
      std::size_t next = (i + 1 == r.left.size()) ? target : fresh(g.nonterminals[r.lhs]);
      out.rules.push_back({cur, RightLinearGrammar::Step{r.left[i], next}});
      cur = next;
    }
  }

  // Unit rules: A inherits the non-unit rules of every B with A =>* B.
  std::vector<RightLinearGrammar::Rule> inherited;
  for (std::size_t a = 0; a < original; ++a) {
    std::vector<bool> seen(original, false);
    std::vector<std::size_t> stack{a};
    seen[a] = true;
    while (!stack.empty()) {
      std::size_t x = stack.back();
      stack.pop_back();
      for (std::size_t y : units[x]) {
        if (!seen[y]) {
          seen[y] = true;
          stack.push_back(y);
        }
      }
    }
    for (std::size_t b = 0; b < original; ++b) {
      if (b == a || !seen[b]) continue;
      for (const auto& r : out.rules) {
        if (r.lhs == b) inherited.push_back({a, r.step});
      }
    }
  }
  for (auto& r : inherited) {
    if (std::find(out.rules.begin(), out.rules.end(), r) == out.rules.end()) out.rules.push_back(r);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Product construction

LinearGrammar product_construct(const RightLinearGrammar& g1, const RightLinearGrammar& g2) {
  g1.validate();
  g2.validate();
  if (!g2.terminals.is_subset_of(direction_alphabet())) {
    throw ProcAlphabetError("procedure grammar terminals {" + std::string(g2.terminals.symbols()) +
                            "} are not a subset of {u, d}");
  }
  const std::size_t n1 = g1.nonterminals.size();
  const std::size_t n2 = g2.nonterminals.size();
  auto pair_id = [n2](std::size_t a, std::size_t b) { return a * n2 + b; };

  std::vector<std::vector<const RightLinearGrammar::Rule*>> rules1(n1), rules2(n2);
  for (const auto& r : g1.rules) rules1[r.lhs].push_back(&r);
  for (const auto& r : g2.rules) rules2[r.lhs].push_back(&r);

  LinearGrammar out;
  out.terminals = g1.terminals;
  for (std::size_t a = 0; a < n1; ++a) {
    for (std::size_t b = 0; b < n2; ++b) {
      out.nonterminals.push_back(product_name(g1.nonterminals[a], g2.nonterminals[b]));
    }
  }
  out.start = pair_id(g1.start, g2.start);

  for (std::size_t a = 0; a < n1; ++a) {
    for (std::size_t b = 0; b < n2; ++b) {
      const std::size_t lhs = pair_id(a, b);
      for (const auto* r1 : rules1[a]) {
        for (const auto* r2 : rules2[b]) {
          if (!r1->step && !r2->step) {
            out.rules.push_back({lhs, "", std::nullopt, ""});
          } else if (r1->step && r2->step) {
            const std::size_t next = pair_id(r1->step->target, r2->step->target);
            const std::string symbol(1, r1->step->symbol);
            if (r2->step->symbol == 'u') {
              out.rules.push_back({lhs, symbol, next, ""});
            } else {
              out.rules.push_back({lhs, "", next, symbol});
            }
          }
        }
      }
    }
  }
  return out;
}

LinearGrammar product_construct(const LinearGrammar& g1, const LinearGrammar& g2) {
  return product_construct(as_normal_form(g1), as_normal_form(g2));
}

LinearGrammar fsystem_to_linear(const Dfa& core, const Dfa& proc, bool trimmed) {
  if (!proc.alphabet().is_subset_of(direction_alphabet())) {
    throw ProcAlphabetError("procedure alphabet {" + std::string(proc.alphabet().symbols()) +
                            "} is not a subset of {u, d}");
  }
  const Dfa gamma_proc = extend_alphabet(proc, direction_alphabet());
  auto g1 = dfa_to_rlg(dfa_reverse(core), "S");
  auto g2 = dfa_to_rlg(dfa_reverse(gamma_proc), "T");
  auto g = product_construct(g1, g2);
  return trimmed ? trim(g) : g;
}

// ---------------------------------------------------------------------------
// Trimming and start variants

std::vector<bool> productive_nonterminals(const LinearGrammar& g) {
  std::vector<bool> productive(g.nonterminals.size(), false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& r : g.rules) {
      if (productive[r.lhs]) continue;
      if (!r.middle || productive[*r.middle]) {
        productive[r.lhs] = true;
        changed = true;
      }
    }
  }
  return productive;
}

LinearGrammar trim(const LinearGrammar& g) {
  g.validate();
  const auto productive = productive_nonterminals(g);
  auto usable = [&](const LinearGrammar::Rule& r) {
    return productive[r.lhs] && (!r.middle || productive[*r.middle]);
  };

  std::vector<bool> reachable(g.nonterminals.size(), false);
  reachable[g.start] = true;
  std::deque<std::size_t> work{g.start};
  std::vector<std::vector<const LinearGrammar::Rule*>> by_lhs(g.nonterminals.size());
  for (const auto& r : g.rules) by_lhs[r.lhs].push_back(&r);
  while (!work.empty()) {
    std::size_t a = work.front();
    work.pop_front();
    for (const auto* r : by_lhs[a]) {
      if (usable(*r) && r->middle && !reachable[*r->middle]) {
        reachable[*r->middle] = true;
        work.push_back(*r->middle);
      }
    }
  }

  LinearGrammar out;
  out.terminals = g.terminals;
  std::vector<std::size_t> remap(g.nonterminals.size(), SIZE_MAX);
  for (std::size_t a = 0; a < g.nonterminals.size(); ++a) {
    if (a == g.start || (reachable[a] && productive[a])) {
      remap[a] = out.nonterminals.size();
      out.nonterminals.push_back(g.nonterminals[a]);
    }
  }
  out.start = remap[g.start];
  for (const auto& r : g.rules) {
    if (!usable(r) || !reachable[r.lhs]) continue;
    LinearGrammar::Rule copy = r;
    copy.lhs = remap[r.lhs];
    if (copy.middle) copy.middle = remap[*r.middle];
    out.rules.push_back(std::move(copy));
  }
  return out;
}

bool isomorphic(const LinearGrammar& a, const LinearGrammar& b) {
  const std::size_t n = a.nonterminals.size();
  if (n != b.nonterminals.size() || a.rules.size() != b.rules.size() || n > 9 ||
      !(a.terminals == b.terminals)) {
    return false;
  }
  using Key = std::tuple<std::size_t, std::string, std::size_t, std::string>;
  auto key = [](const LinearGrammar::Rule& r, const std::vector<std::size_t>& map) {
    return Key{map[r.lhs], r.left, r.middle ? map[*r.middle] : SIZE_MAX, r.right};
  };
  std::vector<std::size_t> identity(n);
  for (std::size_t i = 0; i < n; ++i) identity[i] = i;
  std::multiset<Key> target;
  for (const auto& r : b.rules) target.insert(key(r, identity));

  std::vector<std::size_t> map = identity;
  do {
    if (map[a.start] != b.start) continue;
    std::multiset<Key> mapped;
    for (const auto& r : a.rules) mapped.insert(key(r, map));
    if (mapped == target) return true;
  } while (std::next_permutation(map.begin(), map.end()));
  return false;
}

LinearGrammar start_variant(const LinearGrammar& g, std::string_view start) {
  LinearGrammar out = g;
  out.start = g.id_of(start);
  return out;
}

RightLinearGrammar start_variant(const RightLinearGrammar& g, std::string_view start) {
  auto id = g.find(start);
  if (!id) throw UnknownNonterminal("unknown nonterminal '" + std::string(start) + "'");
  RightLinearGrammar out = g;
  out.start = *id;
  return out;
}

}  // namespace foldlang
