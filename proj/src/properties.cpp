#include "foldlang/properties.hpp"

#include <algorithm>
#include <iterator>
#include <map>

#include "foldlang/error.hpp"
#include "foldlang/regex.hpp"

namespace foldlang {

LinearGrammar thm2_language() {
  static constexpr std::string_view kText =
      "start S\n"
      "S -> S1 | S2\n"
      "S1 -> a S1 b c | a '#' b c\n"
      "S2 -> d e S2 f | d e '#' f\n";
  return parse_grammar(kText);
}

bool balance_check(std::string_view word) {
  const auto hash = word.find('#');
  if (hash == std::string_view::npos || word.find('#', hash + 1) != std::string_view::npos) {
    return false;
  }
  const std::size_t left = hash;
  const std::size_t right = word.size() - hash - 1;
  return left <= 2 * right && right <= 2 * left;
}

std::string PumpDecomposition::pumped_core(std::size_t k) const {
  std::string out = x1;
  for (std::size_t i = 0; i < k; ++i) out += y1;
  return out + z1;
}

DirectionWord PumpDecomposition::pumped_proc(std::size_t k) const {
  std::vector<Direction> out(x2.begin(), x2.end());
  for (std::size_t i = 0; i < k; ++i) out.insert(out.end(), y2.begin(), y2.end());
  out.insert(out.end(), z2.begin(), z2.end());
  return DirectionWord(std::move(out));
}

PumpDecomposition pump_decompose(const Dfa& core, const Dfa& proc, std::string_view w1,
                                 std::string_view v1) {
  if (w1.size() != v1.size()) {
    throw LengthMismatch("prefixes differ in length: " + std::to_string(w1.size()) + " vs " +
                         std::to_string(v1.size()));
  }
  PumpDecomposition out;
  out.core_state_count = core.state_count();
  out.proc_state_count = proc.state_count();
  out.bound = core.state_count() * proc.state_count();
  if (w1.size() <= out.bound) {
    throw TooShort("prefix length " + std::to_string(w1.size()) + " does not exceed N1*N2 = " +
                   std::to_string(out.bound));
  }
  if (!core.alphabet().contains_all(w1)) {
    throw PreconditionViolation("core prefix uses symbols outside the core alphabet");
  }
  if (!proc.alphabet().contains_all(v1)) {
    throw PreconditionViolation("procedure prefix uses symbols outside the procedure alphabet");
  }
  const DirectionWord dirs = DirectionWord::parse(v1);

  // Position i carries the state pair after reading i symbols.
  std::map<std::pair<State, State>, std::size_t> first_seen;
  State p = core.start();
  State q = proc.start();
  std::size_t loop_start = 0;
  std::size_t loop_end = 0;
  for (std::size_t i = 0;; ++i) {
    auto [it, inserted] = first_seen.emplace(std::pair{p, q}, i);
    if (!inserted) {
      loop_start = it->second;
      loop_end = i;
      break;
    }
    // Pigeonhole guarantees a repeat by position bound.
    p = core.next(p, *core.alphabet().index_of(w1[i]));
    q = proc.next(q, *proc.alphabet().index_of(v1[i]));
  }

  out.x1 = std::string(w1.substr(0, loop_start));
  out.y1 = std::string(w1.substr(loop_start, loop_end - loop_start));
  out.z1 = std::string(w1.substr(loop_end));
  auto slice = [&](std::size_t from, std::size_t to) {
    return DirectionWord(std::vector<Direction>(dirs.begin() + static_cast<std::ptrdiff_t>(from),
                                                dirs.begin() + static_cast<std::ptrdiff_t>(to)));
  };
  out.x2 = slice(0, loop_start);
  out.y2 = slice(loop_start, loop_end);
  out.z2 = slice(loop_end, dirs.size());

  out.core_prefix_live = core.live_states()[*core.run(w1)];
  out.proc_prefix_live = proc.live_states()[*proc.run(v1)];
  return out;
}

UnionDemoReport union_demo(std::size_t max_length, std::size_t cap) {
  const FSystem first(compile_regex("(abc)*"), compile_regex("(udd)*", direction_alphabet()));
  const FSystem second(compile_regex("(edf)*"), compile_regex("(uud)*", direction_alphabet()));

  UnionDemoReport report;
  report.max_length = max_length;
  WordSet u;
  for (const auto& w : brute_language(first, max_length, cap)) u.insert(w);
  for (const auto& w : brute_language(second, max_length, cap)) u.insert(w);
  report.union_words.assign(u.begin(), u.end());

  WordSet expected;
  for (std::size_t n = 0; 3 * n <= max_length; ++n) {
    std::string abc(n, 'a');
    std::string def;
    for (std::size_t i = 0; i < n; ++i) {
      abc += "bc";
      def += "de";
    }
    def += std::string(n, 'f');
    expected.insert(abc);
    expected.insert(def);
  }
  report.expected_words.assign(expected.begin(), expected.end());
  report.matches_expected = report.union_words == report.expected_words;

  report.target_words = enumerate_linear(thm2_language(), max_length, cap);
  report.equals_target = report.union_words == report.target_words;

  std::vector<Word> diff;
  std::set_symmetric_difference(report.union_words.begin(), report.union_words.end(),
                                report.target_words.begin(), report.target_words.end(),
                                std::back_inserter(diff), CanonicalOrder{});
  if (!diff.empty()) report.first_divergence = diff.front();
  for (const auto& w : report.target_words) {
    if (!u.contains(w)) {
      report.first_target_word_outside_union = w;
      break;
    }
  }
  return report;
}

}  // namespace foldlang
