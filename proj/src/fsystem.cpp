#include "foldlang/fsystem.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <iterator>
#include <sstream>

#include "foldlang/error.hpp"
#include "foldlang/folding.hpp"
#include "foldlang/regex.hpp"

namespace foldlang {

namespace {

Dfa widen_procedure(Dfa proc) {
  if (!proc.alphabet().is_subset_of(direction_alphabet())) {
    throw ProcAlphabetError("procedure alphabet {" + std::string(proc.alphabet().symbols()) +
                            "} is not a subset of {u, d}");
  }
  return extend_alphabet(proc, direction_alphabet());
}

std::string symbols_missing_from(const Alphabet& a, const Alphabet& b) {
  std::string out;
  for (char c : a) {
    if (!b.contains(c)) out.push_back(c);
  }
  return out;
}

}  // namespace

FSystem::FSystem(Dfa core, Dfa proc) : core_(std::move(core)), proc_(widen_procedure(std::move(proc))) {}

WordSet brute_words_of_length(const FSystem& phi, std::size_t length) {
  WordSet out;
  const auto procs = words_of_length(phi.proc(), length);
  if (procs.empty()) return out;
  const auto cores = words_of_length(phi.core(), length);
  for (const auto& v : procs) {
    const auto perm = fold_permutation(DirectionWord::parse(v));
    for (const auto& w : cores) out.insert(perm.apply(w));
  }
  return out;
}

std::vector<Word> brute_language(const FSystem& phi, std::size_t max_length, std::size_t cap) {
  if (max_length > cap) {
    throw CapExceeded("brute-force length " + std::to_string(max_length) + " exceeds cap " +
                      std::to_string(cap));
  }
  std::vector<std::future<WordSet>> parts;
  parts.reserve(max_length + 1);
  for (std::size_t len = 0; len <= max_length; ++len) {
    parts.push_back(std::async(std::launch::async, [&phi, len] { return brute_words_of_length(phi, len); }));
  }
  std::vector<Word> out;
  for (auto& part : parts) {
    auto words = part.get();
    out.insert(out.end(), std::make_move_iterator(words.begin()),
               std::make_move_iterator(words.end()));
  }
  return out;
}

bool member_fsystem(const FSystem& phi, std::string_view word) {
  return member_linear(fsystem_to_linear(phi.core(), phi.proc()), word);
}

EquivalenceReport compare_word_lists(const std::vector<Word>& system,
                                     const std::vector<Word>& grammar, std::size_t max_length) {
  EquivalenceReport report;
  report.max_length = max_length;
  report.system_count = system.size();
  report.grammar_count = grammar.size();
  std::vector<Word> missing;
  std::vector<Word> extra;
  std::set_difference(system.begin(), system.end(), grammar.begin(), grammar.end(),
                      std::back_inserter(missing), CanonicalOrder{});
  std::set_difference(grammar.begin(), grammar.end(), system.begin(), system.end(),
                      std::back_inserter(extra), CanonicalOrder{});
  report.missing_total = missing.size();
  report.extra_total = extra.size();
  report.equivalent = missing.empty() && extra.empty();
  if (missing.size() > kReportListLimit) missing.resize(kReportListLimit);
  if (extra.size() > kReportListLimit) extra.resize(kReportListLimit);
  report.missing = std::move(missing);
  report.extra = std::move(extra);
  return report;
}

EquivalenceReport bounded_equiv(const FSystem& phi, const LinearGrammar& g, std::size_t max_length,
                                std::size_t cap) {
  auto system = brute_language(phi, max_length, cap);
  auto grammar = enumerate_linear(g, max_length, std::max(cap, max_length));
  auto report = compare_word_lists(system, grammar, max_length);
  report.symbols_only_in_system = symbols_missing_from(phi.core().alphabet(), g.terminals);
  report.symbols_only_in_grammar = symbols_missing_from(g.terminals, phi.core().alphabet());
  return report;
}

ClaimAReport claim_A_check(const RightLinearGrammar& g1, const RightLinearGrammar& g2,
                           std::size_t max_length, std::size_t cap) {
  if (max_length > cap) {
    throw CapExceeded("claim check length " + std::to_string(max_length) + " exceeds cap " +
                      std::to_string(cap));
  }
  const LinearGrammar product = product_construct(g1, g2);
  const std::size_t n2 = g2.nonterminals.size();

  ClaimAReport report;
  report.max_length = max_length;
  for (std::size_t a = 0; a < g1.nonterminals.size(); ++a) {
    RightLinearGrammar v1 = g1;
    v1.start = a;
    const Dfa core = dfa_reverse(rlg_to_dfa(v1));
    for (std::size_t b = 0; b < n2; ++b) {
      RightLinearGrammar v2 = g2;
      v2.start = b;
      const FSystem phi(core, dfa_reverse(rlg_to_dfa(v2)));
      LinearGrammar restarted = product;
      restarted.start = a * n2 + b;

      auto system = brute_language(phi, max_length, cap);
      auto grammar = enumerate_linear(restarted, max_length, cap);
      ++report.pairs_checked;
      auto cmp = compare_word_lists(system, grammar, max_length);
      if (!cmp.equivalent) {
        report.failures.push_back({g1.nonterminals[a], g2.nonterminals[b], false, std::move(cmp)});
      }
    }
  }
  return report;
}

InterchangeReport interchange_demo(const FSystem& phi, std::string_view w1, std::string_view v1,
                                   std::string_view w2, std::string_view v2) {
  const std::size_t n = w1.size();
  if (v1.size() != n || w2.size() != n || v2.size() != n) {
    throw PreconditionViolation("interchange needs four words of equal length");
  }
  if (!phi.core().accepts(w1) || !phi.core().accepts(w2)) {
    throw PreconditionViolation("core words must belong to the core language");
  }
  if (!phi.proc().accepts(v1) || !phi.proc().accepts(v2)) {
    throw PreconditionViolation("direction words must belong to the procedure language");
  }
  const auto d1 = DirectionWord::parse(v1);
  const auto d2 = DirectionWord::parse(v2);
  const LinearRecognizer recognizer(fsystem_to_linear(phi.core(), phi.proc()));

  InterchangeReport report;
  report.own_first = fold(w1, d1);
  report.own_second = fold(w2, d2);
  report.cross_first = fold(w1, d2);
  report.cross_second = fold(w2, d1);
  report.cross_first_member = recognizer.accepts(report.cross_first);
  report.cross_second_member = recognizer.accepts(report.cross_second);
  return report;
}

// ---------------------------------------------------------------------------
// Language specs

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Dfa load_language(std::string_view spec, const std::optional<Alphabet>& alphabet_hint,
                  const std::filesystem::path& base_dir) {
  if (spec.empty() || spec.front() != '@') return compile_regex(spec, alphabet_hint);

  std::filesystem::path path(spec.substr(1));
  if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
  const auto grammar = parse_grammar(read_file(path));
  Dfa d = rlg_to_dfa(to_right_linear(grammar));
  return alphabet_hint ? extend_alphabet(d, *alphabet_hint) : d;
}

Dfa load_procedure(std::string_view spec, const std::filesystem::path& base_dir) {
  try {
    return load_language(spec, direction_alphabet(), base_dir);
  } catch (const AlphabetMismatch& e) {
    throw ProcAlphabetError(e.what());
  }
}

FSystem parse_fsystem_spec(std::string_view text, const std::filesystem::path& base_dir) {
  std::optional<std::string> core;
  std::optional<std::string> proc;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    const std::size_t line_start = pos;
    pos = end + 1;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '#') continue;
    line.remove_prefix(first);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r')) {
      line.remove_suffix(1);
    }
    auto colon = line.find(':');
    if (colon == std::string_view::npos) throw ParseError("expected 'core:' or 'proc:'", line_start);
    std::string_view key = line.substr(0, colon);
    std::string_view value = line.substr(colon + 1);
    value.remove_prefix(std::min(value.find_first_not_of(" \t"), value.size()));
    auto& slot = key == "core" ? core : key == "proc" ? proc : core;
    if (key != "core" && key != "proc") throw ParseError("unknown key '" + std::string(key) + "'", line_start);
    if (slot) throw ParseError("duplicate key '" + std::string(key) + "'", line_start);
    slot = std::string(value);
  }
  if (!core) throw ParseError("missing 'core:' line", text.size());
  if (!proc) throw ParseError("missing 'proc:' line", text.size());
  return FSystem(load_language(*core, std::nullopt, base_dir), load_procedure(*proc, base_dir));
}

}  // namespace foldlang
