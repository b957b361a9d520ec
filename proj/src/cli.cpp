#include "foldlang/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <optional>
#include <ostream>
#include <sstream>

#include "foldlang/error.hpp"
#include "foldlang/folding.hpp"
#include "foldlang/fsystem.hpp"
#include "foldlang/linear_grammar.hpp"
#include "foldlang/properties.hpp"
#include "foldlang/regex.hpp"

namespace foldlang::cli {

namespace {

using json = nlohmann::ordered_json;

class UsageError : public Error {
 public:
  using Error::Error;
};

struct Options {
  bool json = false;

  std::string word;
  std::string dirs;

  std::string core;
  std::string proc;
  std::string system;
  std::string grammar;
  std::string regex;
  bool raw = false;
  std::size_t max_len = 0;

  std::string g1;
  std::string g2;

  std::string target;
  std::size_t core_states = 0;
  std::size_t proc_states = 0;
  std::string alphabet;
  unsigned threads = 0;

  std::string demo;
};

json words_json(const std::vector<Word>& words) {
  json arr = json::array();
  for (const auto& w : words) arr.push_back(w);
  return arr;
}

json report_json(const EquivalenceReport& r) {
  return json{{"max_length", r.max_length},
              {"equivalent", r.equivalent},
              {"system_count", r.system_count},
              {"grammar_count", r.grammar_count},
              {"missing", words_json(r.missing)},
              {"missing_total", r.missing_total},
              {"extra", words_json(r.extra)},
              {"extra_total", r.extra_total},
              {"symbols_only_in_system", r.symbols_only_in_system},
              {"symbols_only_in_grammar", r.symbols_only_in_grammar}};
}

void print_report(const EquivalenceReport& r, std::ostream& out) {
  out << (r.equivalent ? "EQUIVALENT" : "MISMATCH") << " max-len=" << r.max_length
      << " system=" << r.system_count << " grammar=" << r.grammar_count << '\n';
  if (!r.symbols_only_in_system.empty()) {
    out << "symbols only in system: " << r.symbols_only_in_system << '\n';
  }
  if (!r.symbols_only_in_grammar.empty()) {
    out << "symbols only in grammar: " << r.symbols_only_in_grammar << '\n';
  }
  auto list = [&](const char* label, const std::vector<Word>& words, std::size_t total) {
    if (total == 0) return;
    out << label << " (" << total << "):";
    for (const auto& w : words) out << ' ' << (w.empty() ? "eps" : w);
    if (total > words.size()) out << " ...";
    out << '\n';
  };
  list("missing from grammar", r.missing, r.missing_total);
  list("extra in grammar", r.extra, r.extra_total);
}

LinearGrammar load_grammar(const std::string& path) { return parse_grammar(read_file(path)); }

FSystem load_system(const Options& o) {
  if (!o.system.empty()) return parse_fsystem_spec(read_file(o.system));
  if (o.core.empty() || o.proc.empty()) throw UsageError("--core and --proc are both required");
  return FSystem(load_language(o.core), load_procedure(o.proc));
}

void require_symbols(const Alphabet& alphabet, std::string_view word, const char* what) {
  for (char c : word) {
    if (!alphabet.contains(c)) {
      throw UsageError(std::string("symbol '") + c + "' is not in the " + what + " alphabet {" +
                       std::string(alphabet.symbols()) + "}");
    }
  }
}

// --- subcommands -------------------------------------------------------------

int cmd_fold(const Options& o, std::ostream& out) {
  const auto dirs = DirectionWord::parse(o.dirs);
  const auto result = fold(o.word, dirs);
  if (o.json) {
    out << json{{"word", o.word}, {"dirs", o.dirs}, {"fold", result}}.dump() << '\n';
  } else {
    out << result << '\n';
  }
  return kExitOk;
}

int cmd_unfold(const Options& o, std::ostream& out) {
  const auto dirs = DirectionWord::parse(o.dirs);
  const auto result = unfold(o.word, dirs);
  if (o.json) {
    out << json{{"word", o.word}, {"dirs", o.dirs}, {"unfold", result}}.dump() << '\n';
  } else {
    out << result << '\n';
  }
  return kExitOk;
}

int cmd_perm(const Options& o, std::ostream& out) {
  const auto perm = fold_permutation(DirectionWord::parse(o.dirs));
  if (o.json) {
    out << json{{"dirs", o.dirs}, {"permutation", perm.targets()}}.dump() << '\n';
    return kExitOk;
  }
  for (std::size_t i = 0; i < perm.size(); ++i) out << (i == 0 ? "" : " ") << perm.targets()[i];
  out << '\n';
  return kExitOk;
}

int cmd_compile(const Options& o, std::ostream& out) {
  const FSystem phi = load_system(o);
  const auto g = fsystem_to_linear(phi.core(), phi.proc(), !o.raw);
  out << (o.json ? to_json(g) + "\n" : to_text(g));
  return kExitOk;
}

int cmd_member(const Options& o, std::ostream& out) {
  bool accepted = false;
  if (!o.grammar.empty()) {
    const auto g = load_grammar(o.grammar);
    require_symbols(g.terminals, o.word, "grammar");
    accepted = member_linear(g, o.word);
  } else {
    const FSystem phi = load_system(o);
    require_symbols(phi.core().alphabet(), o.word, "core");
    accepted = member_linear(fsystem_to_linear(phi.core(), phi.proc()), o.word);
  }
  if (o.json) {
    out << json{{"word", o.word}, {"member", accepted}}.dump() << '\n';
  } else {
    out << (accepted ? "accepted" : "rejected") << '\n';
  }
  return accepted ? kExitOk : kExitMismatch;
}

int cmd_enum(const Options& o, std::ostream& out) {
  std::vector<Word> words;
  if (!o.regex.empty()) {
    words = enumerate_dfa(load_language(o.regex), o.max_len);
  } else if (!o.grammar.empty()) {
    words = enumerate_linear(load_grammar(o.grammar), o.max_len);
  } else {
    const FSystem phi = load_system(o);
    words = enumerate_linear(fsystem_to_linear(phi.core(), phi.proc()), o.max_len);
  }
  if (o.json) {
    out << json{{"max_length", o.max_len}, {"words", words_json(words)}}.dump() << '\n';
  } else {
    for (const auto& w : words) out << w << '\n';
  }
  return kExitOk;
}

int cmd_equiv(const Options& o, std::ostream& out) {
  const FSystem phi = load_system(o);
  const auto report = bounded_equiv(phi, load_grammar(o.grammar), o.max_len);
  if (o.json) {
    out << report_json(report).dump() << '\n';
  } else {
    print_report(report, out);
  }
  return report.equivalent ? kExitOk : kExitMismatch;
}

int cmd_claim_a(const Options& o, std::ostream& out) {
  const auto g1 = to_right_linear(load_grammar(o.g1));
  const auto g2 = to_right_linear(load_grammar(o.g2));
  const auto report = claim_A_check(g1, g2, o.max_len);
  if (o.json) {
    json failures = json::array();
    for (const auto& f : report.failures) {
      failures.push_back({{"left", f.left}, {"right", f.right}, {"report", report_json(f.report)}});
    }
    out << json{{"max_length", report.max_length},
                {"pairs_checked", report.pairs_checked},
                {"passed", report.passed()},
                {"failures", failures}}
               .dump()
        << '\n';
  } else {
    out << (report.passed() ? "PASS" : "FAIL") << " pairs=" << report.pairs_checked
        << " max-len=" << report.max_length << '\n';
    for (const auto& f : report.failures) {
      out << "pair " << product_name(f.left, f.right) << ": ";
      print_report(f.report, out);
    }
  }
  return report.passed() ? kExitOk : kExitMismatch;
}

int cmd_pump(const Options& o, std::ostream& out) {
  const FSystem phi = load_system(o);
  const auto p = pump_decompose(phi.core(), phi.proc(), o.word, o.dirs);
  if (o.json) {
    out << json{{"x1", p.x1},
                {"y1", p.y1},
                {"z1", p.z1},
                {"x2", p.x2.str()},
                {"y2", p.y2.str()},
                {"z2", p.z2.str()},
                {"core_states", p.core_state_count},
                {"proc_states", p.proc_state_count},
                {"bound", p.bound},
                {"core_prefix_live", p.core_prefix_live},
                {"proc_prefix_live", p.proc_prefix_live}}
               .dump()
        << '\n';
  } else {
    out << "N1=" << p.core_state_count << " N2=" << p.proc_state_count << " bound=" << p.bound
        << '\n'
        << "x1=" << p.x1 << " y1=" << p.y1 << " z1=" << p.z1 << '\n'
        << "x2=" << p.x2.str() << " y2=" << p.y2.str() << " z2=" << p.z2.str() << '\n'
        << "core-prefix-live=" << p.core_prefix_live << " proc-prefix-live=" << p.proc_prefix_live
        << '\n';
  }
  return kExitOk;
}

int cmd_refute(const Options& o, std::ostream& out, std::ostream& err) {
  RefuterConfig config;
  config.max_core_states = o.core_states;
  config.max_proc_states = o.proc_states;
  config.max_length = o.max_len;
  config.core_alphabet = Alphabet(o.alphabet);
  config.threads = o.threads;
  const auto outcome = refute_bounded(load_grammar(o.target), config, &err);
  const bool refuted = outcome.verdict == RefuterOutcome::Verdict::Refuted;
  if (o.json) {
    json j{{"verdict", refuted ? "REFUTED" : "FOUND"},
           {"bounds", {o.core_states, o.proc_states, o.max_len}},
           {"candidates_tried", outcome.candidates_tried},
           {"candidates_pruned", outcome.candidates_pruned},
           {"candidates_compared", outcome.candidates_compared},
           {"pruned_at_length", outcome.pruned_at_length}};
    if (outcome.witness) {
      j["core"] = compact_dump(outcome.witness->core());
      j["proc"] = compact_dump(outcome.witness->proc());
    }
    out << j.dump() << '\n';
  } else {
    out << verdict_line(outcome, config) << '\n'
        << "tried=" << outcome.candidates_tried << " pruned=" << outcome.candidates_pruned
        << " compared=" << outcome.candidates_compared << '\n';
  }
  return refuted ? kExitOk : kExitMismatch;
}

// --- demos -------------------------------------------------------------------

struct Check {
  std::string name;
  bool passed;
  std::string detail;
};

constexpr std::string_view kFoldedAbcGrammar =
    "start (S0,T0)\n"
    "(S0,T0) -> eps | (S1,T1) c\n"
    "(S1,T1) -> (S2,T2) b\n"
    "(S2,T2) -> a (S0,T0)\n";

std::vector<Check> demo_example1() {
  std::vector<Check> checks;
  checks.push_back({"fold abcabc uddudd = aabcbc",
                    fold("abcabc", DirectionWord::parse("uddudd")) == "aabcbc", ""});

  const FSystem phi(compile_regex("(abc)*"), compile_regex("(udd)*", direction_alphabet()));
  const auto g = fsystem_to_linear(phi.core(), phi.proc());
  checks.push_back({"compiled grammar matches G up to renaming",
                    isomorphic(g, parse_grammar(kFoldedAbcGrammar)),
                    std::to_string(g.nonterminals.size()) + " nonterminals, " +
                        std::to_string(g.rules.size()) + " rules"});

  std::vector<Word> expected;
  for (std::size_t n = 0; 3 * n <= 18; ++n) {
    std::string w(n, 'a');
    for (std::size_t i = 0; i < n; ++i) w += "bc";
    expected.push_back(w);
  }
  const auto words = enumerate_linear(g, 18, 18);
  checks.push_back({"L(G) to length 18 = a^n (bc)^n", words == expected,
                    std::to_string(words.size()) + " words"});

  const auto report = bounded_equiv(phi, g, 12);
  checks.push_back({"L(G) = L(Phi) to length 12 by brute force", report.equivalent,
                    std::to_string(report.system_count) + " words"});
  return checks;
}

std::vector<Check> demo_thm2() {
  std::vector<Check> checks;
  const auto g = thm2_language();
  const auto words = enumerate_linear(g, 22, 22);
  std::size_t bad_length = 0;
  std::size_t bad_hash = 0;
  std::size_t bad_balance = 0;
  for (const auto& w : words) {
    if (w.size() < 4 || w.size() % 3 != 1) ++bad_length;
    if (std::count(w.begin(), w.end(), '#') != 1) ++bad_hash;
    if (!balance_check(w)) ++bad_balance;
  }
  const std::string count = std::to_string(words.size()) + " words";
  checks.push_back({"lengths are 3i+1 with i >= 1 (to 22)", !words.empty() && bad_length == 0, count});
  checks.push_back({"exactly one # per word (to 22)", bad_hash == 0, count});
  checks.push_back({"balance |u1| <= 2|u2| and |u2| <= 2|u1| (to 22)", bad_balance == 0, count});

  RefuterConfig config;
  config.max_core_states = 2;
  config.max_proc_states = 2;
  config.max_length = 7;
  config.core_alphabet = g.terminals;
  config.threads = 1;
  const auto outcome = refute_bounded(g, config);
  checks.push_back({"no F-system with (2,2) states matches to length 7",
                    outcome.verdict == RefuterOutcome::Verdict::Refuted,
                    "tried=" + std::to_string(outcome.candidates_tried)});
  return checks;
}

std::vector<Check> demo_union() {
  std::vector<Check> checks;
  const auto r = union_demo(18);
  checks.push_back({"U = a^n (bc)^n + (de)^n f^n to length 18", r.matches_expected,
                    std::to_string(r.union_words.size()) + " words"});
  checks.push_back({"U differs from the # language", !r.equals_target,
                    "first divergence " + (r.first_divergence ? (r.first_divergence->empty() ? std::string("eps") : "'" + *r.first_divergence + "'")
                                                              : std::string("none"))});
  const bool at_four = r.first_target_word_outside_union == Word("a#bc");
  checks.push_back({"first # word outside U is a#bc", at_four,
                    r.first_target_word_outside_union.value_or("none")});
  return checks;
}

int cmd_demo(const Options& o, std::ostream& out) {
  std::vector<Check> checks;
  if (o.demo == "example1") {
    checks = demo_example1();
  } else if (o.demo == "thm2") {
    checks = demo_thm2();
  } else {
    checks = demo_union();
  }
  const bool all = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  if (o.json) {
    json arr = json::array();
    for (const auto& c : checks) {
      arr.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    }
    out << json{{"demo", o.demo}, {"passed", all}, {"checks", arr}}.dump() << '\n';
  } else {
    for (const auto& c : checks) {
      out << (c.passed ? "PASS " : "FAIL ") << c.name;
      if (!c.detail.empty()) out << " [" << c.detail << ']';
      out << '\n';
    }
    out << (all ? "PASS" : "FAIL") << ' ' << o.demo << '\n';
  }
  return all ? kExitOk : kExitMismatch;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Folding systems over regular languages", "foldlang"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", o.json, "JSON output");

  auto* fold_cmd = app.add_subcommand("fold", "fold a word along a direction word");
  fold_cmd->add_option("word", o.word)->required();
  fold_cmd->add_option("dirs", o.dirs)->required();

  auto* unfold_cmd = app.add_subcommand("unfold", "invert a fold");
  unfold_cmd->add_option("word", o.word)->required();
  unfold_cmd->add_option("dirs", o.dirs)->required();

  auto* perm_cmd = app.add_subcommand("perm", "print the fold permutation (1-based targets)");
  perm_cmd->add_option("dirs", o.dirs)->required();

  auto add_system = [&](CLI::App* cmd, bool allow_file) {
    auto* core = cmd->add_option("--core", o.core, "core language: regex or @grammar-file");
    auto* proc = cmd->add_option("--proc", o.proc, "procedure language over {u,d}");
    core->needs(proc);
    proc->needs(core);
    if (allow_file) {
      auto* sys = cmd->add_option("--system", o.system, "file with core: and proc: lines");
      sys->excludes(core)->excludes(proc);
    }
    return core;
  };

  auto* compile_cmd = app.add_subcommand("compile", "compile an F-system to a linear grammar");
  add_system(compile_cmd, true);
  compile_cmd->add_flag("--raw", o.raw, "skip trimming");

  auto* member_cmd = app.add_subcommand("member", "membership test");
  auto* member_core = add_system(member_cmd, true);
  member_cmd->add_option("--grammar", o.grammar, "grammar file")->excludes(member_core);
  member_cmd->add_option("word", o.word)->required();

  auto* enum_cmd = app.add_subcommand("enum", "list words up to a length");
  auto* enum_core = add_system(enum_cmd, true);
  auto* enum_grammar = enum_cmd->add_option("--grammar", o.grammar, "grammar file");
  enum_cmd->add_option("--regex", o.regex, "regular language")
      ->excludes(enum_core)
      ->excludes(enum_grammar);
  enum_grammar->excludes(enum_core);
  enum_cmd->add_option("--max-len", o.max_len)->required();

  auto* equiv_cmd = app.add_subcommand("equiv", "bounded comparison of an F-system and a grammar");
  add_system(equiv_cmd, true);
  equiv_cmd->add_option("--grammar", o.grammar, "grammar file")->required();
  equiv_cmd->add_option("--max-len", o.max_len)->required();

  auto* claim_cmd = app.add_subcommand("claim-a", "check the product construction pairwise");
  claim_cmd->add_option("--g1", o.g1, "right-linear grammar file")->required();
  claim_cmd->add_option("--g2", o.g2, "right-linear grammar file over {u,d}")->required();
  claim_cmd->add_option("--max-len", o.max_len)->required();

  auto* pump_cmd = app.add_subcommand("pump", "synchronized pumping decomposition");
  add_system(pump_cmd, true);
  pump_cmd->add_option("--word", o.word)->required();
  pump_cmd->add_option("--dirs", o.dirs)->required();

  auto* refute_cmd = app.add_subcommand("refute", "bounded search for a matching F-system");
  refute_cmd->add_option("--target", o.target, "linear grammar file")->required();
  refute_cmd->add_option("--core-states", o.core_states)->required();
  refute_cmd->add_option("--proc-states", o.proc_states)->required();
  refute_cmd->add_option("--max-len", o.max_len)->required();
  refute_cmd->add_option("--alphabet", o.alphabet, "core alphabet symbols")->required();
  refute_cmd->add_option("--threads", o.threads, "worker threads (0 = all cores)");

  auto* demo_cmd = app.add_subcommand("demo", "reproduce a worked example");
  demo_cmd->add_option("name", o.demo)
      ->required()
      ->check(CLI::IsMember({"example1", "thm2", "union"}));

  std::vector<const char*> argv{"foldlang"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  // member and enum need one language source; CLI11 only sees the exclusions.
  if (*member_cmd && o.grammar.empty() && o.core.empty() && o.system.empty()) {
    err << "error: member needs --grammar, --core/--proc or --system\n";
    return kExitUsage;
  }
  if (*enum_cmd && o.grammar.empty() && o.core.empty() && o.system.empty() && o.regex.empty()) {
    err << "error: enum needs --grammar, --regex, --core/--proc or --system\n";
    return kExitUsage;
  }

  try {
    if (*fold_cmd) return cmd_fold(o, out);
    if (*unfold_cmd) return cmd_unfold(o, out);
    if (*perm_cmd) return cmd_perm(o, out);
    if (*compile_cmd) return cmd_compile(o, out);
    if (*member_cmd) return cmd_member(o, out);
    if (*enum_cmd) return cmd_enum(o, out);
    if (*equiv_cmd) return cmd_equiv(o, out);
    if (*claim_cmd) return cmd_claim_a(o, out);
    if (*pump_cmd) return cmd_pump(o, out);
    if (*refute_cmd) return cmd_refute(o, out, err);
    if (*demo_cmd) return cmd_demo(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    // Structurally invalid input that got past the parsers, e.g. dangling JSON names.
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace foldlang::cli
