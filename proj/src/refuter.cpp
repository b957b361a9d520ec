#include <algorithm>
#include <chrono>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "foldlang/error.hpp"
#include "foldlang/properties.hpp"

namespace foldlang {

namespace {

constexpr std::uint64_t kProgressEvery = 10'000;
constexpr std::size_t kCoreChunk = 4096;

void generate_tables(std::size_t n, std::size_t k, std::vector<State>& table, std::size_t pos,
                     std::size_t discovered, const std::function<bool(const std::vector<State>&)>& emit,
                     bool& keep_going) {
  if (!keep_going) return;
  if (pos == n * k) {
    if (discovered == n) keep_going = emit(table);
    return;
  }
  // A row whose state was never discovered by earlier rows is unreachable.
  if (pos / k >= discovered) return;
  const std::size_t limit = std::min(discovered, n - 1);
  for (std::size_t t = 0; t <= limit && keep_going; ++t) {
    table[pos] = static_cast<State>(t);
    generate_tables(n, k, table, pos + 1, discovered + (t == discovered ? 1 : 0), emit, keep_going);
  }
}

struct Candidate {
  Dfa dfa;
  std::vector<std::uint64_t> counts;
};

// Per-length word counts of the target; index = length.
struct Target {
  std::vector<WordSet> words;
  std::vector<std::uint64_t> counts;
};

// First length at which the core counts alone rule out every procedure.
std::optional<std::size_t> core_prune(const std::vector<std::uint64_t>& core, const Target& t) {
  for (std::size_t n = 0; n < core.size(); ++n) {
    if (t.counts[n] > 0 && (core[n] == 0 || core[n] > t.counts[n])) return n;
  }
  return std::nullopt;
}

std::optional<std::size_t> proc_prune(const std::vector<std::uint64_t>& proc, const Target& t) {
  for (std::size_t n = 0; n < proc.size(); ++n) {
    if (t.counts[n] > 0 && proc[n] == 0) return n;
  }
  return std::nullopt;
}

// Folding with a fixed direction word is injective, so a nonempty length
// slice of L(Phi) holds between |core_n| and |core_n| * |proc_n| words.
std::optional<std::size_t> pair_prune(const std::vector<std::uint64_t>& core,
                                      const std::vector<std::uint64_t>& proc, const Target& t) {
  for (std::size_t n = 0; n < core.size(); ++n) {
    if (core[n] == 0 || proc[n] == 0) {
      if (t.counts[n] != 0) return n;
      continue;
    }
    const std::uint64_t low = core[n];
    const bool overflow = proc[n] != 0 && core[n] > UINT64_MAX / proc[n];
    const std::uint64_t high = overflow ? UINT64_MAX : core[n] * proc[n];
    if (t.counts[n] < low || t.counts[n] > high) return n;
  }
  return std::nullopt;
}

bool folds_match(const FSystem& phi, const Target& t) {
  for (std::size_t n = 0; n < t.words.size(); ++n) {
    if (brute_words_of_length(phi, n) != t.words[n]) return false;
  }
  return true;
}

struct ChunkResult {
  std::uint64_t tried = 0;
  std::uint64_t compared = 0;
  std::vector<std::uint64_t> pruned;
  std::optional<std::pair<std::size_t, std::size_t>> witness;  // (core, proc) in chunk/proc order
};

ChunkResult evaluate_cores(const std::vector<Candidate>& cores, std::size_t offset, std::size_t stride,
                           const std::vector<Candidate>& procs, std::size_t total_procs,
                           const std::vector<std::uint64_t>& proc_pruned, const Target& t,
                           std::size_t max_length) {
  ChunkResult r;
  r.pruned.assign(max_length + 1, 0);
  for (std::size_t c = offset; c < cores.size(); c += stride) {
    r.tried += total_procs;
    for (std::size_t n = 0; n <= max_length; ++n) r.pruned[n] += proc_pruned[n];
    const auto& core = cores[c];
    if (auto bad = core_prune(core.counts, t)) {
      r.pruned[*bad] += procs.size();
      continue;
    }
    for (std::size_t p = 0; p < procs.size(); ++p) {
      if (auto bad = pair_prune(core.counts, procs[p].counts, t)) {
        ++r.pruned[*bad];
        continue;
      }
      ++r.compared;
      FSystem phi(core.dfa, procs[p].dfa);
      if (folds_match(phi, t)) {
        if (!r.witness || std::pair{c, p} < *r.witness) r.witness = std::pair{c, p};
        break;
      }
    }
  }
  return r;
}

}  // namespace

void for_each_canonical_dfa(const Alphabet& alphabet, std::size_t max_states,
                            const std::function<bool(const Dfa&)>& visit) {
  const std::size_t k = alphabet.size();
  bool keep_going = true;
  for (std::size_t n = 1; n <= max_states && keep_going; ++n) {
    std::vector<State> table(n * k);
    auto emit = [&](const std::vector<State>& delta) {
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<bool> accepting(n);
        for (std::size_t q = 0; q < n; ++q) accepting[q] = (mask >> q) & 1U;
        if (!visit(Dfa(alphabet, n, 0, std::move(accepting), delta))) return false;
      }
      return true;
    };
    generate_tables(n, k, table, 0, 1, emit, keep_going);
  }
}

void RefuterConfig::validate() const {
  if (max_core_states == 0 || max_proc_states == 0 || max_length == 0) {
    throw PreconditionViolation("refuter bounds must be at least 1");
  }
  if (max_core_states > 8 || max_proc_states > 8) {
    throw PreconditionViolation("refuter state bounds above 8 are not supported");
  }
  if (max_length > cap) {
    throw CapExceeded("refuter length " + std::to_string(max_length) + " exceeds cap " +
                      std::to_string(cap));
  }
}

RefuterOutcome refute_bounded(const LinearGrammar& target, const RefuterConfig& config,
                              std::ostream* progress) {
  config.validate();
  const std::size_t max_length = config.max_length;
  const auto started = std::chrono::steady_clock::now();

  Target t;
  t.words.resize(max_length + 1);
  t.counts.assign(max_length + 1, 0);
  for (auto& w : enumerate_linear(target, max_length, std::max(config.cap, max_length))) {
    ++t.counts[w.size()];
    t.words[w.size()].insert(std::move(w));
  }

  RefuterOutcome outcome;
  outcome.pruned_at_length.assign(max_length + 1, 0);

  std::vector<Candidate> procs;
  std::vector<std::uint64_t> proc_pruned(max_length + 1, 0);
  std::size_t total_procs = 0;
  for_each_canonical_dfa(direction_alphabet(), config.max_proc_states, [&](const Dfa& d) {
    ++total_procs;
    auto counts = count_words_upto(d, max_length);
    if (auto bad = proc_prune(counts, t)) {
      ++proc_pruned[*bad];
    } else {
      procs.push_back({d, std::move(counts)});
    }
    return true;
  });

  unsigned threads = config.threads != 0 ? config.threads : std::thread::hardware_concurrency();
  threads = std::max(1U, threads);

  std::uint64_t next_report = kProgressEvery;
  auto report_progress = [&] {
    if (progress == nullptr || outcome.candidates_tried < next_report) return;
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    *progress << "tried=" << outcome.candidates_tried << " pruned=" << outcome.candidates_pruned
              << " elapsed=" << std::fixed << std::setprecision(1) << elapsed << '\n'
              << std::flush;
    next_report = (outcome.candidates_tried / kProgressEvery + 1) * kProgressEvery;
  };

  std::vector<Candidate> chunk;
  auto flush_chunk = [&]() -> bool {
    std::vector<ChunkResult> results(threads);
    if (threads == 1) {
      results[0] = evaluate_cores(chunk, 0, 1, procs, total_procs, proc_pruned, t, max_length);
    } else {
      std::vector<std::jthread> workers;
      for (unsigned w = 0; w < threads; ++w) {
        workers.emplace_back([&, w] {
          results[w] = evaluate_cores(chunk, w, threads, procs, total_procs, proc_pruned, t, max_length);
        });
      }
    }
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (const auto& r : results) {
      outcome.candidates_tried += r.tried;
      outcome.candidates_compared += r.compared;
      for (std::size_t n = 0; n <= max_length; ++n) {
        outcome.pruned_at_length[n] += r.pruned[n];
        outcome.candidates_pruned += r.pruned[n];
      }
      if (r.witness && (!best || *r.witness < *best)) best = r.witness;
    }
    report_progress();
    if (best) {
      outcome.verdict = RefuterOutcome::Verdict::Found;
      outcome.witness.emplace(chunk[best->first].dfa, procs[best->second].dfa);
      return false;
    }
    chunk.clear();
    return true;
  };

  bool searching = true;
  for_each_canonical_dfa(config.core_alphabet, config.max_core_states, [&](const Dfa& d) {
    chunk.push_back({d, count_words_upto(d, max_length)});
    if (chunk.size() == kCoreChunk) searching = flush_chunk();
    return searching;
  });
  if (searching && !chunk.empty()) flush_chunk();
  return outcome;
}

std::string verdict_line(const RefuterOutcome& outcome, const RefuterConfig& config) {
  std::ostringstream out;
  if (outcome.verdict == RefuterOutcome::Verdict::Refuted) {
    out << "REFUTED bounds=(" << config.max_core_states << ',' << config.max_proc_states << ','
        << config.max_length << ')';
  } else {
    out << "FOUND core=" << compact_dump(outcome.witness->core())
        << " proc=" << compact_dump(outcome.witness->proc());
  }
  return out.str();
}

}  // namespace foldlang
