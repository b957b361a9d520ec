#include <gtest/gtest.h>

#include "foldlang/properties.hpp"
#include "foldlang/regex.hpp"

using namespace foldlang;

// Exhausts roughly 2e12 candidate pairs; kept out of the unit test binary.
TEST(RefuterSearch, FindsGeneratingSystemOfAbcUdd) {
  const Dfa core = compile_regex("(abc)*");
  const Dfa proc = compile_regex("(udd)*", direction_alphabet());
  const auto target = fsystem_to_linear(core, proc);
  RefuterConfig config;
  config.max_core_states = 4;
  config.max_proc_states = 4;
  config.max_length = 9;
  config.core_alphabet = Alphabet("abc");
  const auto outcome = refute_bounded(target, config);
  ASSERT_EQ(outcome.verdict, RefuterOutcome::Verdict::Found);
  EXPECT_TRUE(bounded_equiv(*outcome.witness, target, 9).equivalent);
  EXPECT_LE(outcome.witness->core().state_count(), 4U);
  EXPECT_LE(outcome.witness->proc().state_count(), 4U);
}
