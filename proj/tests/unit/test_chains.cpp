#include <gtest/gtest.h>

#include "batchcot/chains.hpp"
#include "batchcot/error.hpp"
#include "batchcot/prompt.hpp"
#include "fixtures.hpp"

using namespace batchcot;

namespace {

CompletionRecord batch_record(std::size_t k, std::string text) {
  const auto qs = fixture::addition_corpus(k);
  CompletionRecord r;
  r.envelope = build_batch_prompt(qs);
  r.raw_text = std::move(text);
  return r;
}

std::string concat(const std::vector<ReasoningChain>& chains) {
  std::string out;
  for (const auto& c : chains) out += c.text;
  return out;
}

}  // namespace

TEST(FinalAnswers, NumberedEntriesAfterMarker) {
  const auto fa = parse_final_answers("work\n[Final Answer]\n1. \\boxed{3}\n2. \\boxed{\\frac{1}{2}}\n", 2);
  EXPECT_FALSE(fa.fallback);
  ASSERT_EQ(fa.entries.size(), 2u);
  EXPECT_EQ(fa.entries[0], (FinalAnswerEntry{1, "3"}));
  EXPECT_EQ(fa.entries[1], (FinalAnswerEntry{2, "\\frac{1}{2}"}));
}

TEST(FinalAnswers, MarkerVariantsAndMissingEntry) {
  const auto fa = parse_final_answers("**Final Answers:**\n1) $\\boxed{3}$\n3: \\boxed{9}\n", 3);
  ASSERT_EQ(fa.entries.size(), 2u);
  EXPECT_EQ(fa.entries[0].position, 1u);
  EXPECT_EQ(fa.entries[1].position, 3u);
  EXPECT_FALSE(fa.fallback);
}

TEST(FinalAnswers, FallbackUsesLastBoxedGroups) {
  const auto fa = parse_final_answers("\\boxed{1} then \\boxed{2} then \\boxed{3}", 2);
  EXPECT_TRUE(fa.fallback);
  ASSERT_EQ(fa.entries.size(), 2u);
  EXPECT_EQ(fa.entries[0], (FinalAnswerEntry{1, "2"}));
  EXPECT_EQ(fa.entries[1], (FinalAnswerEntry{2, "3"}));
}

TEST(FinalAnswers, LastMarkerWins) {
  const auto m = find_final_answer_marker("[Final Answer]\nx\n[final answer]\n");
  ASSERT_TRUE(m);
  EXPECT_EQ(m->begin, 17u);
  EXPECT_FALSE(find_final_answer_marker("a final answer is given in the middle of a long sentence"));
}

TEST(Split, PartitionsSolutionRegionExactly) {
  const std::string text =
      "[Solution Process]\nProblem 1: add 7 and 2.\n1. first step\n2. second step\n\n"
      "Problem 2: add 10 and 13, get 23.\n\n[Final Answer]\n1. \\boxed{9}\n2. \\boxed{23}\n";
  const auto split = split_batch(batch_record(2, text));
  ASSERT_EQ(split.chains.size(), 2u);
  const auto region = text.substr(split.region_begin, split.region_end - split.region_begin);
  EXPECT_EQ(concat(split.chains), region);
  EXPECT_EQ(split.region_begin, std::string("[Solution Process]").size());
  EXPECT_TRUE(split.chains[1].text.starts_with("Problem 2:"));
  EXPECT_EQ(split.chains[0].predicted_answer, "9");
  EXPECT_EQ(split.chains[1].predicted_answer, "23");
  EXPECT_EQ(split.chains[0].question_id, "q001");
  EXPECT_EQ(split.chains[1].origin, ChainOrigin::batch(2, 2));
}

TEST(Split, HeadingStyles) {
  const std::vector<std::string> texts = {
      "### Problem 1\nx\n### Problem 2\ny\n### Problem 3\nz\n[Final Answer]\n1. \\boxed{1}\n2. \\boxed{2}\n3. \\boxed{3}",
      "**Question 1:** x\n**Question 2:** y\n**Question 3:** z\n",
      "1. x\n2. y\n3) z\n",
      "Problem #1. x\nProblem #2. y\nProblem #3. z\n"};
  for (const auto& t : texts) {
    const auto rec = batch_record(3, t);
    const auto split = split_batch(rec);
    ASSERT_EQ(split.chains.size(), 3u) << t;
    EXPECT_EQ(concat(split.chains), t.substr(split.region_begin, split.region_end - split.region_begin)) << t;
  }
}

TEST(Split, DecimalsAreNotHeadings) {
  const std::string text = "1. compute\n2.5 is the midpoint\n2. next\n";
  const auto split = split_batch(batch_record(2, text));
  EXPECT_EQ(split.chains[1].text, "2. next\n");
}

TEST(Split, UnsplittableOutputs) {
  EXPECT_THROW(split_batch(batch_record(3, "Problem 1: x\nProblem 2: y\n")), UnsplittableError);
  EXPECT_THROW(split_batch(batch_record(2, "Problem 2: x\nProblem 1: y\n")), UnsplittableError);
  EXPECT_THROW(split_batch(batch_record(2, "no headings at all \\boxed{1} \\boxed{2}")), UnsplittableError);
  try {
    split_batch(batch_record(3, "Problem 1: x\nProblem 1: again\nProblem 3: z\n"));
    FAIL();
  } catch (const UnsplittableError& e) {
    EXPECT_EQ(e.headings_found(), (std::vector<std::size_t>{1, 1, 3}));
  }
}

TEST(Split, VanillaRecordRejected) {
  CompletionRecord r;
  r.envelope = build_single_prompt(fixture::addition_corpus(1)[0]);
  r.raw_text = "1. x";
  EXPECT_THROW(split_batch(r), InvalidInput);
}

TEST(Split, VanillaChainIsWholeText) {
  CompletionRecord r;
  r.envelope = build_single_prompt(fixture::addition_corpus(1)[0]);
  r.raw_text = "think \\boxed{1} no wait \\boxed{9}";
  const auto c = vanilla_chain(r);
  EXPECT_EQ(c.text, r.raw_text);
  EXPECT_EQ(c.predicted_answer, "9");
  EXPECT_EQ(c.token_count, 5);
  EXPECT_EQ(c.origin, ChainOrigin::vanilla());
}

TEST(Split, ChainJsonRoundTrip) {
  const auto chains = split_batch_chains(batch_record(2, "Problem 1: a \\boxed{1}\nProblem 2: b\n"));
  for (auto c : chains) {
    c.verdict = Verdict::Incorrect;
    EXPECT_EQ(chain_from_json(to_json(c)), c);
  }
}
