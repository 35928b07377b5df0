#include <gtest/gtest.h>

#include <map>

#include "batchcot/error.hpp"
#include "batchcot/preference.hpp"
#include "fixtures.hpp"

using namespace batchcot;

TEST(Labeling, FullTruthTable) {
  using K = ChainOrigin::Kind;
  const std::map<std::pair<K, Verdict>, Label> expected = {
      {{K::Vanilla, Verdict::Correct}, Label::A},     {{K::Vanilla, Verdict::Incorrect}, Label::C},
      {{K::Vanilla, Verdict::Unparseable}, Label::C}, {{K::Batch, Verdict::Correct}, Label::B},
      {{K::Batch, Verdict::Incorrect}, Label::C},     {{K::Batch, Verdict::Unparseable}, Label::C}};
  for (const auto& [input, label] : expected) EXPECT_EQ(label_sample(input.first, input.second), label);
}

TEST(Labeling, OptionSentences) {
  EXPECT_EQ(kOptionTexts[0],
            "The reasoning process is correct, but I think there is a simpler and quicker way to approach it.");
  EXPECT_EQ(kOptionTexts[1], "The reasoning process is correct, and I believe the thinking is thorough and concise.");
  EXPECT_EQ(kOptionTexts[2], "The reasoning process is wrong.");
}

namespace {

ReasoningChain chain(const Question& q, ChainOrigin origin, const std::string& answer) {
  ReasoningChain c;
  c.question_id = q.id;
  c.text = "reasoning for " + q.id + " -> " + answer;
  c.origin = origin;
  c.predicted_answer = answer;
  c.token_count = origin.is_batch() ? 50 : 100;
  return c;
}

std::vector<ReasoningChain> mixed_chains(const std::vector<Question>& qs) {
  std::vector<ReasoningChain> out;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    const auto& q = qs[i];
    out.push_back(chain(q, ChainOrigin::vanilla(), i % 2 ? q.gold_answer : "-1"));
    if (i % 3 != 0) out.push_back(chain(q, ChainOrigin::batch(2, 1 + i % 2), q.gold_answer));
  }
  return out;
}

}  // namespace

TEST(Dataset, PerChainCountsAndDeterminism) {
  const auto qs = fixture::addition_corpus(12);
  const auto chains = mixed_chains(qs);
  const auto d1 = build_dataset(chains, qs, {7, DatasetMode::PerChain});
  const auto d2 = build_dataset(chains, qs, {7, DatasetMode::PerChain});
  const auto d3 = build_dataset(chains, qs, {8, DatasetMode::PerChain});
  EXPECT_EQ(d1.samples, d2.samples);
  EXPECT_NE(d1.samples, d3.samples);
  EXPECT_EQ(d1.samples.size(), chains.size());
  EXPECT_EQ(d1.counts, (LabelCounts{6, 8, 6}));

  // Input order does not matter: only the seed does.
  auto reversed = chains;
  std::reverse(reversed.begin(), reversed.end());
  EXPECT_EQ(build_dataset(reversed, qs, {7, DatasetMode::PerChain}).samples, d1.samples);
}

TEST(Dataset, PairedKeepsQuestionsWithBothOrigins) {
  const auto qs = fixture::addition_corpus(12);
  const auto d = build_dataset(mixed_chains(qs), qs, {1, DatasetMode::Paired});
  EXPECT_EQ(d.samples.size(), 16u);
  EXPECT_EQ(d.unpaired_excluded, 4u);
  for (std::size_t i = 0; i + 1 < d.samples.size(); i += 2)
    EXPECT_EQ(d.samples[i].question_id, d.samples[i + 1].question_id);
}

TEST(Dataset, UnknownQuestionIds) {
  const auto qs = fixture::addition_corpus(2);
  auto chains = mixed_chains(qs);
  chains.push_back(chain({"ghost", "t", "1", ""}, ChainOrigin::vanilla(), "1"));
  EXPECT_THROW(build_dataset(chains, qs), InvalidInput);
}

TEST(Dataset, UnparseableCountedAndLabelledC) {
  const auto qs = fixture::addition_corpus(1);
  auto c = chain(qs[0], ChainOrigin::vanilla(), "no idea");
  const auto d = build_dataset(std::vector<ReasoningChain>{c}, qs);
  EXPECT_EQ(d.unparseable, 1u);
  EXPECT_EQ(d.samples[0].gold_label, Label::C);
  EXPECT_EQ(d.samples[0].verdict, Verdict::Unparseable);
}

TEST(Dataset, JsonRoundTripAndValidation) {
  const auto qs = fixture::addition_corpus(6);
  const auto d = build_dataset(mixed_chains(qs), qs, {3});
  for (const auto& s : d.samples) {
    const auto j = to_json(s);
    EXPECT_EQ(j.at("options").size(), 3u);
    EXPECT_EQ(preference_from_json(j), s);
  }
  auto bad = to_json(d.samples[0]);
  bad["gold_label"] = d.samples[0].gold_label == Label::A ? "B" : "A";
  EXPECT_THROW(preference_from_json(bad), InvalidInput);
  auto edited = to_json(d.samples[0]);
  edited["options"][1] = "Looks fine.";
  EXPECT_THROW(preference_from_json(edited), InvalidInput);
}

TEST(Dataset, SummaryCarriesSeedAndTemplate) {
  const auto qs = fixture::addition_corpus(4);
  const auto s = dataset_summary(build_dataset(mixed_chains(qs), qs, {5}));
  EXPECT_EQ(s.at("seed"), 5);
  EXPECT_EQ(s.at("template_version"), std::string(kJudgeTemplateVersion));
}

TEST(Dataset, JudgePromptContainsOptions) {
  const auto qs = fixture::addition_corpus(1);
  const auto d = build_dataset(std::vector<ReasoningChain>{chain(qs[0], ChainOrigin::vanilla(), qs[0].gold_answer)}, qs);
  const auto prompt = render_judge_prompt(d.samples[0]);
  EXPECT_NE(prompt.find(qs[0].text), std::string::npos);
  for (auto o : kOptionTexts) EXPECT_NE(prompt.find(o), std::string::npos);
}
