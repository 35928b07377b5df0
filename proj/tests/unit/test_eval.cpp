#include <gtest/gtest.h>

#include "batchcot/error.hpp"
#include "batchcot/eval.hpp"
#include "batchcot/mock_engine.hpp"
#include "fixtures.hpp"

using namespace batchcot;

namespace {

BenchmarkSpec spec_with(std::size_t samples) {
  BenchmarkSpec s;
  s.name = "fixture";
  s.samples_per_question = samples;
  return s;
}

}  // namespace

TEST(Registry, KnownBenchmarks) {
  EXPECT_EQ(benchmark_registry().size(), 6u);
  EXPECT_EQ(find_benchmark("aime 2024")->samples_per_question, 5u);
  EXPECT_EQ(find_benchmark("AIME2025")->samples_per_question, 5u);
  EXPECT_EQ(find_benchmark("gsm8k")->samples_per_question, 1u);
  EXPECT_EQ(find_benchmark("GPQA-Diamond")->answer_kind, AnswerKind::ChoiceLetter);
  EXPECT_FALSE(find_benchmark("nope"));
}

TEST(Eval, AllCorrectInHundredTokens) {
  const auto qs = fixture::addition_corpus(5);
  MockScript script;
  script.set_default([&](const ChatRequest& r) {
    for (const auto& q : qs)
      if (r.prompt.starts_with(q.text)) return ScriptedResponse{"\\boxed{" + q.gold_answer + "}", 100};
    return ScriptedResponse{"?", 1};
  });
  InferenceClient client(EndpointConfig{}, std::make_shared<MockEngine>(std::move(script)));
  const auto r = evaluate(spec_with(1), qs, client);
  EXPECT_DOUBLE_EQ(r.aggregate.accuracy, 1.0);
  EXPECT_DOUBLE_EQ(r.aggregate.mean_tokens, 100.0);
  EXPECT_EQ(r.aggregate.n_samples, 5u);
}

TEST(Eval, RepeatSamplingAccuracyIsMeanOverSamples) {
  // 2 questions x 5 samples, 7 correct: sample seeds are base + j.
  const auto qs = fixture::addition_corpus(2);
  MockScript script;
  script.set_default([&](const ChatRequest& r) {
    const bool first = r.prompt.starts_with(qs[0].text);
    const auto& q = first ? qs[0] : qs[1];
    const auto j = *r.seed - 100;
    const bool right = first ? j < 4 : j < 3;
    return ScriptedResponse{"\\boxed{" + (right ? q.gold_answer : std::string("0")) + "}", 10};
  });
  EndpointConfig cfg;
  cfg.seed = 100;
  InferenceClient client(cfg, std::make_shared<MockEngine>(std::move(script)));
  const auto r = evaluate(spec_with(5), qs, client);
  EXPECT_EQ(r.aggregate.n_samples, 10u);
  EXPECT_EQ(r.aggregate.n_correct, 7u);
  EXPECT_DOUBLE_EQ(r.aggregate.accuracy, 0.7);
}

TEST(Eval, EmptyCorpusIssuesNoRequests) {
  auto engine = std::make_shared<MockEngine>(MockScript{});
  InferenceClient client(EndpointConfig{}, engine);
  EXPECT_THROW(evaluate(spec_with(1), {}, client), ValidationError);
  EXPECT_EQ(engine->requests(), 0u);
}

TEST(Eval, CorpusErrorsAbortBeforeRequests) {
  fixture::TempDir dir;
  write_text_file(dir / "bad.jsonl", "{\"id\":\"a\",\"text\":\"t\",\"gold_answer\":\"x\"}\n");
  auto engine = std::make_shared<MockEngine>(MockScript{});
  InferenceClient client(EndpointConfig{}, engine);
  auto spec = spec_with(1);
  spec.corpus = dir / "bad.jsonl";
  EXPECT_THROW(evaluate(spec, client), ValidationError);
  EXPECT_EQ(engine->requests(), 0u);
}

TEST(Eval, FailuresExcludedWithCount) {
  const auto qs = fixture::addition_corpus(4);
  auto engine = std::make_shared<MockEngine>(fixture::solver_script(fixture::truth_table_entries(qs)));
  engine->inject_statuses({403});
  EndpointConfig cfg;
  cfg.max_concurrency = 1;
  InferenceClient client(cfg, engine);
  const auto r = evaluate(spec_with(2), qs, client);
  EXPECT_EQ(r.aggregate.exclusions, 1u);
  EXPECT_EQ(r.aggregate.n_samples, r.aggregate.n_questions * 2 - r.aggregate.exclusions);
}

TEST(Eval, LinearOverPartitionsAndDeterministic) {
  const auto qs = fixture::addition_corpus(12);
  auto entries = fixture::truth_table_entries(qs);
  auto make_client = [&] {
    return InferenceClient(EndpointConfig{}, std::make_shared<MockEngine>(
                                                 [&] {
                                                   MockScript s;
                                                   s.set_default(ScriptedSolver(entries, 0.7, 25));
                                                   return s;
                                                 }()));
  };
  const auto whole = evaluate(spec_with(3), qs, make_client()).aggregate;
  const auto again = evaluate(spec_with(3), qs, make_client()).aggregate;
  EXPECT_EQ(to_json(whole), to_json(again));

  const std::vector<Question> left(qs.begin(), qs.begin() + 5), right(qs.begin() + 5, qs.end());
  const auto merged = merge_aggregates({evaluate(spec_with(3), left, make_client()).aggregate,
                                        evaluate(spec_with(3), right, make_client()).aggregate});
  EXPECT_EQ(merged.n_samples, whole.n_samples);
  EXPECT_EQ(merged.n_correct, whole.n_correct);
  EXPECT_EQ(merged.total_tokens, whole.total_tokens);
  EXPECT_NEAR(merged.accuracy, whole.accuracy, 1e-15);
  EXPECT_NEAR(merged.mean_tokens, whole.mean_tokens, 1e-9);
}

TEST(Eval, ChoiceLetterBenchmark) {
  const std::vector<Question> qs{{"g1", "Which? (A) x (B) y", "B", "gpqa"}};
  MockScript script;
  script.set_default([](const ChatRequest&) { return ScriptedResponse{"so \\boxed{(B)}", 10}; });
  InferenceClient client(EndpointConfig{}, std::make_shared<MockEngine>(std::move(script)));
  auto spec = *find_benchmark("GPQA-Diamond");
  const auto r = evaluate(spec, qs, client);
  EXPECT_DOUBLE_EQ(r.aggregate.accuracy, 1.0);
}
