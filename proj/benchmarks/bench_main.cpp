#include <benchmark/benchmark.h>

#include <string>

#include "batchcot/boxed.hpp"
#include "batchcot/chains.hpp"
#include "batchcot/grpo.hpp"
#include "batchcot/numeric.hpp"
#include "batchcot/prompt.hpp"
#include "batchcot/rng.hpp"

using namespace batchcot;

namespace {

std::vector<Question> questions(std::size_t k) {
  std::vector<Question> qs;
  for (std::size_t i = 0; i < k; ++i) {
    qs.push_back({"q" + std::to_string(i), "What is " + std::to_string(i) + " plus 1?", std::to_string(i + 1), "bench"});
  }
  return qs;
}

void BM_ExtractBoxed(benchmark::State& state) {
  std::string text;
  for (int i = 0; i < state.range(0); ++i) text += "step " + std::to_string(i) + " gives \\boxed{\\frac{" + std::to_string(i) + "}{7}}\n";
  for (auto _ : state) benchmark::DoNotOptimize(extract_boxed(text));
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ExtractBoxed)->Arg(8)->Arg(512);

void BM_NormalizeNumeric(benchmark::State& state) {
  const std::vector<std::string> inputs = {"\\frac{12}{16}", "-0.750", "1,234,567", "$42$", "\\boxed{3/4}",
                                           "123456789012345678901234567890.5"};
  for (auto _ : state)
    for (const auto& s : inputs) benchmark::DoNotOptimize(normalize_numeric(s));
}
BENCHMARK(BM_NormalizeNumeric);

void BM_GrpoLoss(benchmark::State& state) {
  Rng rng(1);
  Policy policy(8), old_policy(8);
  for (auto& w : policy.weights()) w = rng.normal();
  std::vector<double> x(8);
  for (auto& v : x) v = rng.normal();
  const auto group = sample_group(old_policy, x, Label::B, static_cast<std::size_t>(state.range(0)),
                                  AdvantageMode::MeanStd, rng);
  GrpoConfig cfg;
  cfg.group_size = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(grpo_loss(policy, old_policy, group, cfg));
}
BENCHMARK(BM_GrpoLoss)->Arg(16)->Arg(64);

void BM_SplitBatch(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  CompletionRecord rec;
  rec.envelope = build_batch_prompt(questions(k));
  std::string text = "[Solution Process]\n";
  for (std::size_t i = 1; i <= k; ++i) text += "Problem " + std::to_string(i) + ": add the numbers and check.\n\n";
  text += "[Final Answer]\n";
  for (std::size_t i = 1; i <= k; ++i) text += std::to_string(i) + ". \\boxed{" + std::to_string(i) + "}\n";
  rec.raw_text = text;
  for (auto _ : state) benchmark::DoNotOptimize(split_batch_chains(rec));
}
BENCHMARK(BM_SplitBatch)->Arg(3)->Arg(15);

}  // namespace

BENCHMARK_MAIN();
