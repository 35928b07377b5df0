#pragma once

#include <optional>
#include <string>
#include <vector>

#include "batchcot/benchmark_registry.hpp"
#include "batchcot/client.hpp"
#include "batchcot/verdict.hpp"

namespace batchcot {

struct EvalRecord {
  std::string question_id;
  std::size_t sample = 0;
  std::optional<CompletionRecord> completion;
  std::optional<std::string> predicted_answer;
  std::optional<Verdict> verdict;  // absent for failed requests
  std::string error;
};

Json to_json(const EvalRecord& record);

/// Per-benchmark accuracy and mean completion tokens. accuracy is the mean
/// correctness over all graded samples (no pass@k).
struct EvalAggregate {
  std::string benchmark;
  double accuracy = 0.0;
  double mean_tokens = 0.0;
  std::size_t n_questions = 0;
  std::size_t n_samples = 0;  // graded samples
  std::size_t exclusions = 0;
  std::size_t samples_per_question = 1;
  std::size_t n_correct = 0;
  std::int64_t total_tokens = 0;
};

Json to_json(const EvalAggregate& aggregate);
EvalAggregate aggregate_from_json(const Json& j);

/// Sample-weighted merge of aggregates for the same benchmark.
EvalAggregate merge_aggregates(const std::vector<EvalAggregate>& parts);

struct EvalResult {
  std::vector<EvalRecord> records;
  EvalAggregate aggregate;
};

/// Loads and validates spec.corpus, then evaluates. Validation errors are
/// raised before any request is issued.
EvalResult evaluate(const BenchmarkSpec& spec, const InferenceClient& client);

/// samples_per_question single-question completions per item; sample j of
/// each question is requested with seed base + j where base is the
/// endpoint seed (0 when unset).
EvalResult evaluate(const BenchmarkSpec& spec, const std::vector<Question>& questions,
                    const InferenceClient& client);

}  // namespace batchcot
