#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "batchcot/client.hpp"
#include "batchcot/completion.hpp"
#include "batchcot/question.hpp"

namespace batchcot {

struct FailedGroup {
  std::vector<std::string> question_ids;
  std::string error;
  bool transport_failure = false;
  std::size_t attempts = 0;
};

/// Completions for one batch size over a whole corpus.
struct GenerationRun {
  std::size_t batch_size = 1;
  std::size_t groups = 0;
  bool short_tail = false;
  std::vector<std::string> dropped_question_ids;
  std::vector<CompletionRecord> records;  // successful groups, in group order
  std::vector<FailedGroup> failures;
};

/// Groups the corpus (seeded shuffle or sequential), builds one prompt per
/// group and collects completions through the client.
GenerationRun generate_completions(const std::vector<Question>& questions, std::size_t batch_size,
                                   const InferenceClient& client, std::uint64_t seed,
                                   Grouping grouping = Grouping::Random);

struct ExperimentRow {
  std::size_t batch_size = 1;
  std::size_t groups = 0;
  std::size_t requests_ok = 0;
  std::size_t requests_failed = 0;
  std::size_t questions_measured = 0;  // questions in successful groups
  std::size_t questions_excluded = 0;  // in failed groups
  std::size_t questions_dropped = 0;   // single leftover for k >= 2
  bool short_tail = false;
  std::int64_t total_tokens = 0;
  /// total completion tokens / questions measured (uniform attribution).
  double tokens_per_question = 0.0;
  /// Mean post-hoc token count of split chains; nullopt when nothing split.
  std::optional<double> split_tokens_per_question;
  std::size_t unsplittable = 0;
  std::size_t correct = 0;
  double accuracy = 0.0;  // correct / questions measured

  std::string label() const;  // "Vanilla" or "Batch-k"
};

struct ExperimentReport {
  std::uint64_t seed = 0;
  Grouping grouping = Grouping::Random;
  std::string endpoint;
  std::string model;
  double temperature = 0.0;
  std::int64_t max_tokens = 0;
  std::vector<ExperimentRow> rows;
};

/// Builds one row from completed generation output.
ExperimentRow measure_generation(const GenerationRun& run, const std::vector<Question>& questions,
                                 TokenScheme split_scheme = TokenScheme::Whitespace);

/// Vanilla-vs-Batch-k measurement: for each size, generate over the seeded
/// grouping, grade per-question answers and aggregate tokens and accuracy.
/// batch_sizes entries must be >= 1 (1 is Vanilla).
ExperimentReport run_batch_experiment(const std::vector<Question>& questions,
                                      const std::vector<std::size_t>& batch_sizes,
                                      const InferenceClient& client, std::uint64_t seed,
                                      Grouping grouping = Grouping::Random);

Json to_json(const ExperimentRow& row);
std::vector<Json> experiment_jsonl(const ExperimentReport& report);
std::string render_experiment_table(const ExperimentReport& report);

}  // namespace batchcot
