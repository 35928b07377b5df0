#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "batchcot/question.hpp"

namespace batchcot {

struct BenchmarkSpec {
  std::string name;
  std::filesystem::path corpus;  // user-supplied JSONL; the registry ships none
  std::size_t samples_per_question = 1;
  std::string description;
  AnswerKind answer_kind = AnswerKind::Numeric;
  std::size_t expected_questions = 0;  // 0 when the size is not fixed

  void validate() const;
};

/// GSM8K, MATH-500, AIME 2024, AIME 2025, AMC 2023 and GPQA-Diamond. The
/// AIME sets default to 5 samples per question; GPQA-Diamond is graded as a
/// choice letter.
const std::vector<BenchmarkSpec>& benchmark_registry();

/// Case-insensitive lookup by name.
std::optional<BenchmarkSpec> find_benchmark(std::string_view name);

}  // namespace batchcot
