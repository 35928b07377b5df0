#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "batchcot/jsonl.hpp"
#include "batchcot/question.hpp"

namespace batchcot {

inline constexpr std::string_view kStepByStepInstruction =
    "Please reason step by step, and put your final answer within \\boxed{}.";
inline constexpr std::string_view kBatchHeader =
    "Please answer the following math problems in order and summarize all answers at the end:";
inline constexpr std::string_view kSolutionMarker = "[Solution Process]";
inline constexpr std::string_view kFinalAnswerMarker = "[Final Answer]";

/// Vanilla is a single question; Batch carries k >= 2 questions.
struct PromptMode {
  enum class Kind { Vanilla, Batch };
  Kind kind = Kind::Vanilla;
  std::size_t size = 1;

  static PromptMode vanilla() { return {Kind::Vanilla, 1}; }
  static PromptMode batch(std::size_t k) { return {Kind::Batch, k}; }
  bool is_batch() const { return kind == Kind::Batch; }

  friend bool operator==(const PromptMode&, const PromptMode&) = default;
};

struct PromptEnvelope {
  std::string text;
  PromptMode mode;
  std::vector<std::string> question_ids;

  friend bool operator==(const PromptEnvelope&, const PromptEnvelope&) = default;
};

/// "<question>\n\n<step-by-step instruction>"
PromptEnvelope build_single_prompt(const Question& q);

/// Batch-inference prompt with a k-slot answer template and the numbered
/// question list ("1. <text>\n2. <text>..."). Requires at least 2 questions.
PromptEnvelope build_batch_prompt(std::span<const Question> questions);

/// Dispatches on group size: 1 -> single, >= 2 -> batch.
PromptEnvelope build_prompt(std::span<const Question> questions);

Json to_json(const PromptEnvelope& envelope);
PromptEnvelope envelope_from_json(const Json& j);

}  // namespace batchcot
