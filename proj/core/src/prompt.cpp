#include "batchcot/prompt.hpp"

#include <fmt/format.h>

#include "batchcot/error.hpp"

namespace batchcot {

PromptEnvelope build_single_prompt(const Question& q) {
  if (q.text.empty()) throw InvalidInput("question '" + q.id + "' has empty text");
  PromptEnvelope envelope;
  envelope.text = q.text + "\n\n" + std::string(kStepByStepInstruction);
  envelope.mode = PromptMode::vanilla();
  envelope.question_ids = {q.id};
  return envelope;
}

PromptEnvelope build_batch_prompt(std::span<const Question> questions) {
  if (questions.size() < 2) {
    throw InvalidInput(fmt::format("batch prompt needs at least 2 questions, got {}",
                                   questions.size()));
  }
  // Trailing double spaces follow the published template layout.
  std::string text;
  text += kBatchHeader;
  text += "\nYour response should be in the following format: \n";
  text += kSolutionMarker;
  text += "  \nProvide a detailed solution for each problem...\n\n";
  text += kFinalAnswerMarker;
  text += "  \n";
  for (std::size_t i = 1; i <= questions.size(); ++i) {
    text += fmt::format("{}. \\boxed{{Answer{}}}  \n", i, i);
  }
  text += "Below is the list of questions: \n";

  PromptEnvelope envelope;
  envelope.mode = PromptMode::batch(questions.size());
  for (std::size_t i = 0; i < questions.size(); ++i) {
    const auto& q = questions[i];
    if (q.text.empty()) throw InvalidInput("question '" + q.id + "' has empty text");
    if (i > 0) text += '\n';
    text += fmt::format("{}. {}", i + 1, q.text);
    envelope.question_ids.push_back(q.id);
  }
  envelope.text = std::move(text);
  return envelope;
}

PromptEnvelope build_prompt(std::span<const Question> questions) {
  if (questions.size() == 1) return build_single_prompt(questions.front());
  return build_batch_prompt(questions);
}

Json to_json(const PromptEnvelope& envelope) {
  Json mode{{"kind", envelope.mode.is_batch() ? "batch" : "vanilla"},
            {"size", envelope.mode.size}};
  return Json{{"text", envelope.text}, {"mode", mode}, {"question_ids", envelope.question_ids}};
}

PromptEnvelope envelope_from_json(const Json& j) {
  PromptEnvelope envelope;
  envelope.text = j.at("text").get<std::string>();
  const auto& mode = j.at("mode");
  const auto kind = mode.at("kind").get<std::string>();
  const auto size = mode.at("size").get<std::size_t>();
  if (kind == "vanilla") {
    envelope.mode = PromptMode::vanilla();
  } else if (kind == "batch") {
    if (size < 2) throw InvalidInput("batch envelope with size < 2");
    envelope.mode = PromptMode::batch(size);
  } else {
    throw InvalidInput("unknown prompt mode: " + kind);
  }
  envelope.question_ids = j.at("question_ids").get<std::vector<std::string>>();
  if (envelope.question_ids.size() != envelope.mode.size) {
    throw InvalidInput("envelope question_ids do not match its mode size");
  }
  return envelope;
}

}  // namespace batchcot
