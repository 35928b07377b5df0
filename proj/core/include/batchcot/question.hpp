#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "batchcot/jsonl.hpp"

namespace batchcot {

/// How a benchmark's gold answers are compared.
enum class AnswerKind { Numeric, ChoiceLetter };

std::string to_string(AnswerKind kind);
AnswerKind answer_kind_from_string(const std::string& name);

/// One benchmark or training item.
struct Question {
  std::string id;
  std::string text;
  std::string gold_answer;
  std::string source;

  friend bool operator==(const Question&, const Question&) = default;
};

Json to_json(const Question& q);
Question question_from_json(const Json& j);

/// Loads and validates a question corpus (keys id, text, gold_answer, source).
/// Rejects duplicate ids, empty text, gold answers that do not parse under
/// the given answer kind, and empty corpora. All problems are collected into
/// one ValidationError with per-line diagnostics.
std::vector<Question> load_questions(const std::filesystem::path& path,
                                     AnswerKind kind = AnswerKind::Numeric);
std::vector<Question> validate_questions(const std::vector<JsonlLine>& rows,
                                         const std::string& source_name,
                                         AnswerKind kind = AnswerKind::Numeric);

enum class Grouping { Random, Sequential };

std::string to_string(Grouping grouping);
Grouping grouping_from_string(const std::string& name);

struct QuestionGroups {
  std::vector<std::vector<Question>> groups;
  /// The last group is smaller than the requested size.
  bool has_short_tail = false;
  /// Questions left over as a single item when size >= 2; a batch prompt
  /// needs at least two questions, so these are not sent.
  std::vector<Question> dropped;
};

/// Splits questions into consecutive groups of `size` after an optional
/// seeded shuffle. A trailing remainder of two or more becomes a smaller
/// final group; a remainder of exactly one is reported in `dropped` unless
/// size is 1.
QuestionGroups group_questions(std::vector<Question> questions, std::size_t size,
                               Grouping grouping, std::uint64_t seed);

}  // namespace batchcot
