#include "batchcot/question.hpp"

#include <algorithm>
#include <unordered_set>

#include <fmt/format.h>

#include "batchcot/error.hpp"
#include "batchcot/grading.hpp"
#include "batchcot/numeric.hpp"
#include "batchcot/rng.hpp"

namespace batchcot {

std::string to_string(AnswerKind kind) {
  return kind == AnswerKind::Numeric ? "numeric" : "choice-letter";
}

AnswerKind answer_kind_from_string(const std::string& name) {
  if (name == "numeric") return AnswerKind::Numeric;
  if (name == "choice-letter") return AnswerKind::ChoiceLetter;
  throw InvalidInput("unknown answer kind: " + name);
}

Json to_json(const Question& q) {
  return Json{{"id", q.id}, {"text", q.text}, {"gold_answer", q.gold_answer}, {"source", q.source}};
}

Question question_from_json(const Json& j) {
  Question q;
  q.id = j.at("id").get<std::string>();
  q.text = j.at("text").get<std::string>();
  q.gold_answer = j.at("gold_answer").is_string() ? j.at("gold_answer").get<std::string>()
                                                  : j.at("gold_answer").dump();
  q.source = j.value("source", std::string{});
  return q;
}

std::vector<Question> validate_questions(const std::vector<JsonlLine>& rows,
                                         const std::string& source_name, AnswerKind kind) {
  std::vector<std::string> problems;
  std::vector<Question> questions;
  std::unordered_set<std::string> seen;
  for (const auto& row : rows) {
    const auto where = fmt::format("{}:{}", source_name, row.line_number);
    Question q;
    try {
      q = question_from_json(row.value);
    } catch (const Json::exception& e) {
      problems.push_back(fmt::format("{}: {}", where, e.what()));
      continue;
    }
    if (q.id.empty()) problems.push_back(where + ": empty id");
    if (!seen.insert(q.id).second) problems.push_back(fmt::format("{}: duplicate id '{}'", where, q.id));
    if (q.text.empty()) problems.push_back(fmt::format("{}: empty text for '{}'", where, q.id));
    const bool gold_ok = kind == AnswerKind::Numeric ? normalize_numeric(q.gold_answer).has_value()
                                                     : normalize_choice(q.gold_answer).has_value();
    if (!gold_ok) {
      problems.push_back(fmt::format("{}: gold_answer '{}' is not a valid {} answer", where,
                                     q.gold_answer, to_string(kind)));
    }
    questions.push_back(std::move(q));
  }
  if (questions.empty() && problems.empty()) problems.push_back(source_name + ": corpus is empty");
  if (!problems.empty()) {
    throw ValidationError(fmt::format("{}: {} validation problem(s)", source_name, problems.size()),
                          std::move(problems));
  }
  return questions;
}

std::vector<Question> load_questions(const std::filesystem::path& path, AnswerKind kind) {
  return validate_questions(read_jsonl(path), path.string(), kind);
}

std::string to_string(Grouping grouping) {
  return grouping == Grouping::Random ? "random" : "sequential";
}

Grouping grouping_from_string(const std::string& name) {
  if (name == "random") return Grouping::Random;
  if (name == "sequential") return Grouping::Sequential;
  throw InvalidInput("unknown grouping: " + name);
}

QuestionGroups group_questions(std::vector<Question> questions, std::size_t size,
                               Grouping grouping, std::uint64_t seed) {
  if (size == 0) throw InvalidInput("group size must be >= 1");
  if (grouping == Grouping::Random) {
    Rng rng(seed);
    rng.shuffle(std::span<Question>(questions));
  }
  QuestionGroups out;
  for (std::size_t begin = 0; begin < questions.size(); begin += size) {
    const std::size_t end = std::min(questions.size(), begin + size);
    std::vector<Question> group(questions.begin() + static_cast<std::ptrdiff_t>(begin),
                                questions.begin() + static_cast<std::ptrdiff_t>(end));
    if (group.size() < size) {
      if (group.size() == 1 && size >= 2) {
        out.dropped = std::move(group);
        break;
      }
      out.has_short_tail = true;
    }
    out.groups.push_back(std::move(group));
  }
  return out;
}

}  // namespace batchcot
