#include "batchcot/grading.hpp"

#include <cctype>

#include "batchcot/error.hpp"
#include "batchcot/numeric.hpp"

namespace batchcot {

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Correct:
      return "correct";
    case Verdict::Incorrect:
      return "incorrect";
    case Verdict::Unparseable:
      return "unparseable";
  }
  return {};
}

Verdict verdict_from_string(const std::string& name) {
  if (name == "correct") return Verdict::Correct;
  if (name == "incorrect") return Verdict::Incorrect;
  if (name == "unparseable") return Verdict::Unparseable;
  throw InvalidInput("unknown verdict: " + name);
}

std::optional<char> normalize_choice(std::string_view text) {
  std::string letters;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\\') {
      // Skip a command name such as \boxed or \text.
      ++i;
      while (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i]))) ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      letters.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    } else if (!std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' && c != '{' &&
               c != '}' && c != '$' && c != '.' && c != '*') {
      return std::nullopt;
    }
    ++i;
  }
  if (letters.size() != 1 || letters[0] > 'J') return std::nullopt;
  return letters[0];
}

Verdict grade_answer(const std::optional<std::string>& predicted, std::string_view gold,
                     AnswerKind kind) {
  if (!predicted) return Verdict::Unparseable;
  if (kind == AnswerKind::ChoiceLetter) {
    const auto p = normalize_choice(*predicted);
    if (!p) return Verdict::Unparseable;
    const auto g = normalize_choice(gold);
    if (!g) throw InvalidInput("gold answer is not a choice letter: " + std::string(gold));
    return *p == *g ? Verdict::Correct : Verdict::Incorrect;
  }
  const auto p = normalize_numeric(*predicted);
  if (!p) return Verdict::Unparseable;
  const auto g = normalize_numeric(gold);
  if (!g) throw InvalidInput("gold answer is not numeric: " + std::string(gold));
  return answers_equal(*p, *g) ? Verdict::Correct : Verdict::Incorrect;
}

Verdict grade(const ReasoningChain& chain, const Question& q, AnswerKind kind) {
  if (chain.question_id != q.id) {
    throw InvalidInput("chain for '" + chain.question_id + "' graded against question '" + q.id + "'");
  }
  return grade_answer(chain.predicted_answer, q.gold_answer, kind);
}

}  // namespace batchcot
