#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "batchcot/chains.hpp"
#include "batchcot/question.hpp"
#include "batchcot/verdict.hpp"

namespace batchcot {

/// Single option letter A-J from forms like "B", "(b)", "\boxed{C}",
/// "\text{D}", "$E$".
std::optional<char> normalize_choice(std::string_view text);

/// Correct iff the prediction normalizes and equals the gold answer;
/// Unparseable iff the prediction is absent or does not normalize.
Verdict grade_answer(const std::optional<std::string>& predicted, std::string_view gold,
                     AnswerKind kind = AnswerKind::Numeric);

/// Throws InvalidInput when chain.question_id != q.id.
Verdict grade(const ReasoningChain& chain, const Question& q, AnswerKind kind = AnswerKind::Numeric);

/// Reward view of a verdict: Unparseable scores like Incorrect.
inline bool is_correct(Verdict v) { return v == Verdict::Correct; }

}  // namespace batchcot
