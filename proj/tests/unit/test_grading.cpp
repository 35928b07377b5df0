#include <gtest/gtest.h>

#include "batchcot/error.hpp"
#include "batchcot/grading.hpp"

using namespace batchcot;

TEST(Grading, NumericVerdicts) {
  EXPECT_EQ(grade_answer("0.5", "\\frac{1}{2}", AnswerKind::Numeric), Verdict::Correct);
  EXPECT_EQ(grade_answer("3", "4", AnswerKind::Numeric), Verdict::Incorrect);
  EXPECT_EQ(grade_answer("x=3", "3", AnswerKind::Numeric), Verdict::Unparseable);
  EXPECT_EQ(grade_answer(std::nullopt, "3", AnswerKind::Numeric), Verdict::Unparseable);
  EXPECT_THROW(grade_answer("3", "three", AnswerKind::Numeric), InvalidInput);
}

TEST(Grading, ChoiceLetters) {
  EXPECT_EQ(normalize_choice("(B)"), 'B');
  EXPECT_EQ(normalize_choice("\\text{c}"), 'C');
  EXPECT_EQ(normalize_choice(" **D.** "), 'D');
  EXPECT_FALSE(normalize_choice("AB"));
  EXPECT_FALSE(normalize_choice("K"));
  EXPECT_FALSE(normalize_choice("1"));
  EXPECT_EQ(grade_answer("(a)", "A", AnswerKind::ChoiceLetter), Verdict::Correct);
  EXPECT_EQ(grade_answer("B", "A", AnswerKind::ChoiceLetter), Verdict::Incorrect);
  EXPECT_EQ(grade_answer("maybe", "A", AnswerKind::ChoiceLetter), Verdict::Unparseable);
}

TEST(Grading, ChainMustMatchQuestion) {
  ReasoningChain c;
  c.question_id = "q1";
  c.predicted_answer = "4";
  EXPECT_EQ(grade(c, {"q1", "t", "4", ""}), Verdict::Correct);
  EXPECT_THROW(grade(c, {"q2", "t", "4", ""}), InvalidInput);
}

TEST(Grading, VerdictNames) {
  for (auto v : {Verdict::Correct, Verdict::Incorrect, Verdict::Unparseable})
    EXPECT_EQ(verdict_from_string(to_string(v)), v);
  EXPECT_THROW(verdict_from_string("maybe"), InvalidInput);
}
