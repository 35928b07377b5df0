#include <gtest/gtest.h>

#include "batchcot/boxed.hpp"
#include "batchcot/rng.hpp"

using namespace batchcot;

TEST(Boxed, Simple) { EXPECT_EQ(extract_boxed("so \\boxed{42}."), std::vector<std::string>{"42"}); }

TEST(Boxed, NestedBracesKeptVerbatim) {
  EXPECT_EQ(extract_boxed("\\boxed{\\frac{1}{2}}"), std::vector<std::string>{"\\frac{1}{2}"});
}

TEST(Boxed, SeveralInOrder) {
  EXPECT_EQ(extract_boxed("\\boxed{1} and \\boxed{ 2 } \\boxed {3}"),
            (std::vector<std::string>{"1", " 2 ", "3"}));
}

TEST(Boxed, UnterminatedGroupSkipped) {
  EXPECT_EQ(extract_boxed("\\boxed{1 \\boxed{2}"), std::vector<std::string>{"2"});
  EXPECT_EQ(extract_boxed("\\boxed{oops"), std::vector<std::string>{});
  EXPECT_EQ(extract_boxed("\\boxed no brace \\boxed{7}"), std::vector<std::string>{"7"});
}

TEST(Boxed, EmptyAndOffsets) {
  const auto m = find_boxed("ab\\boxed{}cd");
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0].content, "");
  EXPECT_EQ(m[0].begin, 2u);
  EXPECT_EQ(m[0].end, 10u);
}

TEST(Boxed, NoMatch) { EXPECT_TRUE(extract_boxed("no answer here").empty()); }

namespace {

// Balanced payload: random characters with properly nested braces.
std::string balanced_payload(Rng& rng, int depth = 0) {
  static const std::string alphabet = "0123456789abcxyz+-*/^\\ .,()[]$";
  std::string out;
  const auto parts = rng.below(6);
  for (std::uint64_t i = 0; i < parts; ++i) {
    if (depth < 4 && rng.below(4) == 0) {
      out += '{';
      out += balanced_payload(rng, depth + 1);
      out += '}';
    } else {
      out += alphabet[rng.below(alphabet.size())];
    }
  }
  return out;
}

}  // namespace

TEST(Boxed, RoundTripsGeneratedPayloads) {
  Rng rng(2024);
  int failures = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto payload = balanced_payload(rng);
    const auto found = extract_boxed("prefix text \\boxed{" + payload + "} suffix");
    if (found.size() != 1 || found[0] != payload) ++failures;
  }
  EXPECT_EQ(failures, 0);
}
