#include <gtest/gtest.h>

#include <fstream>
#include <regex>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "batchcot/error.hpp"
#include "batchcot/numeric.hpp"
#include "batchcot/rng.hpp"

using namespace batchcot;
using boost::multiprecision::cpp_rational;

namespace {

bool eq(std::string_view a, std::string_view b) {
  const auto x = normalize_numeric(a);
  const auto y = normalize_numeric(b);
  return x && y && answers_equal(*x, *y);
}

}  // namespace

TEST(Numeric, HalfInThreeSpellings) {
  EXPECT_TRUE(eq("\\frac{1}{2}", "0.5"));
  EXPECT_TRUE(eq("0.5", "2/4"));
  EXPECT_TRUE(eq("\\frac{1}{2}", "2/4"));
}

TEST(Numeric, Decorations) {
  EXPECT_TRUE(eq("$1,234$", "1234"));
  EXPECT_TRUE(eq("1{,}234", "1234"));
  EXPECT_TRUE(eq("\\boxed{12}", "12"));
  EXPECT_TRUE(eq("50\\%", "50"));
  EXPECT_TRUE(eq("-\\dfrac{3}{4}", "-0.75"));
  EXPECT_TRUE(eq("\\frac{-3}{4}", "-3/4"));
  EXPECT_TRUE(eq("7.", "7"));
  EXPECT_TRUE(eq("+5", "5"));
  EXPECT_TRUE(eq("0.50", "1/2"));
}

TEST(Numeric, Rejections) {
  EXPECT_FALSE(normalize_numeric("1/0"));
  EXPECT_FALSE(normalize_numeric("\\frac{1}{0}"));
  EXPECT_FALSE(normalize_numeric("1e5"));
  EXPECT_FALSE(normalize_numeric("12,34"));
  EXPECT_FALSE(normalize_numeric("x+1"));
  EXPECT_FALSE(normalize_numeric(""));
  EXPECT_FALSE(normalize_numeric("1.2.3"));
}

TEST(Numeric, CanonicalForms) {
  EXPECT_EQ(normalize_numeric("6/8")->render(), "3/4");
  EXPECT_EQ(normalize_numeric("3/-4")->render(), "-3/4");
  EXPECT_EQ(normalize_numeric("0.50")->render(), "0.50");
  EXPECT_EQ(normalize_numeric("-12")->render(), "-12");
  EXPECT_EQ(normalize_numeric("0.50")->kind(), CanonicalNumber::Kind::Decimal);
  EXPECT_THROW(CanonicalNumber::rational(1, 0), InvalidInput);
}

TEST(Numeric, RenderReparsesToSameValue) {
  for (const char* s : {"3/4", "-0.125", "1000000", "\\frac{22}{7}", "-5"}) {
    const auto n = normalize_numeric(s);
    ASSERT_TRUE(n) << s;
    const auto again = normalize_numeric(n->render());
    ASSERT_TRUE(again) << n->render();
    EXPECT_EQ(*again, *n);
  }
}

TEST(Numeric, BeyondDoublePrecision) {
  // Differ in the 20th significant digit: indistinguishable as doubles.
  EXPECT_FALSE(eq("12345678901234567891", "12345678901234567890"));
  EXPECT_TRUE(eq("12345678901234567890/10", "1234567890123456789"));
  EXPECT_FALSE(eq("0.10000000000000000001", "0.1"));
  EXPECT_TRUE(eq("0.100000000000000000000", "1/10"));
}

namespace {

struct Generated {
  std::string text;
  cpp_rational value;
};

// A random value together with a random spelling of it.
Generated generate(Rng& rng) {
  const long long num = static_cast<long long>(rng.below(2001)) - 1000;
  static const long long dens[] = {1, 2, 4, 5, 8, 10, 3, 7};
  const long long den = dens[rng.below(8)];
  const cpp_rational value(num, den);
  const long long scale = 1 + static_cast<long long>(rng.below(3));
  const auto n = boost::multiprecision::numerator(value);
  const auto d = boost::multiprecision::denominator(value);
  std::string text;
  switch (rng.below(4)) {
    case 0:
      text = BigInt(n * scale).str() + "/" + BigInt(d * scale).str();
      break;
    case 1:
      if (n < 0) {
        text = "-\\frac{" + BigInt(-n * scale).str() + "}{" + BigInt(d * scale).str() + "}";
      } else {
        text = "\\frac{" + BigInt(n * scale).str() + "}{" + BigInt(d * scale).str() + "}";
      }
      break;
    case 2: {
      // Decimal when the denominator is 2^a 5^b, else fall back to a/b.
      if (100000 % d == 0) {
        const auto scaled = n * (100000 / d);
        const auto mag = scaled < 0 ? cpp_rational(-scaled) : cpp_rational(scaled);
        const boost::multiprecision::cpp_int whole = boost::multiprecision::numerator(mag) / 100000;
        const boost::multiprecision::cpp_int frac = boost::multiprecision::numerator(mag) % 100000;
        std::string f = frac.str();
        f = std::string(5 - f.size(), '0') + f;
        text = (scaled < 0 ? "-" : "") + whole.str() + "." + f;
      } else {
        text = n.str() + "/" + d.str();
      }
      break;
    }
    default:
      text = d == 1 ? "$" + n.str() + "$" : n.str() + "/" + d.str();
      break;
  }
  return {text, value};
}

}  // namespace

TEST(Numeric, EquivalenceRelationOverGeneratedValues) {
  Rng rng(77);
  std::vector<Generated> pool;
  for (int i = 0; i < 10000; ++i) pool.push_back(generate(rng));
  std::vector<CanonicalNumber> parsed;
  for (const auto& g : pool) {
    const auto n = normalize_numeric(g.text);
    ASSERT_TRUE(n) << g.text;
    parsed.push_back(*n);
  }
  int mismatches = 0;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    ASSERT_TRUE(answers_equal(parsed[i], parsed[i])) << pool[i].text;
    const auto j = rng.below(pool.size());
    const auto k = rng.below(pool.size());
    const bool ij = answers_equal(parsed[i], parsed[j]);
    const bool jk = answers_equal(parsed[j], parsed[k]);
    const bool ik = answers_equal(parsed[i], parsed[k]);
    ASSERT_EQ(ij, answers_equal(parsed[j], parsed[i]));
    if (ij && jk) ASSERT_TRUE(ik);
    if (ij != (pool[i].value == pool[j].value)) ++mismatches;
  }
  EXPECT_EQ(mismatches, 0);
}

TEST(Numeric, EqualityPathHasNoFloatingPoint) {
  std::ifstream in(std::string(BATCHCOT_SOURCE_DIR) + "/core/src/numeric.cpp");
  ASSERT_TRUE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  const std::regex fp(R"(\b(double|float|stod|stof|stold|strtod|atof)\b|<cmath>|cpp_dec_float)");
  EXPECT_FALSE(std::regex_search(ss.str(), fp));
}
