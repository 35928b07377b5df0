#include "batchcot/numeric.hpp"

#include <cctype>

#include "batchcot/error.hpp"

namespace batchcot {

namespace {

BigInt pow10(unsigned exponent) {
  BigInt result = 1;
  for (unsigned i = 0; i < exponent; ++i) result *= 10;
  return result;
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// cpp_int's string constructor treats a leading 0 as an octal prefix.
BigInt from_digits(std::string_view digits) {
  while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
  return BigInt{std::string(digits)};
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

void replace_all(std::string& s, std::string_view from, std::string_view to) {
  std::size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
}

// Index of the brace closing the one at `open`, or npos.
std::size_t matching_brace(std::string_view s, std::size_t open) {
  int depth = 0;
  for (std::size_t i = open; i < s.size(); ++i) {
    if (s[i] == '{') ++depth;
    if (s[i] == '}' && --depth == 0) return i;
  }
  return std::string_view::npos;
}

std::string strip_boxed(std::string_view s) {
  constexpr std::string_view kBoxed = "\\boxed{";
  s = trim(s);
  while (s.starts_with(kBoxed)) {
    const auto close = matching_brace(s, kBoxed.size() - 1);
    if (close != s.size() - 1) break;
    s = trim(s.substr(kBoxed.size(), close - kBoxed.size()));
  }
  return std::string(s);
}

// Digits with optional thousands separators, already unified to ','.
std::optional<std::string> integer_digits(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (s.find(',') == std::string_view::npos) {
    for (char c : s)
      if (!is_digit(c)) return std::nullopt;
    return std::string(s);
  }
  std::string digits;
  std::size_t group = 0;
  bool first = true;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == ',') {
      if (first ? (group == 0 || group > 3) : group != 3) return std::nullopt;
      first = false;
      group = 0;
      continue;
    }
    if (!is_digit(s[i])) return std::nullopt;
    digits.push_back(s[i]);
    ++group;
  }
  return digits;
}

// [+-]digits with no separators; used inside fractions.
std::optional<BigInt> signed_integer(std::string_view s) {
  s = trim(s);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s = trim(s.substr(1));
  }
  if (s.empty()) return std::nullopt;
  for (char c : s)
    if (!is_digit(c)) return std::nullopt;
  BigInt value = from_digits(s);
  return negative ? BigInt(-value) : value;
}

std::optional<CanonicalNumber> fraction(const BigInt& numerator, const BigInt& denominator) {
  if (denominator == 0) return std::nullopt;
  return CanonicalNumber::rational(numerator, denominator);
}

std::optional<CanonicalNumber> parse_body(std::string_view body, bool negative) {
  const BigInt sign = negative ? -1 : 1;

  constexpr std::string_view kFrac = "\\frac";
  if (body.starts_with(kFrac)) {
    std::string_view rest = trim(body.substr(kFrac.size()));
    if (rest.empty() || rest.front() != '{') return std::nullopt;
    const auto close_num = matching_brace(rest, 0);
    if (close_num == std::string_view::npos) return std::nullopt;
    std::string_view tail = trim(rest.substr(close_num + 1));
    if (tail.empty() || tail.front() != '{') return std::nullopt;
    const auto close_den = matching_brace(tail, 0);
    if (close_den != tail.size() - 1) return std::nullopt;
    const auto num = signed_integer(rest.substr(1, close_num - 1));
    const auto den = signed_integer(tail.substr(1, close_den - 1));
    if (!num || !den) return std::nullopt;
    return fraction(sign * *num, *den);
  }

  if (const auto slash = body.find('/'); slash != std::string_view::npos) {
    const auto num = signed_integer(body.substr(0, slash));
    const auto den = signed_integer(body.substr(slash + 1));
    if (!num || !den) return std::nullopt;
    return fraction(sign * *num, *den);
  }

  const auto dot = body.find('.');
  if (dot == std::string_view::npos) {
    const auto digits = integer_digits(body);
    if (!digits) return std::nullopt;
    return CanonicalNumber::integer(sign * from_digits(*digits));
  }

  const std::string_view whole = body.substr(0, dot);
  const std::string_view frac = body.substr(dot + 1);
  if (frac.empty()) return std::nullopt;
  for (char c : frac)
    if (!is_digit(c)) return std::nullopt;
  std::string digits;
  if (!whole.empty()) {
    const auto whole_digits = integer_digits(whole);
    if (!whole_digits) return std::nullopt;
    digits = *whole_digits;
  }
  digits.append(frac);
  return CanonicalNumber::decimal(sign * from_digits(digits), static_cast<unsigned>(frac.size()));
}

}  // namespace

CanonicalNumber CanonicalNumber::integer(BigInt value) {
  return CanonicalNumber(Kind::Integer, std::move(value), 1, 0);
}

CanonicalNumber CanonicalNumber::rational(BigInt numerator, BigInt denominator) {
  if (denominator == 0) throw InvalidInput("rational with zero denominator");
  if (denominator < 0) {
    numerator = -numerator;
    denominator = -denominator;
  }
  const BigInt g = boost::multiprecision::gcd(numerator, denominator);
  if (g > 1) {
    numerator /= g;
    denominator /= g;
  }
  return CanonicalNumber(Kind::Rational, std::move(numerator), std::move(denominator), 0);
}

CanonicalNumber CanonicalNumber::decimal(BigInt scaled, unsigned scale) {
  BigInt denominator = pow10(scale);
  return CanonicalNumber(Kind::Decimal, std::move(scaled), std::move(denominator), scale);
}

std::string CanonicalNumber::render() const {
  switch (kind_) {
    case Kind::Integer:
      return numerator_.str();
    case Kind::Rational:
      return numerator_.str() + "/" + denominator_.str();
    case Kind::Decimal: {
      if (scale_ == 0) return numerator_.str();
      const bool negative = numerator_ < 0;
      std::string digits = (negative ? BigInt(-numerator_) : numerator_).str();
      if (digits.size() <= scale_) digits.insert(0, scale_ + 1 - digits.size(), '0');
      digits.insert(digits.size() - scale_, ".");
      return negative ? "-" + digits : digits;
    }
  }
  return {};
}

std::optional<CanonicalNumber> normalize_numeric(std::string_view text) {
  std::string s = strip_boxed(text);
  replace_all(s, "$", "");
  replace_all(s, "\\%", "");
  replace_all(s, "%", "");
  replace_all(s, "\\!", "");
  replace_all(s, "{,}", ",");
  replace_all(s, "\\,", ",");
  replace_all(s, "\\dfrac", "\\frac");
  replace_all(s, "\\tfrac", "\\frac");

  std::string_view body = trim(s);
  while (!body.empty() && body.back() == '.') body = trim(body.substr(0, body.size() - 1));

  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body = trim(body.substr(1));
  }
  if (body.empty()) return std::nullopt;
  return parse_body(body, negative);
}

bool answers_equal(const CanonicalNumber& a, const CanonicalNumber& b) {
  return a.numerator() * b.denominator() == b.numerator() * a.denominator();
}

}  // namespace batchcot
