#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace batchcot {

using BigInt = boost::multiprecision::cpp_int;

/// An exact numeric answer. Rationals are kept in lowest terms with a
/// positive denominator; decimals keep their written scale so that the
/// canonical rendering reparses to the same value and kind.
class CanonicalNumber {
 public:
  enum class Kind { Integer, Rational, Decimal };

  static CanonicalNumber integer(BigInt value);
  /// Throws InvalidInput when denominator is zero.
  static CanonicalNumber rational(BigInt numerator, BigInt denominator);
  /// value = scaled / 10^scale
  static CanonicalNumber decimal(BigInt scaled, unsigned scale);

  Kind kind() const noexcept { return kind_; }
  const BigInt& numerator() const noexcept { return numerator_; }
  /// 1 for integers, 10^scale for decimals (not reduced).
  const BigInt& denominator() const noexcept { return denominator_; }
  unsigned scale() const noexcept { return scale_; }

  /// "12", "-3/4", "0.50"
  std::string render() const;

  /// Structural identity (same kind and same stored fields). Value equality
  /// across kinds is answers_equal.
  friend bool operator==(const CanonicalNumber&, const CanonicalNumber&) = default;

 private:
  CanonicalNumber(Kind kind, BigInt numerator, BigInt denominator, unsigned scale)
      : kind_(kind), numerator_(std::move(numerator)), denominator_(std::move(denominator)),
        scale_(scale) {}

  Kind kind_;
  BigInt numerator_;
  BigInt denominator_;
  unsigned scale_;
};

/// Parses an answer string into an exact number.
///
/// Accepted decorations are stripped first: surrounding whitespace, an
/// enclosing \boxed{...}, dollar signs, percent signs (plain or \%),
/// thousands separators (",", "{,}", "\,") in valid groups of three, and
/// trailing periods. Then the body must be one of
///   [+-]digits                 Integer
///   [+-]digits.digits, [+-].d  Decimal
///   [+-]a/b                    Rational
///   [+-]\frac{a}{b}            Rational (also \dfrac, \tfrac)
/// Scientific notation and everything else yields nullopt.
std::optional<CanonicalNumber> normalize_numeric(std::string_view text);

/// Exact value equality; integer cross-multiplication only.
bool answers_equal(const CanonicalNumber& a, const CanonicalNumber& b);

}  // namespace batchcot
