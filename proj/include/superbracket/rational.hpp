#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace superbracket {

/// Exact rational number p/q with q > 0 and gcd(|p|, q) = 1.
///
/// Thin value wrapper over GMP's mpq_class; every arithmetic result is
/// canonicalized, so equality is structural equality of (p, q).
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(int value) : value_(value) {}   // NOLINT(google-explicit-constructor)
  Rational(long numerator, long denominator);
  explicit Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

  /// Parses "p", "-p", "p/q". Throws std::invalid_argument on malformed input
  /// or a zero denominator.
  static Rational parse(std::string_view text);

  [[nodiscard]] bool is_zero() const { return sgn(value_) == 0; }
  [[nodiscard]] bool is_one() const { return value_ == 1; }
  [[nodiscard]] int sign() const { return sgn(value_); }
  [[nodiscard]] bool is_integer() const { return value_.get_den() == 1; }

  [[nodiscard]] mpz_class numerator() const { return value_.get_num(); }
  [[nodiscard]] mpz_class denominator() const { return value_.get_den(); }
  [[nodiscard]] const mpq_class& raw() const { return value_; }

  /// "p" when the denominator is one, "p/q" otherwise.
  [[nodiscard]] std::string to_string() const;

  Rational& operator+=(const Rational& rhs) {
    value_ += rhs.value_;
    return *this;
  }
  Rational& operator-=(const Rational& rhs) {
    value_ -= rhs.value_;
    return *this;
  }
  Rational& operator*=(const Rational& rhs) {
    value_ *= rhs.value_;
    return *this;
  }
  Rational& operator/=(const Rational& rhs);

  /// this += a * b without a temporary Rational.
  void add_product(const Rational& a, const Rational& b);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  friend Rational operator-(const Rational& x) { return Rational(mpq_class(-x.value_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& x) {
    return os << x.to_string();
  }

 private:
  mpq_class value_{0};
};

/// (-1)^exponent.
[[nodiscard]] constexpr int sign_of(int exponent) { return (exponent & 1) ? -1 : 1; }

}  // namespace superbracket
