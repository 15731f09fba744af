#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "superbracket/rational.hpp"

namespace superbracket {

/// Univariate polynomial in the spectral parameter theta with exact
/// coefficients, stored in ascending degree. The zero polynomial has no
/// coefficients; otherwise the highest stored coefficient is nonzero.
class PolyTheta {
 public:
  PolyTheta() = default;
  PolyTheta(std::initializer_list<Rational> coefficients);
  explicit PolyTheta(std::vector<Rational> coefficients);

  static PolyTheta constant(const Rational& c) { return PolyTheta({c}); }
  static PolyTheta monomial(const Rational& c, std::size_t degree);

  /// Parses the CLI syntax "c0,c1,..." (ascending coefficients).
  static PolyTheta parse(const std::string& text);

  [[nodiscard]] bool is_zero() const { return coefficients_.empty(); }
  /// Degree, with -1 for the zero polynomial.
  [[nodiscard]] int degree() const { return static_cast<int>(coefficients_.size()) - 1; }
  [[nodiscard]] const std::vector<Rational>& coefficients() const { return coefficients_; }
  /// Coefficient of theta^i (zero past the degree).
  [[nodiscard]] Rational coefficient(std::size_t i) const;

  [[nodiscard]] Rational operator()(const Rational& t) const;

  PolyTheta& operator+=(const PolyTheta& rhs);
  PolyTheta& operator*=(const Rational& scale);
  friend PolyTheta operator+(PolyTheta a, const PolyTheta& b) { return a += b; }
  friend PolyTheta operator-(const PolyTheta& a, const PolyTheta& b);
  friend PolyTheta operator*(const PolyTheta& a, const PolyTheta& b);
  friend PolyTheta operator*(PolyTheta a, const Rational& s) { return a *= s; }
  friend PolyTheta operator*(const Rational& s, PolyTheta a) { return a *= s; }
  friend bool operator==(const PolyTheta&, const PolyTheta&) = default;

  [[nodiscard]] std::string to_string() const;

 private:
  void normalize();
  std::vector<Rational> coefficients_;
};

}  // namespace superbracket
