#include "superbracket/poly.hpp"

#include <sstream>
#include <stdexcept>

namespace superbracket {

PolyTheta::PolyTheta(std::initializer_list<Rational> coefficients)
    : coefficients_(coefficients) {
  normalize();
}

PolyTheta::PolyTheta(std::vector<Rational> coefficients)
    : coefficients_(std::move(coefficients)) {
  normalize();
}

PolyTheta PolyTheta::monomial(const Rational& c, std::size_t degree) {
  std::vector<Rational> coeffs(degree + 1);
  coeffs[degree] = c;
  return PolyTheta(std::move(coeffs));
}

PolyTheta PolyTheta::parse(const std::string& text) {
  std::vector<Rational> coeffs;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    coeffs.push_back(Rational::parse(item));
  }
  if (coeffs.empty()) {
    throw std::invalid_argument("empty polynomial '" + text + "'");
  }
  return PolyTheta(std::move(coeffs));
}

void PolyTheta::normalize() {
  while (!coefficients_.empty() && coefficients_.back().is_zero()) {
    coefficients_.pop_back();
  }
}

Rational PolyTheta::coefficient(std::size_t i) const {
  return i < coefficients_.size() ? coefficients_[i] : Rational(0);
}

Rational PolyTheta::operator()(const Rational& t) const {
  Rational acc;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) {
    acc *= t;
    acc += *it;
  }
  return acc;
}

PolyTheta& PolyTheta::operator+=(const PolyTheta& rhs) {
  if (rhs.coefficients_.size() > coefficients_.size()) {
    coefficients_.resize(rhs.coefficients_.size());
  }
  for (std::size_t i = 0; i < rhs.coefficients_.size(); ++i) {
    coefficients_[i] += rhs.coefficients_[i];
  }
  normalize();
  return *this;
}

PolyTheta& PolyTheta::operator*=(const Rational& scale) {
  if (scale.is_zero()) {
    coefficients_.clear();
    return *this;
  }
  for (auto& c : coefficients_) {
    c *= scale;
  }
  return *this;
}

PolyTheta operator-(const PolyTheta& a, const PolyTheta& b) { return a + b * Rational(-1); }

PolyTheta operator*(const PolyTheta& a, const PolyTheta& b) {
  if (a.is_zero() || b.is_zero()) {
    return {};
  }
  std::vector<Rational> out(a.coefficients_.size() + b.coefficients_.size() - 1);
  for (std::size_t i = 0; i < a.coefficients_.size(); ++i) {
    for (std::size_t j = 0; j < b.coefficients_.size(); ++j) {
      out[i + j].add_product(a.coefficients_[i], b.coefficients_[j]);
    }
  }
  return PolyTheta(std::move(out));
}

std::string PolyTheta::to_string() const {
  if (is_zero()) {
    return "0";
  }
  std::string out;
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    if (i > 0) {
      out += ",";
    }
    out += coefficients_[i].to_string();
  }
  return out;
}

}  // namespace superbracket
