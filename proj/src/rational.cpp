#include "superbracket/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace superbracket {

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) {
    throw std::domain_error("rational with zero denominator");
  }
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

namespace {

bool is_integer_literal(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
    ++i;
  }
  if (i == s.size()) {
    return false;
  }
  for (; i < s.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(s[i])) == 0) {
      return false;
    }
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())) != 0) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())) != 0) {
    s.remove_suffix(1);
  }
  return s;
}

mpz_class parse_integer(std::string_view s) {
  if (!s.empty() && s.front() == '+') {
    s.remove_prefix(1);
  }
  return mpz_class(std::string(s), 10);
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  const std::string_view s = trim(text);
  const auto slash = s.find('/');
  const std::string_view num = trim(s.substr(0, slash));
  if (!is_integer_literal(num)) {
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  }
  mpq_class q;
  if (slash == std::string_view::npos) {
    q = mpq_class(parse_integer(num));
  } else {
    const std::string_view den = trim(s.substr(slash + 1));
    if (!is_integer_literal(den) || den.front() == '-' || den.front() == '+') {
      throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    }
    mpz_class d = parse_integer(den);
    if (d == 0) {
      throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    }
    q = mpq_class(parse_integer(num), d);
  }
  return Rational(std::move(q));
}

std::string Rational::to_string() const {
  if (value_.get_den() == 1) {
    return value_.get_num().get_str();
  }
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) {
    throw std::domain_error("division by zero");
  }
  value_ /= rhs.value_;
  return *this;
}

void Rational::add_product(const Rational& a, const Rational& b) {
  if (a.is_zero() || b.is_zero()) {
    return;
  }
  mpq_class t;
  mpq_mul(t.get_mpq_t(), a.value_.get_mpq_t(), b.value_.get_mpq_t());
  mpq_add(value_.get_mpq_t(), value_.get_mpq_t(), t.get_mpq_t());
}

}  // namespace superbracket
