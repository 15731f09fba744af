#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>

namespace superbracket {

/// Z2 grade of a homogeneous element: 0 for bosonic (even), 1 for fermionic (odd).
class Parity {
 public:
  constexpr Parity() = default;
  constexpr explicit Parity(int value) : value_(static_cast<std::uint8_t>(value)) {
    if (value != 0 && value != 1) {
      throw std::invalid_argument("parity must be 0 or 1");
    }
  }

  static constexpr Parity even() { return Parity(0); }
  static constexpr Parity odd() { return Parity(1); }

  [[nodiscard]] constexpr int bit() const { return value_; }
  [[nodiscard]] constexpr bool is_odd() const { return value_ == 1; }

  friend constexpr Parity operator+(Parity a, Parity b) { return Parity((a.value_ + b.value_) & 1); }
  friend constexpr bool operator==(Parity, Parity) = default;

  friend std::ostream& operator<<(std::ostream& os, Parity p) { return os << int(p.value_); }

 private:
  std::uint8_t value_ = 0;
};

/// (-1)^(sigma(a) sigma(b)).
[[nodiscard]] constexpr int graded_sign(Parity a, Parity b) { return (a.bit() & b.bit()) ? -1 : 1; }

}  // namespace superbracket
