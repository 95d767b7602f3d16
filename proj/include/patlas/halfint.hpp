// Copyright (c) 2026 the precision-atlas authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <compare>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace patlas {

// Half-integer quantum numbers (j, m) stored exactly as twice their value,
// so parity checks like "is j compatible with n spins?" stay in integer
// arithmetic and never touch floating point.
class HalfInt {
 public:
  constexpr HalfInt() = default;

  static constexpr HalfInt from_twice(int twice) { return HalfInt(twice); }
  static constexpr HalfInt integer(int v) { return HalfInt(2 * v); }

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return twice_ / 2.0; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }

  constexpr HalfInt operator-() const { return HalfInt(-twice_); }
  constexpr HalfInt operator+(HalfInt o) const { return HalfInt(twice_ + o.twice_); }
  constexpr HalfInt operator-(HalfInt o) const { return HalfInt(twice_ - o.twice_); }

  friend constexpr auto operator<=>(HalfInt, HalfInt) = default;

  std::string str() const {
    if (is_integer()) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
  }

 private:
  constexpr explicit HalfInt(int twice) : twice_(twice) {}
  int twice_ = 0;
};

// Nearest half-integer to x, rejecting values farther than `tol` from the
// half-integer grid.
inline HalfInt round_to_halfint(double x, double tol) {
  const double twice = 2.0 * x;
  const double rounded = std::round(twice);
  if (std::abs(twice - rounded) > 2.0 * tol) {
    throw std::runtime_error("round_to_halfint: value " + std::to_string(x) +
                             " is not a half-integer within tolerance");
  }
  return HalfInt::from_twice(static_cast<int>(rounded));
}

}  // namespace patlas
