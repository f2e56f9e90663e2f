#pragma once

#include <cmath>
#include <compare>

namespace vbqc {

// An angle from the discrete set {k·π/4 : k = 0..7}, stored as the code k.
// All protocol angle arithmetic happens here, exactly, mod 8; radians only
// appear at the boundary to the state engine.
class Angle8 {
 public:
  constexpr Angle8() = default;
  constexpr explicit Angle8(int k) : k_(((k % 8) + 8) % 8) {}

  constexpr int code() const { return k_; }
  double radians() const { return k_ * (M_PI / 4.0); }

  friend constexpr Angle8 operator+(Angle8 a, Angle8 b) { return Angle8(a.k_ + b.k_); }
  friend constexpr Angle8 operator-(Angle8 a, Angle8 b) { return Angle8(a.k_ - b.k_); }
  constexpr Angle8 operator-() const { return Angle8(-k_); }
  friend constexpr auto operator<=>(Angle8, Angle8) = default;

 private:
  int k_ = 0;
};

constexpr Angle8 angle_add(Angle8 a, Angle8 b) { return a + b; }
constexpr Angle8 angle_neg(Angle8 a) { return -a; }

// a + bit·π  (π is 4 units of π/4).
constexpr Angle8 angle_add_pi(Angle8 a, int bit) { return Angle8(a.code() + 4 * (bit & 1)); }

// (−1)^bit · a
constexpr Angle8 angle_signed(Angle8 a, int bit) { return (bit & 1) ? -a : a; }

}  // namespace vbqc
