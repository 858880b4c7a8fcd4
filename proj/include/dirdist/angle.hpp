#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dirdist {

/// An angle in radians, kept on the principal branch (-pi, pi] after every
/// construction and arithmetic operation.
template <class Scalar>
class Angle {
 public:
  static constexpr Scalar kPi = std::numbers::pi_v<Scalar>;
  static constexpr Scalar kTwoPi = Scalar(2) * std::numbers::pi_v<Scalar>;

  Angle() = default;
  explicit Angle(Scalar radians) : value_(wrap(radians)) {}

  Scalar value() const { return value_; }

  /// Reduce an arbitrary finite value to (-pi, pi].
  static Scalar wrap(Scalar radians) {
    if (!std::isfinite(radians)) {
      throw std::invalid_argument("Angle: value must be finite");
    }
    Scalar w = std::remainder(radians, kTwoPi);
    if (w <= -kPi) w += kTwoPi;  // remainder lands in [-pi, pi]
    return w;
  }

  Angle operator+(Angle rhs) const { return Angle(value_ + rhs.value_); }
  Angle operator-(Angle rhs) const { return Angle(value_ - rhs.value_); }
  Angle operator-() const { return Angle(-value_); }
  Angle operator*(Scalar s) const { return Angle(value_ * s); }

  friend bool operator==(Angle lhs, Angle rhs) { return lhs.value_ == rhs.value_; }

 private:
  Scalar value_{0};
};

using Angled = Angle<double>;

template <class Scalar>
Angle<Scalar> operator*(Scalar s, Angle<Scalar> a) {
  return Angle<Scalar>(s * a.value());
}

template <class Scalar>
Scalar sin(Angle<Scalar> a) {
  return std::sin(a.value());
}

template <class Scalar>
Scalar cos(Angle<Scalar> a) {
  return std::cos(a.value());
}

}  // namespace dirdist
