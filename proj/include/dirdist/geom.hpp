#pragma once

#include <Eigen/Core>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "dirdist/angle.hpp"
#include "dirdist/unit_vector.hpp"

namespace dirdist {

/// Below this value of sin(colatitude) the polar subvector is pure rounding
/// noise and the decomposition is reported as degenerate.
inline constexpr double kPolarDegenerateSin = 1e-14;

namespace detail {

/// Orthogonal change of frame moving a given pole to e1 and back.
///
/// A Householder reflection with the sign chosen away from cancellation: for
/// pole.e1 > 0 the raw reflection sends the pole to -e1, so a flip of the
/// first coordinate is folded in. For pole == e1 the frame is exactly the
/// identity.
template <class Scalar>
class PoleFrame {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  explicit PoleFrame(const Vector& pole) : w_(pole), flip_(pole[0] > Scalar(0)) {
    w_[0] += flip_ ? Scalar(1) : Scalar(-1);
    ww_ = w_.squaredNorm();
  }

  /// Coordinates of x in the frame where the pole sits at e1.
  Vector to_frame(const Vector& x) const {
    Vector y = reflect(x);
    if (flip_) y[0] = -y[0];
    return y;
  }

  /// Inverse of to_frame.
  Vector from_frame(const Vector& y) const {
    Vector x = y;
    if (flip_) x[0] = -x[0];
    return reflect(x);
  }

 private:
  Vector reflect(const Vector& x) const {
    return x - w_ * (Scalar(2) * w_.dot(x) / ww_);
  }

  Vector w_;
  Scalar ww_;
  bool flip_;
};

}  // namespace detail

/// Polar form of a sphere point about a pole: a colatitude in [0, pi] and a
/// unit (q-1)-subvector. When the point sits at the pole or its antipode the
/// subvector is undefined; such points are carried as a flagged degenerate
/// value with no subvector (query with is_degenerate()).
///
/// For q = 2 the subvector is the one-dimensional unit "vector" +-1.
template <class Scalar>
class PolarPoint {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  PolarPoint(Scalar colat, Vector sub) : colat_(colat), sub_(std::move(sub)) {
    if (!(colat_ >= Scalar(0) && colat_ <= std::numbers::pi_v<Scalar>)) {
      throw std::invalid_argument("PolarPoint: colatitude outside [0, pi]");
    }
    if (sub_.size() < 1) {
      throw std::invalid_argument("PolarPoint: subvector must have dimension >= 1");
    }
    const Scalar n = sub_.norm();
    if (!(std::abs(n - Scalar(1)) <= Scalar(1e-9))) {
      throw std::invalid_argument("PolarPoint: subvector is not unit norm");
    }
    sub_ /= n;
  }

  /// Degenerate value at the pole (colat = 0) or its antipode (colat = pi).
  static PolarPoint at_pole(Scalar colat) {
    PolarPoint p;
    p.colat_ = colat;
    return p;
  }

  Scalar colat() const { return colat_; }
  bool is_degenerate() const { return sub_.size() == 0; }

  const Vector& sub() const {
    if (is_degenerate()) {
      throw std::logic_error("PolarPoint: subvector undefined at the pole");
    }
    return sub_;
  }

 private:
  PolarPoint() = default;

  Scalar colat_{0};
  Vector sub_;
};

using PolarPointd = PolarPoint<double>;

/// Angular coordinate of a circle point: x = (cos phi, sin phi).
template <class Scalar>
Angle<Scalar> arg(const UnitVector<Scalar>& x) {
  if (x.dim() != 2) {
    throw std::invalid_argument("arg: expected a point on the circle (dimension 2)");
  }
  return Angle<Scalar>(std::atan2(x[1], x[0]));
}

/// Circle point of an angle: vec(phi) = (cos phi, sin phi).
template <class Scalar>
UnitVector<Scalar> vec(Angle<Scalar> phi) {
  Eigen::Matrix<Scalar, 2, 1> c(std::cos(phi.value()), std::sin(phi.value()));
  return UnitVector<Scalar>(c);
}

/// Polar form (colatitude, unit subvector) of x about an arbitrary pole.
template <class Scalar>
PolarPoint<Scalar> polar_decompose(const UnitVector<Scalar>& x, const UnitVector<Scalar>& pole) {
  if (x.dim() != pole.dim()) {
    throw std::invalid_argument("polar_decompose: dimension mismatch");
  }
  const detail::PoleFrame<Scalar> frame(pole.coords());
  const auto xf = frame.to_frame(x.coords());
  const auto q = xf.size();
  typename PolarPoint<Scalar>::Vector tail = xf.tail(q - 1);
  const Scalar s = tail.norm();
  if (s < Scalar(kPolarDegenerateSin)) {
    return PolarPoint<Scalar>::at_pole(xf[0] > Scalar(0) ? Scalar(0)
                                                         : std::numbers::pi_v<Scalar>);
  }
  return PolarPoint<Scalar>(std::atan2(s, xf[0]), tail / s);
}

/// Rebuild the sphere point from its polar form about a pole. Inverse of
/// polar_decompose away from the degenerate set.
template <class Scalar>
UnitVector<Scalar> polar_compose(const PolarPoint<Scalar>& p, const UnitVector<Scalar>& pole) {
  const auto q = pole.dim();
  typename UnitVector<Scalar>::Vector local(q);
  if (p.is_degenerate()) {
    local.setZero();
    local[0] = std::cos(p.colat());
  } else {
    if (p.sub().size() != q - 1) {
      throw std::invalid_argument("polar_compose: dimension mismatch");
    }
    local[0] = std::cos(p.colat());
    local.tail(q - 1) = std::sin(p.colat()) * p.sub();
  }
  const detail::PoleFrame<Scalar> frame(pole.coords());
  return UnitVector<Scalar>(frame.from_frame(local));
}

/// Tangent of the half angle, s = tan(theta/2). Undefined at theta = pi.
template <class Scalar>
Scalar tan_half(Angle<Scalar> theta) {
  if (theta.value() == std::numbers::pi_v<Scalar>) {
    throw std::domain_error("tan_half: theta = pi maps to infinity");
  }
  return std::tan(theta.value() / Scalar(2));
}

/// Surface area of S_{q-1}: 2 pi^{q/2} / Gamma(q/2).
inline double surface_area(int q) {
  if (q < 2) {
    throw std::invalid_argument("surface_area: dimension must be at least 2");
  }
  return 2.0 * std::pow(std::numbers::pi, 0.5 * q) / std::tgamma(0.5 * q);
}

/// A planar rotation by a fixed angle. As a 2x2 matrix it is orthogonal with
/// determinant +1.
template <class Scalar>
class Rotation2 {
 public:
  explicit Rotation2(Angle<Scalar> angle) : angle_(angle) {}

  Angle<Scalar> angle() const { return angle_; }
  Rotation2 inverse() const { return Rotation2(-angle_); }

  Eigen::Matrix<Scalar, 2, 2> matrix() const {
    const Scalar c = std::cos(angle_.value());
    const Scalar s = std::sin(angle_.value());
    Eigen::Matrix<Scalar, 2, 2> m;
    m << c, -s, s, c;
    return m;
  }

  UnitVector<Scalar> operator()(const UnitVector<Scalar>& x) const {
    if (x.dim() != 2) {
      throw std::invalid_argument("Rotation2: expected a circle point");
    }
    const Scalar c = std::cos(angle_.value());
    const Scalar s = std::sin(angle_.value());
    Eigen::Matrix<Scalar, 2, 1> r(c * x[0] - s * x[1], s * x[0] + c * x[1]);
    return UnitVector<Scalar>(r);
  }

 private:
  Angle<Scalar> angle_;
};

using Rotation2d = Rotation2<double>;

/// Rotate a circle point by alpha.
template <class Scalar>
UnitVector<Scalar> rotate2(Angle<Scalar> alpha, const UnitVector<Scalar>& x) {
  return Rotation2<Scalar>(alpha)(x);
}

}  // namespace dirdist
