#pragma once

#include <Eigen/Core>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dirdist/unit_vector.hpp"

namespace dirdist {

/// A point of the tangent space R^{q-1} at the pole e1, the image of the
/// gnomonic and stereographic projections. The sphere dimension is recovered
/// as coords().size() + 1.
template <class Scalar>
class TangentPoint {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  template <class Derived>
  explicit TangentPoint(const Eigen::MatrixBase<Derived>& coords) : coords_(coords) {
    if (coords_.size() < 1) {
      throw std::invalid_argument("TangentPoint: empty coordinate vector");
    }
    if (!coords_.allFinite()) {
      throw std::invalid_argument("TangentPoint: coordinates must be finite");
    }
  }

  explicit TangentPoint(Scalar scalar_coord) : coords_(1) {
    coords_[0] = scalar_coord;
    if (!std::isfinite(scalar_coord)) {
      throw std::invalid_argument("TangentPoint: coordinates must be finite");
    }
  }

  const Vector& coords() const { return coords_; }
  Eigen::Index ambient_dim() const { return coords_.size() + 1; }
  Scalar norm() const { return coords_.norm(); }

 private:
  Vector coords_;
};

using TangentPointd = TangentPoint<double>;

/// Gnomonic projection of the open hemisphere x1 > 0 onto the tangent space
/// at e1: v = tan(phi) u, i.e. the tail of x divided by x1.
template <class Scalar>
TangentPoint<Scalar> gnomonic(const UnitVector<Scalar>& x) {
  if (!(x[0] > Scalar(0))) {
    throw std::domain_error("gnomonic: point outside the open hemisphere x1 > 0");
  }
  const auto q = x.dim();
  return TangentPoint<Scalar>(x.coords().tail(q - 1) / x[0]);
}

/// Inverse gnomonic projection: x = (1, v) / sqrt(1 + |v|^2), always in the
/// open hemisphere.
template <class Scalar>
UnitVector<Scalar> gnomonic_inverse(const TangentPoint<Scalar>& v) {
  const auto q = v.ambient_dim();
  typename UnitVector<Scalar>::Vector x(q);
  const Scalar den = std::sqrt(Scalar(1) + v.coords().squaredNorm());
  x[0] = Scalar(1) / den;
  x.tail(q - 1) = v.coords() / den;
  return UnitVector<Scalar>(x);
}

/// Stereographic projection of the sphere minus -e1 onto the tangent space at
/// e1: w = tan(theta/2) u = tail(y) / (1 + y1). Points at (or within rounding
/// of) the singular point -e1 are rejected rather than clamped.
template <class Scalar>
TangentPoint<Scalar> stereographic(const UnitVector<Scalar>& y) {
  const Scalar one_plus = Scalar(1) + y[0];
  // ||y + e1||^2 = 2 (1 + y1); this matches a Euclidean ball of radius 1e-14.
  if (!(one_plus > Scalar(5e-29))) {
    throw std::domain_error("stereographic: point at infinity (y = -e1)");
  }
  const auto q = y.dim();
  return TangentPoint<Scalar>(y.coords().tail(q - 1) / one_plus);
}

/// Inverse stereographic projection:
/// y = ((1 - |w|^2) / (1 + |w|^2), 2 w / (1 + |w|^2)).
template <class Scalar>
UnitVector<Scalar> stereographic_inverse(const TangentPoint<Scalar>& w) {
  const auto q = w.ambient_dim();
  const Scalar s2 = w.coords().squaredNorm();
  typename UnitVector<Scalar>::Vector y(q);
  y[0] = (Scalar(1) - s2) / (Scalar(1) + s2);
  y.tail(q - 1) = Scalar(2) * w.coords() / (Scalar(1) + s2);
  return UnitVector<Scalar>(y);
}

/// Jacobian factor of the gnomonic projection: dv = cos^{-q}(phi) [dx] on the
/// open hemisphere.
template <class Scalar>
Scalar gnomonic_measure_factor(Scalar phi, int q) {
  if (q < 2) {
    throw std::invalid_argument("gnomonic_measure_factor: dimension must be at least 2");
  }
  if (!(phi >= Scalar(0) && phi < std::numbers::pi_v<Scalar> / Scalar(2))) {
    throw std::domain_error("gnomonic_measure_factor: colatitude outside [0, pi/2)");
  }
  return std::pow(std::cos(phi), Scalar(-q));
}

/// Jacobian factor of the stereographic projection:
/// dw = (1/2)^{q-1} cos^{-2(q-1)}(theta/2) [dy].
template <class Scalar>
Scalar stereo_measure_factor(Scalar theta, int q) {
  if (q < 2) {
    throw std::invalid_argument("stereo_measure_factor: dimension must be at least 2");
  }
  if (!(std::abs(theta) < std::numbers::pi_v<Scalar>)) {
    throw std::domain_error("stereo_measure_factor: |theta| must be < pi");
  }
  return std::pow(Scalar(0.5), Scalar(q - 1)) *
         std::pow(std::cos(theta / Scalar(2)), Scalar(-2 * (q - 1)));
}

/// Jacobian factor of colatitude doubling: [dy] = 2^{q-1} cos^{q-2}(phi) [dx].
/// On the circle (q = 2) the factor is exactly 2 for every phi.
template <class Scalar>
Scalar doubling_measure_factor(Scalar phi, int q) {
  if (q < 2) {
    throw std::invalid_argument("doubling_measure_factor: dimension must be at least 2");
  }
  return std::pow(Scalar(2), Scalar(q - 1)) * std::pow(std::cos(phi), Scalar(q - 2));
}

}  // namespace dirdist
