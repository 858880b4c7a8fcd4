#pragma once

#include <Eigen/Core>
#include <Eigen/LU>
#include <Eigen/SVD>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dirdist/geom.hpp"

namespace dirdist {

/// A 2x2 matrix with positive determinant, the parameter of the general
/// rescaled linear transformation of the circle.
template <class Scalar>
class GeneralLinear2 {
 public:
  using Matrix2 = Eigen::Matrix<Scalar, 2, 2>;

  explicit GeneralLinear2(const Matrix2& m) : m_(m) {
    if (!(m_.determinant() > Scalar(1e-14))) {
      throw std::invalid_argument("GeneralLinear2: determinant must be positive");
    }
  }

  const Matrix2& matrix() const { return m_; }

 private:
  Matrix2 m_;
};

using GeneralLinear2d = GeneralLinear2<double>;

/// Parameters of the general Mobius transformation of the circle: a real
/// concentration lambda in (-1, 1) plus the phases applied before and after
/// the diagonal map.
template <class Scalar>
struct MobiusParams {
  MobiusParams(Scalar lambda_in, Angle<Scalar> psi_pre_in, Angle<Scalar> psi_post_in)
      : lambda(lambda_in), psi_pre(psi_pre_in), psi_post(psi_post_in) {
    if (!(std::abs(lambda) < Scalar(1))) {
      throw std::invalid_argument("MobiusParams: |lambda| must be < 1");
    }
  }

  Scalar lambda;
  Angle<Scalar> psi_pre;
  Angle<Scalar> psi_post;
};

using MobiusParamsd = MobiusParams<double>;

/// Complex squaring of a circle point: doubles the angular coordinate.
/// Exactly two-to-one, square(-x) == square(x).
template <class Scalar>
UnitVector<Scalar> square(const UnitVector<Scalar>& x) {
  if (x.dim() != 2) {
    throw std::invalid_argument("square: expected a circle point");
  }
  Eigen::Matrix<Scalar, 2, 1> y(x[0] * x[0] - x[1] * x[1], Scalar(2) * x[0] * x[1]);
  return UnitVector<Scalar>(y);
}

/// Rescaled diagonal linear transformation: scale the second coordinate by
/// b > 0 and renormalize. In angles, tan(arg out) = b tan(arg in).
template <class Scalar>
UnitVector<Scalar> rescale_linear_diag(const UnitVector<Scalar>& x, Scalar b) {
  if (x.dim() != 2) {
    throw std::invalid_argument("rescale_linear_diag: expected a circle point");
  }
  if (!(b > Scalar(0))) {
    throw std::invalid_argument("rescale_linear_diag: scale must be positive");
  }
  Eigen::Matrix<Scalar, 2, 1> v(x[0], b * x[1]);
  return UnitVector<Scalar>(v / v.norm());
}

/// General rescaled linear transformation x -> Bx / ||Bx||. Invariant under
/// positive rescaling of B.
template <class Scalar>
UnitVector<Scalar> rescale_linear_general(const UnitVector<Scalar>& x,
                                          const GeneralLinear2<Scalar>& b) {
  if (x.dim() != 2) {
    throw std::invalid_argument("rescale_linear_general: expected a circle point");
  }
  Eigen::Matrix<Scalar, 2, 1> v = b.matrix() * Eigen::Matrix<Scalar, 2, 1>(x[0], x[1]);
  const Scalar n = v.norm();
  if (!(n > Scalar(1e-300))) {
    throw std::domain_error("rescale_linear_general: image is numerically zero");
  }
  return UnitVector<Scalar>(v / n);
}

/// Diagonal Mobius transformation of the circle. Fixed points at (+-1, 0);
/// in half angles it acts as the rescaled diagonal linear transformation with
/// b = (1 - lambda) / (1 + lambda).
template <class Scalar>
UnitVector<Scalar> mobius_diag(const UnitVector<Scalar>& y, Scalar lambda) {
  if (y.dim() != 2) {
    throw std::invalid_argument("mobius_diag: expected a circle point");
  }
  if (!(std::abs(lambda) < Scalar(1))) {
    throw std::invalid_argument("mobius_diag: |lambda| must be < 1");
  }
  const Scalar l2 = lambda * lambda;
  const Scalar den = Scalar(1) + l2 + Scalar(2) * lambda * y[0];
  Eigen::Matrix<Scalar, 2, 1> num(Scalar(2) * lambda + (Scalar(1) + l2) * y[0],
                                  (Scalar(1) - l2) * y[1]);
  return UnitVector<Scalar>(num / den);
}

/// General Mobius transformation: rotate by -psi_pre, apply the diagonal map,
/// rotate by psi_post.
template <class Scalar>
UnitVector<Scalar> mobius_general(const UnitVector<Scalar>& y, const MobiusParams<Scalar>& p) {
  const UnitVector<Scalar> pre = rotate2(-p.psi_pre, y);
  const UnitVector<Scalar> mid = mobius_diag(pre, p.lambda);
  return rotate2(p.psi_post, mid);
}

/// Inverse of the diagonal Mobius transformation: the diagonal map at -lambda.
template <class Scalar>
UnitVector<Scalar> mobius_inverse(const UnitVector<Scalar>& w, Scalar lambda) {
  return mobius_diag(w, -lambda);
}

/// Canonical SVD factors of a 2x2 matrix with positive determinant:
/// B = c R_alpha diag(1, b) R_beta^T with c the largest singular value and
/// b in (0, 1] the singular value ratio. When the singular values tie the
/// factorization is not unique; beta is fixed to 0.
template <class Scalar>
struct Svd2 {
  Scalar c;
  Angle<Scalar> alpha;
  Scalar b;
  Angle<Scalar> beta;
};

using Svd2d = Svd2<double>;

template <class Scalar>
Svd2<Scalar> svd2(const Eigen::Matrix<Scalar, 2, 2>& m) {
  if (!(m.determinant() > Scalar(0))) {
    throw std::invalid_argument("svd2: determinant must be positive");
  }
  Eigen::JacobiSVD<Eigen::Matrix<Scalar, 2, 2>> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix<Scalar, 2, 2> u = svd.matrixU();
  Eigen::Matrix<Scalar, 2, 2> v = svd.matrixV();
  // det(U) det(V) = +1 here; flip both second columns if they are reflections.
  if (u.determinant() < Scalar(0)) {
    u.col(1) *= Scalar(-1);
    v.col(1) *= Scalar(-1);
  }
  const Scalar c = svd.singularValues()[0];
  const Scalar b = svd.singularValues()[1] / c;
  if (b >= Scalar(1) - Scalar(1e-13)) {
    // Singular values tie: B/c is (numerically) a rotation. Take the angle of
    // the nearest rotation and put all of it into alpha.
    const Scalar alpha = std::atan2(m(1, 0) - m(0, 1), m(0, 0) + m(1, 1));
    return {c, Angle<Scalar>(alpha), std::min(b, Scalar(1)), Angle<Scalar>(Scalar(0))};
  }
  return {c, Angle<Scalar>(std::atan2(u(1, 0), u(0, 0))), b,
          Angle<Scalar>(std::atan2(v(1, 0), v(0, 0)))};
}

/// Double the colatitude of x about a pole: (phi, u) -> (2 phi, u). Both the
/// pole and its antipode map to the pole. On the circle this agrees with
/// square() up to the pole convention.
template <class Scalar>
UnitVector<Scalar> double_angle_sphere(const UnitVector<Scalar>& x,
                                       const UnitVector<Scalar>& pole) {
  const PolarPoint<Scalar> p = polar_decompose(x, pole);
  if (p.is_degenerate()) {
    return pole;  // colatitudes 0 and pi both double to the pole
  }
  const Scalar doubled = Scalar(2) * p.colat();
  if (doubled <= std::numbers::pi_v<Scalar>) {
    return polar_compose(PolarPoint<Scalar>(doubled, p.sub()), pole);
  }
  // Fold the colatitude back into [0, pi] by negating the subvector.
  return polar_compose(
      PolarPoint<Scalar>(Scalar(2) * std::numbers::pi_v<Scalar> - doubled, -p.sub()), pole);
}

/// Halve the colatitude of y about a pole, returning the preimage of the
/// doubling map in the closed hemisphere around the pole. The two preimages
/// form an antipodal pair {x, -x}; this returns the one with x . pole >= 0.
///
/// At the antipode of the pole (colatitude pi) the subvector is undefined for
/// q > 2 and the call fails; on the circle the branch u = +1 is fixed.
template <class Scalar>
UnitVector<Scalar> halve_angle_sphere(const UnitVector<Scalar>& y,
                                      const UnitVector<Scalar>& pole) {
  const PolarPoint<Scalar> p = polar_decompose(y, pole);
  if (!p.is_degenerate()) {
    return polar_compose(PolarPoint<Scalar>(p.colat() / Scalar(2), p.sub()), pole);
  }
  if (p.colat() == Scalar(0)) {
    return pole;
  }
  if (y.dim() == 2) {
    typename PolarPoint<Scalar>::Vector plus_one(1);
    plus_one[0] = Scalar(1);
    return polar_compose(
        PolarPoint<Scalar>(std::numbers::pi_v<Scalar> / Scalar(2), plus_one), pole);
  }
  throw std::domain_error("halve_angle_sphere: subvector undefined at the antipode");
}

}  // namespace dirdist
