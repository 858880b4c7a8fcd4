#pragma once

#include <Eigen/Core>
#include <cmath>
#include <stdexcept>

namespace dirdist {

/// A point on the unit sphere S_{q-1}: a q-vector of unit Euclidean norm,
/// q >= 2.
///
/// The constructor accepts vectors whose norm is within 1e-9 of 1 and removes
/// the residual drift; anything further off is treated as a caller bug and
/// rejected. Use normalized() to project an arbitrary nonzero vector onto the
/// sphere.
template <class Scalar>
class UnitVector {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  static constexpr Scalar kDriftBand = Scalar(1e-9);

  template <class Derived>
  explicit UnitVector(const Eigen::MatrixBase<Derived>& coords) : coords_(coords) {
    if (coords_.size() < 2) {
      throw std::invalid_argument("UnitVector: dimension must be at least 2");
    }
    const Scalar n = coords_.norm();
    if (!(std::abs(n - Scalar(1)) <= kDriftBand)) {
      throw std::invalid_argument("UnitVector: norm is not 1 within the drift band");
    }
    coords_ /= n;
  }

  /// Normalize an arbitrary nonzero vector.
  template <class Derived>
  static UnitVector normalized(const Eigen::MatrixBase<Derived>& v) {
    Vector c = v;
    const Scalar n = c.norm();
    if (!(n > Scalar(0)) || !std::isfinite(n)) {
      throw std::invalid_argument("UnitVector: cannot normalize a zero or non-finite vector");
    }
    return UnitVector(c / n);
  }

  /// The i-th standard basis vector of R^q.
  static UnitVector axis(Eigen::Index q, Eigen::Index i = 0) {
    if (q < 2 || i < 0 || i >= q) {
      throw std::invalid_argument("UnitVector::axis: index out of range");
    }
    return UnitVector(Vector::Unit(q, i));
  }

  const Vector& coords() const { return coords_; }
  Eigen::Index dim() const { return coords_.size(); }
  Scalar operator[](Eigen::Index i) const { return coords_[i]; }
  Scalar dot(const UnitVector& other) const { return coords_.dot(other.coords_); }

  UnitVector operator-() const { return UnitVector(Vector(-coords_)); }

 private:
  Vector coords_;
};

using UnitVectord = UnitVector<double>;

}  // namespace dirdist
