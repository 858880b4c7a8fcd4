#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace dirdist {

/// A symmetric positive definite matrix, validated on construction (symmetry
/// up to rounding, successful Cholesky factorization). The factorization is
/// kept alongside the matrix.
class SpdMatrix {
 public:
  explicit SpdMatrix(Eigen::MatrixXd a) : mat_(std::move(a)) {
    if (mat_.rows() != mat_.cols() || mat_.rows() < 1) {
      throw std::invalid_argument("SpdMatrix: matrix must be square");
    }
    const double scale = std::max(1.0, mat_.cwiseAbs().maxCoeff());
    if (((mat_ - mat_.transpose()).cwiseAbs().maxCoeff()) > 1e-10 * scale) {
      throw std::invalid_argument("SpdMatrix: matrix is not symmetric");
    }
    mat_ = ((mat_ + mat_.transpose()) / 2.0).eval();
    llt_.compute(mat_);
    if (llt_.info() != Eigen::Success) {
      throw std::invalid_argument("SpdMatrix: matrix is not positive definite");
    }
  }

  static SpdMatrix identity(int n) { return SpdMatrix(Eigen::MatrixXd::Identity(n, n)); }

  const Eigen::MatrixXd& matrix() const { return mat_; }
  int dim() const { return static_cast<int>(mat_.rows()); }
  const Eigen::LLT<Eigen::MatrixXd>& llt() const { return llt_; }

  double log_determinant() const {
    return 2.0 * llt_.matrixL().toDenseMatrix().diagonal().array().log().sum();
  }

  double determinant() const { return std::exp(log_determinant()); }

  Eigen::VectorXd solve(const Eigen::VectorXd& b) const { return llt_.solve(b); }

  /// x^T A x
  double quadratic_form(const Eigen::VectorXd& x) const { return x.dot(mat_ * x); }

  /// x^T A^{-1} x
  double inverse_quadratic_form(const Eigen::VectorXd& x) const { return x.dot(llt_.solve(x)); }

  SpdMatrix inverse() const {
    const Eigen::MatrixXd inv =
        llt_.solve(Eigen::MatrixXd::Identity(mat_.rows(), mat_.cols()));
    return SpdMatrix((inv + inv.transpose()) / 2.0);
  }

 private:
  Eigen::MatrixXd mat_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
};

/// Schur complement of the leading q1 x q1 block:
/// S22 - S21 S11^{-1} S12.
inline SpdMatrix schur_complement(const SpdMatrix& sigma, int q1) {
  const int q = sigma.dim();
  if (q1 < 1 || q1 >= q) {
    throw std::invalid_argument("schur_complement: block size out of range");
  }
  const int q2 = q - q1;
  const Eigen::MatrixXd& s = sigma.matrix();
  const Eigen::MatrixXd s11 = s.topLeftCorner(q1, q1);
  const Eigen::MatrixXd s21 = s.bottomLeftCorner(q2, q1);
  const Eigen::MatrixXd s12 = s.topRightCorner(q1, q2);
  const Eigen::MatrixXd s22 = s.bottomRightCorner(q2, q2);
  const Eigen::MatrixXd c = s22 - s21 * s11.llt().solve(s12);
  return SpdMatrix((c + c.transpose()) / 2.0);
}

}  // namespace dirdist
