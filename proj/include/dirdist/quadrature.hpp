#pragma once

#include <Eigen/Core>
#include <functional>

namespace dirdist {

/// A one-dimensional quadrature rule: paired nodes and weights.
struct Quadrature1d {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;

  double integrate(const std::function<double(double)>& f) const {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
    return acc;
  }
};

/// Gauss-Legendre rule with n nodes on [-1, 1]; exact for polynomials of
/// degree 2n - 1.
Quadrature1d gauss_legendre(int n);

/// Gauss-Legendre rule mapped onto [a, b].
Quadrature1d gauss_legendre(int n, double a, double b);

/// Uniform n-point rule on the circle (-pi, pi] with weight 2 pi / n; the
/// periodic trapezoid rule, spectrally accurate for smooth periodic
/// integrands.
Quadrature1d circle_trapezoid(int n);

/// Product rule on S^2 embedded with pole e1: Gauss-Legendre in the cosine of
/// the colatitude times a uniform rule in longitude. Weights sum to 4 pi.
struct SphereQuadrature {
  Eigen::MatrixXd nodes;   // one unit 3-vector per row
  Eigen::VectorXd weights;

  double integrate(const std::function<double(const Eigen::Vector3d&)>& f) const {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < nodes.rows(); ++i) {
      acc += weights[i] * f(nodes.row(i).transpose());
    }
    return acc;
  }
};

SphereQuadrature sphere_product_rule(int n_colat, int n_long);

}  // namespace dirdist
