#include "dirdist/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dirdist {

Quadrature1d gauss_legendre(int n) {
  if (n < 1) {
    throw std::invalid_argument("gauss_legendre: need at least one node");
  }
  Quadrature1d rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;  // roots come in symmetric pairs
  for (int i = 0; i < m; ++i) {
    // Chebyshev initial guess, then Newton on the Legendre recurrence.
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2 * j + 1) * z * p2 - j * p3) / (j + 1);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.weights[n - 1 - i] = rule.weights[i];
  }
  return rule;
}

Quadrature1d gauss_legendre(int n, double a, double b) {
  Quadrature1d rule = gauss_legendre(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  rule.nodes = (mid + half * rule.nodes.array()).matrix();
  rule.weights *= half;
  return rule;
}

Quadrature1d circle_trapezoid(int n) {
  if (n < 1) {
    throw std::invalid_argument("circle_trapezoid: need at least one node");
  }
  Quadrature1d rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double h = 2.0 * std::numbers::pi / n;
  for (int k = 0; k < n; ++k) {
    rule.nodes[k] = -std::numbers::pi + h * (k + 1);  // grid in (-pi, pi]
    rule.weights[k] = h;
  }
  return rule;
}

SphereQuadrature sphere_product_rule(int n_colat, int n_long) {
  if (n_colat < 1 || n_long < 1) {
    throw std::invalid_argument("sphere_product_rule: need at least one node per factor");
  }
  // Substituting t = cos(phi) absorbs the sin(phi) surface factor, so the
  // colatitude integral is a plain Gauss-Legendre integral over [-1, 1].
  const Quadrature1d colat = gauss_legendre(n_colat);
  const double h = 2.0 * std::numbers::pi / n_long;
  SphereQuadrature rule;
  rule.nodes.resize(static_cast<Eigen::Index>(n_colat) * n_long, 3);
  rule.weights.resize(static_cast<Eigen::Index>(n_colat) * n_long);
  Eigen::Index row = 0;
  for (int i = 0; i < n_colat; ++i) {
    const double t = colat.nodes[i];
    const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
    for (int j = 0; j < n_long; ++j, ++row) {
      const double psi = h * j;
      rule.nodes(row, 0) = t;
      rule.nodes(row, 1) = s * std::cos(psi);
      rule.nodes(row, 2) = s * std::sin(psi);
      rule.weights[row] = colat.weights[i] * h;
    }
  }
  return rule;
}

}  // namespace dirdist
