#include "dirdist/distributions.hpp"

#include <cmath>
#include <numbers>

#include "dirdist/geom.hpp"

namespace dirdist {

namespace {

constexpr double kPi = std::numbers::pi;

double ipow(double base, int exponent) {
  double acc = 1.0;
  for (int i = 0; i < exponent; ++i) acc *= base;
  return acc;
}

}  // namespace

WcParams::WcParams(double lambda_in, Angled mu_in) : lambda(lambda_in), mu(mu_in) {
  if (!(std::abs(lambda) < 1.0)) {
    throw std::invalid_argument("WcParams: |lambda| must be < 1");
  }
}

AcgParams::AcgParams(const SpdMatrix& omega)
    : omega_(SpdMatrix(omega.matrix() / std::exp(omega.log_determinant() / omega.dim()))) {
  if (omega_.dim() < 2) {
    throw std::invalid_argument("AcgParams: dimension must be at least 2");
  }
}

AcgParams AcgParams::circle(double b) {
  if (!(b > 0.0)) {
    throw std::invalid_argument("AcgParams::circle: b must be positive");
  }
  Eigen::MatrixXd omega(2, 2);
  omega << b * b, 0.0, 0.0, 1.0;
  return AcgParams(SpdMatrix(omega));
}

ScParams::ScParams(double lambda_in, UnitVectord mu0_in)
    : lambda(lambda_in), mu0(std::move(mu0_in)) {
  if (!(lambda >= 0.0 && lambda < 1.0)) {
    throw std::invalid_argument("ScParams: lambda must lie in [0, 1)");
  }
}

MvtParams::MvtParams(Eigen::VectorXd location_in, SpdMatrix scatter_in, double kappa_in)
    : location(std::move(location_in)), scatter(std::move(scatter_in)), kappa(kappa_in) {
  if (location.size() != scatter.dim()) {
    throw std::invalid_argument("MvtParams: location/scatter dimension mismatch");
  }
  if (!(kappa > 0.0)) {
    throw std::invalid_argument("MvtParams: kappa must be positive");
  }
}

AbcTriple::AbcTriple(double a_in, double b_in, double c_in) : a(a_in), b(b_in), c(c_in) {
  if (!(a > 0.0) || !(b > 0.0) || !(c >= 0.0)) {
    throw std::invalid_argument("AbcTriple: need A, B > 0 and C >= 0");
  }
  if (std::abs(b * b - a * a - c * c) > 1e-12 * b * b) {
    throw std::invalid_argument("AbcTriple: B^2 = A^2 + C^2 violated");
  }
}

double wc_pdf(Angled theta, const WcParams& p) {
  const double l = p.lambda;
  const double den = 1.0 + l * l - 2.0 * l * std::cos(theta.value() - p.mu.value());
  return (1.0 - l * l) / (2.0 * kPi * den);
}

double wc_pdf_abc(Angled theta, const AbcTriple& abc) {
  return abc.a / (2.0 * kPi * (abc.b - abc.c * std::cos(theta.value())));
}

double acg_pdf(const UnitVectord& x, const AcgParams& p) {
  if (x.dim() != p.dim()) {
    throw std::invalid_argument("acg_pdf: dimension mismatch");
  }
  const int q = p.dim();
  const double quad = p.omega().quadratic_form(x.coords());
  return std::sqrt(p.omega().determinant()) /
         (surface_area(q) * std::pow(quad, 0.5 * q));
}

double sc_pdf(const UnitVectord& y, const ScParams& p) {
  if (y.dim() != p.mu0.dim()) {
    throw std::invalid_argument("sc_pdf: dimension mismatch");
  }
  const int q = static_cast<int>(y.dim());
  const double l = p.lambda;
  const double lin = 1.0 + l * l - 2.0 * l * y.dot(p.mu0);
  return ipow((1.0 - l * l) / lin, q - 1) / surface_area(q);
}

double mvt_logpdf(const Eigen::VectorXd& v, const MvtParams& p) {
  if (v.size() != p.location.size()) {
    throw std::invalid_argument("mvt_logpdf: dimension mismatch");
  }
  const double dim = static_cast<double>(v.size());
  const Eigen::VectorXd centered = v - p.location;
  const double quad = p.scatter.inverse_quadratic_form(centered);
  const double log_norm = std::lgamma(0.5 * (dim + p.kappa)) - std::lgamma(0.5 * p.kappa) -
                          0.5 * dim * std::log(p.kappa * kPi) -
                          0.5 * p.scatter.log_determinant();
  return log_norm - 0.5 * (dim + p.kappa) * std::log1p(quad / p.kappa);
}

double mvt_pdf(const Eigen::VectorXd& v, const MvtParams& p) {
  return std::exp(mvt_logpdf(v, p));
}

SpdMatrix expand_sc_quadratic(const ScParams& p) {
  const int q = static_cast<int>(p.mu0.dim());
  const double l = p.lambda;
  const double mu1 = p.mu0[0];
  const Eigen::VectorXd mu2 = p.mu0.coords().tail(q - 1);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(q, q);
  a(0, 0) = 1.0 + l * l - 2.0 * l * mu1;
  a.block(0, 1, 1, q - 1) = -2.0 * l * mu2.transpose();
  a.block(1, 0, q - 1, 1) = -2.0 * l * mu2;
  a.block(1, 1, q - 1, q - 1) =
      (1.0 + l * l + 2.0 * l * mu1) * Eigen::MatrixXd::Identity(q - 1, q - 1);
  return SpdMatrix(a);
}

QfSplit qf_split(const Eigen::VectorXd& x, const SpdMatrix& sigma, int q1) {
  const int q = sigma.dim();
  if (x.size() != q) {
    throw std::invalid_argument("qf_split: dimension mismatch");
  }
  if (q1 < 1 || q1 >= q) {
    throw std::invalid_argument("qf_split: block size out of range");
  }
  const int q2 = q - q1;
  const Eigen::MatrixXd& s = sigma.matrix();
  const Eigen::VectorXd x1 = x.head(q1);
  const Eigen::VectorXd x2 = x.tail(q2);

  const Eigen::LLT<Eigen::MatrixXd> s11(Eigen::MatrixXd(s.topLeftCorner(q1, q1)));
  const Eigen::VectorXd s11_inv_x1 = s11.solve(x1);

  QfSplit split;
  split.total = sigma.inverse_quadratic_form(x);
  split.marginal = x1.dot(s11_inv_x1);
  const Eigen::VectorXd resid = x2 - s.bottomLeftCorner(q2, q1) * s11_inv_x1;
  split.conditional = schur_complement(sigma, q1).inverse_quadratic_form(resid);
  return split;
}

MvtParams acg_gnomonic_params(const SpdMatrix& sigma) {
  const int q = sigma.dim();
  if (q < 2) {
    throw std::invalid_argument("acg_gnomonic_params: dimension must be at least 2");
  }
  // The ACG law only sees Sigma up to scale; fix the scale by sigma_11 = 1.
  const SpdMatrix rescaled(sigma.matrix() / sigma.matrix()(0, 0));
  const Eigen::VectorXd location = rescaled.matrix().col(0).tail(q - 1);
  return MvtParams(location, schur_complement(rescaled, 1), 1.0);
}

MvtParams sc_stereo_params(const ScParams& p) {
  const int q = static_cast<int>(p.mu0.dim());
  const double l = p.lambda;
  const double mu1 = p.mu0[0];
  const double delta = 1.0 + l * l + 2.0 * l * mu1;
  const double sigma = (1.0 - l * l) / delta;
  const Eigen::VectorXd location = (2.0 * l / delta) * p.mu0.coords().tail(q - 1);
  const SpdMatrix scatter(sigma * sigma / (q - 1) *
                          Eigen::MatrixXd::Identity(q - 1, q - 1));
  return MvtParams(location, scatter, static_cast<double>(q - 1));
}

WcParameterSet param_convert(WcParameterization kind, double value) {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  switch (kind) {
    case WcParameterization::kLambda:
      if (!(value >= 0.0 && value < 1.0)) {
        throw std::invalid_argument("param_convert: lambda must lie in [0, 1)");
      }
      a = 1.0 - value * value;
      b = 1.0 + value * value;
      c = 2.0 * value;
      break;
    case WcParameterization::kB:
      if (!(value > 0.0 && value <= 1.0)) {
        throw std::invalid_argument("param_convert: b must lie in (0, 1]");
      }
      a = 2.0 * value;
      b = 1.0 + value * value;
      c = 1.0 - value * value;
      break;
    case WcParameterization::kMu:
      if (!(value > 0.0 && value <= 0.5 * kPi)) {
        throw std::invalid_argument("param_convert: mu must lie in (0, pi/2]");
      }
      a = std::sin(value);
      b = 1.0;
      c = std::cos(value);
      break;
    case WcParameterization::kAlpha:
      if (!(value >= 0.0 && value < 0.5)) {
        throw std::invalid_argument("param_convert: alpha must lie in [0, 1/2)");
      }
      a = std::sqrt((1.0 - 2.0 * value) * (1.0 + 2.0 * value));
      b = 1.0;
      c = 2.0 * value;
      break;
  }
  const AbcTriple normalized = AbcTriple(a, b, c).normalized();
  WcParameterSet set{0.0, 0.0, 0.0, 0.0, normalized};
  set.lambda = normalized.c / (normalized.a + normalized.b);
  set.b = (1.0 - set.lambda) / (1.0 + set.lambda);
  set.mu = std::atan2(normalized.a, normalized.c);
  set.alpha = normalized.c / (2.0 * normalized.b);
  return set;
}

std::complex<double> wc_fourier_coeff(const WcParams& p, int m) {
  const int abs_m = m < 0 ? -m : m;
  return ipow(p.lambda, abs_m) *
         std::exp(std::complex<double>(0.0, m * p.mu.value()));
}

double wrapping_lambda(double b_scale) {
  if (!(b_scale > 0.0)) {
    throw std::invalid_argument("wrapping_lambda: scale must be positive");
  }
  return std::exp(-b_scale);
}

double ar1_spectral_pdf(Angled theta, double lambda) {
  if (!(std::abs(lambda) < 1.0)) {
    throw std::invalid_argument("ar1_spectral_pdf: |lambda| must be < 1");
  }
  const std::complex<double> transfer =
      1.0 - lambda * std::exp(std::complex<double>(0.0, theta.value()));
  return (1.0 - lambda * lambda) / (2.0 * kPi * std::norm(transfer));
}

double car1_alpha(double lambda) {
  if (!(std::abs(lambda) < 1.0)) {
    throw std::invalid_argument("car1_alpha: |lambda| must be < 1");
  }
  return lambda / (1.0 + lambda * lambda);
}

double car1_lambda(double alpha) {
  if (!(std::abs(alpha) < 0.5)) {
    throw std::invalid_argument("car1_lambda: |alpha| must be < 1/2");
  }
  // Stable form of (1 - sqrt(1 - 4 alpha^2)) / (2 alpha); exact at alpha = 0.
  const double root = std::sqrt((1.0 - 2.0 * alpha) * (1.0 + 2.0 * alpha));
  return 2.0 * alpha / (1.0 + root);
}

}  // namespace dirdist
