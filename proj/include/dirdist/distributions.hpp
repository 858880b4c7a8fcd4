#pragma once

#include <Eigen/Core>
#include <complex>
#include <stdexcept>

#include "dirdist/angle.hpp"
#include "dirdist/spd.hpp"
#include "dirdist/unit_vector.hpp"

namespace dirdist {

/// Wrapped Cauchy parameters: concentration lambda in (-1, 1) and modal
/// direction mu. Negative lambda moves the mode to mu + pi.
struct WcParams {
  WcParams(double lambda_in, Angled mu_in = Angled(0.0));

  double lambda;
  Angled mu;
};

/// Angular central Gaussian parameters: a q x q concentration matrix (the
/// inverse scatter), defined only up to scale and therefore canonicalized to
/// determinant 1 on construction.
class AcgParams {
 public:
  explicit AcgParams(const SpdMatrix& omega);

  /// Circle family with concentration diag(b^2, 1), b > 0.
  static AcgParams circle(double b);

  const SpdMatrix& omega() const { return omega_; }
  int dim() const { return omega_.dim(); }

 private:
  SpdMatrix omega_;
};

/// Spherical Cauchy parameters: concentration lambda in [0, 1) and modal
/// direction mu0 on S_{q-1}.
struct ScParams {
  ScParams(double lambda_in, UnitVectord mu0_in);

  double lambda;
  UnitVectord mu0;
};

/// Multivariate t parameters: location, SPD scatter, degrees of freedom
/// kappa > 0. kappa = 1 is the multivariate Cauchy.
struct MvtParams {
  MvtParams(Eigen::VectorXd location_in, SpdMatrix scatter_in, double kappa_in);

  Eigen::VectorXd location;
  SpdMatrix scatter;
  double kappa;
};

/// Canonical (A, B, C) parameterization of the wrapped Cauchy density
/// A / (2 pi (B - C cos theta)), with A, B > 0, C >= 0 and B^2 = A^2 + C^2.
struct AbcTriple {
  AbcTriple(double a_in, double b_in, double c_in);

  /// Scale so that B = 1 (the density is unchanged).
  AbcTriple normalized() const { return AbcTriple(a / b, 1.0, c / b); }

  double a;
  double b;
  double c;
};

/// Decomposition of a Gaussian quadratic form into its marginal and
/// conditional parts: total = marginal + conditional.
struct QfSplit {
  double total;        // x^T Sigma^{-1} x
  double marginal;     // x1^T Sigma11^{-1} x1
  double conditional;  // Schur-complement residual term
};

/// The four interchangeable scalar parameterizations of the wrapped Cauchy
/// family.
enum class WcParameterization {
  kLambda,  // concentration lambda in [0, 1)
  kB,       // axis ratio b in (0, 1]
  kMu,      // angle mu in (0, pi/2]
  kAlpha,   // conditional autoregression weight alpha in [0, 1/2)
};

/// One wrapped Cauchy distribution expressed in every parameterization at
/// once, together with its canonical triple.
struct WcParameterSet {
  double lambda;
  double b;
  double mu;
  double alpha;
  AbcTriple abc;
};

/// Wrapped Cauchy density on the circle.
double wc_pdf(Angled theta, const WcParams& p);

/// Wrapped Cauchy density straight from a canonical triple.
double wc_pdf_abc(Angled theta, const AbcTriple& abc);

/// Angular central Gaussian density on S_{q-1} (antipodally symmetric,
/// invariant under rescaling of the concentration matrix).
double acg_pdf(const UnitVectord& x, const AcgParams& p);

/// Spherical Cauchy density on S_{q-1}.
double sc_pdf(const UnitVectord& y, const ScParams& p);

/// Log density of the multivariate t distribution, fully normalized.
double mvt_logpdf(const Eigen::VectorXd& v, const MvtParams& p);

double mvt_pdf(const Eigen::VectorXd& v, const MvtParams& p);

/// The SPD matrix A with P(y) = x^T A x whenever y is obtained from x by
/// doubling the colatitude about e1, where P(y) = 1 + lambda^2 - 2 lambda
/// y . mu0 is the linear form of the spherical Cauchy density.
SpdMatrix expand_sc_quadratic(const ScParams& p);

/// Split x^T Sigma^{-1} x into the marginal term of the leading q1 block and
/// the conditional Schur-complement term.
QfSplit qf_split(const Eigen::VectorXd& x, const SpdMatrix& sigma, int q1);

/// Parameters of the multivariate Cauchy law of the gnomonic projection of an
/// ACG(Sigma^{-1}) vector: location sigma_21, scatter Sigma_22.1, kappa = 1,
/// after Sigma is rescaled so sigma_11 = 1.
MvtParams acg_gnomonic_params(const SpdMatrix& sigma);

/// Parameters of the multivariate t law of the stereographic projection of a
/// spherical Cauchy vector: with delta = 1 + lambda^2 + 2 lambda mu_1,
/// location (2 lambda / delta) mu_2, scatter (q-1)^{-1} sigma^2 I with
/// sigma = (1 - lambda^2) / delta, and kappa = q - 1. Valid for any modal
/// direction, not only mu0 = e1.
MvtParams sc_stereo_params(const ScParams& p);

/// Convert any one scalar parameterization into the canonical triple and all
/// four parameter values.
WcParameterSet param_convert(WcParameterization kind, double value);

/// Fourier coefficient E[exp(i m Theta)] = lambda^{|m|} exp(i m mu).
std::complex<double> wc_fourier_coeff(const WcParams& p, int m);

/// Concentration of the wrapped Cauchy obtained by wrapping a linear Cauchy
/// with the given scale: lambda = exp(-scale).
double wrapping_lambda(double b_scale);

/// Normalized spectral density of the stationary AR(1) process, computed via
/// the transfer function |1 - lambda e^{i theta}|^{-2}. Coincides with the
/// wrapped Cauchy density at the same lambda and mu = 0.
double ar1_spectral_pdf(Angled theta, double lambda);

/// CAR(1) weight from the AR(1) coefficient: alpha = lambda / (1 + lambda^2).
double car1_alpha(double lambda);

/// AR(1) coefficient from the CAR(1) weight; the branch with |lambda| < 1.
double car1_lambda(double alpha);

}  // namespace dirdist
