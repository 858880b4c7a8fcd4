#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dirdist {

/// Outcome of one verification suite. For deterministic identity suites
/// max_abs_error is the largest residual and passed means it is within
/// tolerance; for Monte Carlo suites max_abs_error is the largest standardized
/// deviation (in sigma units) and the tolerance is the sigma band (3 by
/// default).
struct CheckReport {
  std::string suite;
  long long trials = 0;
  double max_abs_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::uint64_t seed = 0;
  double wall_time = 0.0;  // seconds
};

std::string to_json_string(const CheckReport& report);
std::string check_report_csv_header();
std::string to_csv_line(const CheckReport& report);

/// Fundamental diagonal Mobius identity M(S(x); lambda) = S(L(x; b)) over
/// random circle points and scales b in [0.05, 20].
CheckReport run_mobius_suite(long long trials, std::uint64_t seed, double tol);

/// General identity with rotations, M(S(x); lambda, 2 beta, 2 alpha) =
/// S(L(x; B)), over random 2x2 matrices with positive determinant.
CheckReport run_mobius_general_suite(long long trials, std::uint64_t seed, double tol);

/// Doubling checks: the wrapped Cauchy / circle ACG density identity under
/// angle doubling (two-branch change of variables), halve-then-double round
/// trips on spheres with random poles, circle agreement with squaring, and
/// equality of the two projections after doubling.
CheckReport run_doubling_suite(long long trials, std::uint64_t seed, double tol);

/// wc, acg (q = 2, 3) and sc (q = 2, 3) densities integrate to 1.
CheckReport run_normalization_suite(long long trials, std::uint64_t seed, double tol);

/// Gnomonic pushforward of the ACG to the multivariate Cauchy, with the
/// negative control that the inverted Schur-complement scatter fails.
CheckReport run_gnomonic_pushforward_suite(long long trials, std::uint64_t seed, double tol);

/// Stereographic pushforward of the spherical Cauchy to the multivariate t,
/// including off-axis modal directions, with the negative control that the
/// exponent q/2 in place of q-1 fails.
CheckReport run_stereo_pushforward_suite(long long trials, std::uint64_t seed, double tol);

/// Trapezoid Fourier coefficients of the wrapped Cauchy equal
/// lambda^{|m|} e^{i m mu} for |m| <= 5.
CheckReport run_fourier_suite(long long trials, std::uint64_t seed, double tol);

/// All four parameterizations of one wrapped Cauchy distribution close into
/// identical canonical triples, parameter values and pointwise densities.
CheckReport run_table1_suite(long long trials, std::uint64_t seed, double tol);

/// AR(1) spectral density equals the wrapped Cauchy density pointwise and the
/// CAR(1) weight round-trips exactly (1e-14).
CheckReport run_spectral_suite(long long trials, std::uint64_t seed, double tol);

/// Three-way sampler agreement: doubling, stereographic and wrapping draws of
/// WC(0.5) have empirical E[cos m Theta], m = 1, 2, 3, within the sigma band
/// of lambda^m. Tolerance is in sigma units.
CheckReport run_sampler_suite(long long trials, std::uint64_t seed, double tol);

/// Measure-factor consistency gnomonic(phi) = stereo(2 phi) * doubling(phi)
/// as a relative residual on a colatitude grid for q = 2, 3, 4, plus the
/// exact circle factor 2.
CheckReport run_measure_factor_suite(double tol);

/// Quadratic-form split Q = Q1 + Q21 on random SPD matrices, plus the
/// spherical Cauchy quadratic expansion P(doubled x) = x^T A x (1e-12) with A
/// positive definite.
CheckReport run_quadratic_form_suite(long long trials, std::uint64_t seed, double tol);

/// Run one named suite (or "all"), with optional trial-count and tolerance
/// overrides; defaults come from the module invariants. Valid names: mobius,
/// mobius-general, doubling, pushforward-gnomonic, pushforward-stereo,
/// normalization, fourier, table1, spectral, samplers, all.
std::vector<CheckReport> run_identity_suite(const std::string& name,
                                            std::optional<long long> trials,
                                            std::uint64_t seed,
                                            std::optional<double> tol);

}  // namespace dirdist
