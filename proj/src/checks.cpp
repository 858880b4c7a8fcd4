#include "dirdist/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

#include "dirdist/distributions.hpp"
#include "dirdist/geom.hpp"
#include "dirdist/projection.hpp"
#include "dirdist/quadrature.hpp"
#include "dirdist/rng.hpp"
#include "dirdist/sampling.hpp"
#include "dirdist/xform.hpp"

namespace dirdist {

namespace {

constexpr double kPi = std::numbers::pi;

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

CheckReport make_report(std::string suite, long long trials, double max_err, double tol,
                        bool passed, std::uint64_t seed, const Stopwatch& watch) {
  CheckReport r;
  r.suite = std::move(suite);
  r.trials = trials;
  r.max_abs_error = max_err;
  r.tolerance = tol;
  r.passed = passed;
  r.seed = seed;
  r.wall_time = watch.seconds();
  return r;
}

double residual(const UnitVectord& a, const UnitVectord& b) {
  return (a.coords() - b.coords()).norm();
}

SpdMatrix random_spd(int q, Rng& rng) {
  Eigen::MatrixXd g(q, q);
  for (int i = 0; i < q; ++i) {
    for (int j = 0; j < q; ++j) g(i, j) = rng.normal();
  }
  const Eigen::MatrixXd a = g * g.transpose() + 0.5 * Eigen::MatrixXd::Identity(q, q);
  return SpdMatrix(a);
}

}  // namespace

std::string to_json_string(const CheckReport& report) {
  nlohmann::json j{{"suite", report.suite},
                   {"trials", report.trials},
                   {"max_abs_error", report.max_abs_error},
                   {"tolerance", report.tolerance},
                   {"passed", report.passed},
                   {"seed", report.seed},
                   {"wall_time", report.wall_time}};
  return j.dump();
}

std::string check_report_csv_header() {
  return "suite,trials,max_abs_error,tolerance,passed,seed,wall_time";
}

std::string to_csv_line(const CheckReport& report) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%s,%lld,%.17g,%.17g,%d,%llu,%.6f", report.suite.c_str(),
                report.trials, report.max_abs_error, report.tolerance,
                report.passed ? 1 : 0, static_cast<unsigned long long>(report.seed),
                report.wall_time);
  return buf;
}

CheckReport run_mobius_suite(long long trials, std::uint64_t seed, double tol) {
  const Stopwatch watch;
  double max_err = 0.0;
  for (long long i = 0; i < trials; ++i) {
    Rng rng = Rng::split(seed, static_cast<std::uint64_t>(i));
    const UnitVectord x = vec(Angled(rng.uniform(-kPi, kPi)));
    const double b = std::exp(rng.uniform(std::log(0.05), std::log(20.0)));
    const double lambda = (1.0 - b) / (1.0 + b);
    const UnitVectord lhs = mobius_diag(square(x), lambda);
    const UnitVectord rhs = square(rescale_linear_diag(x, b));
    max_err = std::max(max_err, residual(lhs, rhs));
  }
  return make_report("mobius", trials, max_err, tol, max_err <= tol, seed, watch);
}

CheckReport run_mobius_general_suite(long long trials, std::uint64_t seed, double tol) {
  const Stopwatch watch;
  double max_err = 0.0;
  for (long long i = 0; i < trials; ++i) {
    Rng rng = Rng::split(seed, static_cast<std::uint64_t>(i));
    Eigen::Matrix2d b;
    do {
      b << rng.normal(), rng.normal(), rng.normal(), rng.normal();
      if (b.determinant() < 0.0) b.col(1) *= -1.0;
    } while (b.determinant() < 0.01);
    const Svd2d f = svd2(b);
    const double lambda = (1.0 - f.b) / (1.0 + f.b);
    const MobiusParamsd mp(lambda, f.beta * 2.0, f.alpha * 2.0);
    const UnitVectord x = vec(Angled(rng.uniform(-kPi, kPi)));
    const UnitVectord lhs = mobius_general(square(x), mp);
    const UnitVectord rhs = square(rescale_linear_general(x, GeneralLinear2d(b)));
    max_err = std::max(max_err, residual(lhs, rhs));
  }
  return make_report("mobius-general", trials, max_err, tol, max_err <= tol, seed, watch);
}

CheckReport run_doubling_suite(long long trials, std::uint64_t seed, double tol) {
  const Stopwatch watch;
  double max_err = 0.0;
  long long evals = 0;

  // Density identity under angle doubling: the two-to-one change of variables
  // 2 f_WC(2 phi) = f_ACG(phi) + f_ACG(phi + pi).
  const Quadrature1d grid = circle_trapezoid(1024);
  for (const double b : {0.1, 0.5, 0.9}) {
    const double lambda = (1.0 - b) / (1.0 + b);
    const WcParams wc(lambda);
    const AcgParams acg = AcgParams::circle(b);
    for (Eigen::Index k = 0; k < grid.nodes.size(); ++k) {
      const double phi = grid.nodes[k];
      const double lhs = 2.0 * wc_pdf(Angled(2.0 * phi), wc);
      const double rhs =
          acg_pdf(vec(Angled(phi)), acg) + acg_pdf(vec(Angled(phi + kPi)), acg);
      max_err = std::max(max_err, std::abs(lhs - rhs));
      ++evals;
    }
  }

  // Geometric round trips about random poles, circle agreement with squaring,
  // and projection equality after doubling.
  const UnitVectord e1_2 = UnitVectord::axis(2);
  for (long long i = 0; i < trials; ++i) {
    Rng rng = Rng::split(seed, static_cast<std::uint64_t>(i));
    const int q = 2 + static_cast<int>(i % 3);
    const UnitVectord pole = sample_uniform(q, rng);
    const UnitVectord y = sample_uniform(q, rng);
    const UnitVectord x = halve_angle_sphere(y, pole);
    max_err = std::max(max_err, residual(double_angle_sphere(x, pole), y));
    max_err = std::max(max_err, residual(double_angle_sphere(-x, pole), y));
    max_err = std::max(max_err, std::max(0.0, -x.dot(pole)));  // hemisphere branch

    const UnitVectord xc = vec(Angled(rng.uniform(-kPi, kPi)));
    max_err = std::max(max_err, residual(double_angle_sphere(xc, e1_2), square(xc)));

    // Projection equality on the hemisphere interior (the tangent chart has
    // condition ~ 1/x1^2, so the equator sliver cannot meet 1e-12 absolutely).
    const UnitVectord e1 = UnitVectord::axis(q);
    UnitVectord h = sample_uniform(q, rng);
    if (h[0] < 0.0) h = -h;
    if (h[0] > 0.05) {
      const TangentPointd lhs = stereographic(double_angle_sphere(h, e1));
      const TangentPointd rhs = gnomonic(h);
      max_err = std::max(max_err, (lhs.coords() - rhs.coords()).norm());
    }
    evals += 4;
  }
  return make_report("doubling", evals, max_err, tol, max_err <= tol, seed, watch);
}

CheckReport run_normalization_suite(long long /*trials*/, std::uint64_t seed, double tol) {
  const Stopwatch watch;
  double max_err = 0.0;
  long long evals = 0;
  const Quadrature1d circle = circle_trapezoid(1024);
  const SphereQuadrature sphere = sphere_product_rule(64, 128);

  for (const double lambda : {0.2, 0.5, 0.8}) {
    const WcParams p(lambda, Angled(0.7));
    const double mass = circle.integrate([&](double t) { return wc_pdf(Angled(t), p); });
    max_err = std::max(max_err, std::abs(mass - 1.0));
    evals += circle.nodes.size();
  }

  for (const double b : {0.25, 0.5, 2.0}) {
    const AcgParams p = AcgParams::circle(b);
    const double mass =
        circle.integrate([&](double t) { return acg_pdf(vec(Angled(t)), p); });
    max_err = std::max(max_err, std::abs(mass - 1.0));
    evals += circle.nodes.size();
  }

  {
    Eigen::Matrix3d base;
    base << 2.0, 0.4, -0.1, 0.3, 1.0, 0.2, -0.5, 0.1, 0.7;
    const Eigen::Matrix3d rot = Eigen::HouseholderQR<Eigen::Matrix3d>(base).householderQ();
    const Eigen::Vector3d eigs(0.25, 1.0, 4.0);
    const Eigen::Matrix3d rotated = rot * eigs.asDiagonal() * rot.transpose();
    const Eigen::Matrix3d diag = Eigen::Vector3d(1.0, 2.0, 0.5).asDiagonal();
    const Eigen::Matrix3d mild = Eigen::Vector3d(1.0, 1.2, 0.9).asDiagonal();
    for (const Eigen::Matrix3d& omega : {diag, rotated, mild}) {
      const AcgParams p{SpdMatrix(omega)};
      const double mass = sphere.integrate(
          [&](const Eigen::Vector3d& y) { return acg_pdf(UnitVectord(y), p); });
      max_err = std::max(max_err, std::abs(mass - 1.0));
      evals += sphere.nodes.rows();
    }
  }

  for (const double lambda : {0.2, 0.5, 0.7}) {
    const ScParams p2(lambda, vec(Angled(0.3)));
    const double mass2 =
        circle.integrate([&](double t) { return sc_pdf(vec(Angled(t)), p2); });
    max_err = std::max(max_err, std::abs(mass2 - 1.0));
    evals += circle.nodes.size();

    const ScParams p3(lambda, UnitVectord::normalized(Eigen::Vector3d(1.0, 1.0, 1.0)));
    const double mass3 = sphere.integrate(
        [&](const Eigen::Vector3d& y) { return sc_pdf(UnitVectord(y), p3); });
    max_err = std::max(max_err, std::abs(mass3 - 1.0));
    evals += sphere.nodes.rows();
  }
  return make_report("normalization", evals, max_err, tol, max_err <= tol, seed, watch);
}

CheckReport run_gnomonic_pushforward_suite(long long trials, std::uint64_t seed, double tol) {
  const Stopwatch watch;
  const long long points = std::max<long long>(1, trials / 5);
  double max_err = 0.0;
  long long evals = 0;

  for (const int q : {2, 3, 4}) {
    for (int k = 0; k < 5; ++k) {
      Rng rng = Rng::split(seed, 1000ULL * q + k);
      const SpdMatrix sigma = random_spd(q, rng);
      const AcgParams acg{sigma.inverse()};
      const MvtParams law = acg_gnomonic_params(sigma);
      for (long long j = 0; j < points; ++j) {
        const Eigen::VectorXd v = 2.0 * rng.normal_vector(q - 1);
        const UnitVectord x = gnomonic_inverse(TangentPointd(v));
        const double phi = std::acos(std::min(1.0, x[0]));
        // The ACG is antipodally symmetric, so the projected law carries the
        // mass of both preimages {x, -x}: fold with a factor 2.
        const double lhs = 2.0 * acg_pdf(x, acg) / gnomonic_measure_factor(phi, q);
        const double rhs = mvt_pdf(v, law);
        max_err = std::max(max_err, std::abs(lhs - rhs));
        ++evals;
      }
    }
  }

  // Negative control: the inverse Schur complement is the wrong scatter.
  double control_err = 0.0;
  {
    const int q = 3;
    Eigen::MatrixXd sig = Eigen::Vector3d(1.0, 4.0, 2.25).asDiagonal();
    const SpdMatrix sigma{sig};
    const AcgParams acg{sigma.inverse()};
    const MvtParams good = acg_gnomonic_params(sigma);
    const MvtParams bad(good.location, schur_complement(sigma, 1).inverse(), 1.0);
    Rng rng = Rng::split(seed, 777);
    for (int j = 0; j < 100; ++j) {
      const Eigen::VectorXd v = 2.0 * rng.normal_vector(q - 1);
      const UnitVectord x = gnomonic_inverse(TangentPointd(v));
      const double phi = std::acos(std::min(1.0, x[0]));
      const double lhs = 2.0 * acg_pdf(x, acg) / gnomonic_measure_factor(phi, q);
      control_err = std::max(control_err, std::abs(lhs - mvt_pdf(v, bad)));
    }
  }
  const bool passed = max_err <= tol && control_err > 10.0 * tol;
  return make_report("pushforward-gnomonic", evals, max_err, tol, passed, seed, watch);
}

CheckReport run_stereo_pushforward_suite(long long trials, std::uint64_t seed, double tol) {
  const Stopwatch watch;
  const long long points = std::max<long long>(1, trials / 5);
  double max_err = 0.0;
  long long evals = 0;

  for (const int q : {2, 3, 4}) {
    for (int k = 0; k < 5; ++k) {
      Rng rng = Rng::split(seed, 2000ULL * q + k);
      const double lambda = rng.uniform(0.0, 0.85);
      const ScParams p(lambda, sample_uniform(q, rng));  // mode off-axis
      const MvtParams law = sc_stereo_params(p);
      for (long long j = 0; j < points; ++j) {
        const Eigen::VectorXd w = 2.0 * rng.normal_vector(q - 1);
        const UnitVectord y = stereographic_inverse(TangentPointd(w));
        const double theta = std::acos(std::max(-1.0, std::min(1.0, y[0])));
        const double lhs = sc_pdf(y, p) / stereo_measure_factor(theta, q);
        const double rhs = mvt_pdf(w, law);
        max_err = std::max(max_err, std::abs(lhs - rhs));
        ++evals;
      }
    }
  }

  // Negative control: replacing the exponent q-1 by q/2 breaks the identity.
  double control_err = 0.0;
  {
    const int q = 3;
    const ScParams p(0.5, UnitVectord::normalized(Eigen::Vector3d(1.0, 1.0, 1.0)));
    const MvtParams law = sc_stereo_params(p);
    Rng rng = Rng::split(seed, 888);
    for (int j = 0; j < 100; ++j) {
      const Eigen::VectorXd w = 2.0 * rng.normal_vector(q - 1);
      const UnitVectord y = stereographic_inverse(TangentPointd(w));
      const double theta = std::acos(std::max(-1.0, std::min(1.0, y[0])));
      const double lin = 1.0 + 0.25 - 2.0 * 0.5 * y.dot(p.mu0);
      const double wrong_exponent =
          std::pow((1.0 - 0.25) / lin, 0.5 * q) / surface_area(q);
      control_err = std::max(
          control_err, std::abs(wrong_exponent / stereo_measure_factor(theta, q) -
                                mvt_pdf(w, law)));
    }
  }
  const bool passed = max_err <= tol && control_err > 10.0 * tol;
  return make_report("pushforward-stereo", evals, max_err, tol, passed, seed, watch);
}

CheckReport run_fourier_suite(long long /*trials*/, std::uint64_t seed, double tol) {
  const Stopwatch watch;
  const Quadrature1d grid = circle_trapezoid(1024);
  double max_err = 0.0;
  long long evals = 0;
  for (const double lambda : {0.2, 0.5, 0.8}) {
    for (const double mu : {0.0, 0.9}) {
      const WcParams p(lambda, Angled(mu));
      for (int m = -5; m <= 5; ++m) {
        std::complex<double> acc = 0.0;
        for (Eigen::Index k = 0; k < grid.nodes.size(); ++k) {
          const double t = grid.nodes[k];
          acc += grid.weights[k] * wc_pdf(Angled(t), p) *
                 std::exp(std::complex<double>(0.0, m * t));
        }
        max_err = std::max(max_err, std::abs(acc - wc_fourier_coeff(p, m)));
        evals += grid.nodes.size();
      }
    }
  }
  return make_report("fourier", evals, max_err, tol, max_err <= tol, seed, watch);
}

CheckReport run_table1_suite(long long /*trials*/, std::uint64_t seed, double tol) {
  const Stopwatch watch;
  double max_err = 0.0;
  long long evals = 0;
  const Quadrature1d grid = circle_trapezoid(256);
  for (const double lambda : {0.0, 0.2, 0.5, 0.8, 0.95}) {
    // Equivalent starting values of the same distribution in each system.
    const double b = (1.0 - lambda) / (1.0 + lambda);
    const double mu = std::atan2(1.0 - lambda * lambda, 2.0 * lambda);
    const double alpha = lambda / (1.0 + lambda * lambda);
    const WcParameterSet sets[4] = {
        param_convert(WcParameterization::kLambda, lambda),
        param_convert(WcParameterization::kB, b),
        param_convert(WcParameterization::kMu, mu),
        param_convert(WcParameterization::kAlpha, alpha),
    };
    for (const auto& s : sets) {
      max_err = std::max({max_err, std::abs(s.lambda - sets[0].lambda),
                          std::abs(s.b - sets[0].b), std::abs(s.mu - sets[0].mu),
                          std::abs(s.alpha - sets[0].alpha),
                          std::abs(s.abc.a - sets[0].abc.a),
                          std::abs(s.abc.b - sets[0].abc.b),
                          std::abs(s.abc.c - sets[0].abc.c)});
      // Round trip back to the starting value.
      max_err = std::max({max_err, std::abs(s.lambda - lambda), std::abs(s.b - b),
                          std::abs(s.mu - mu), std::abs(s.alpha - alpha)});
      for (Eigen::Index k = 0; k < grid.nodes.size(); ++k) {
        const Angled t(grid.nodes[k]);
        max_err =
            std::max(max_err, std::abs(wc_pdf_abc(t, s.abc) - wc_pdf_abc(t, sets[0].abc)));
        ++evals;
      }
    }
  }
  return make_report("table1", evals, max_err, tol, max_err <= tol, seed, watch);
}

CheckReport run_spectral_suite(long long /*trials*/, std::uint64_t seed, double tol) {
  const Stopwatch watch;
  const Quadrature1d grid = circle_trapezoid(1024);
  double max_err = 0.0;
  long long evals = 0;
  for (const double lambda : {-0.7, 0.2, 0.5, 0.8}) {
    const WcParams p(lambda);
    for (Eigen::Index k = 0; k < grid.nodes.size(); ++k) {
      const Angled t(grid.nodes[k]);
      max_err = std::max(max_err, std::abs(ar1_spectral_pdf(t, lambda) - wc_pdf(t, p)));
      ++evals;
    }
  }
  double roundtrip_err = 0.0;
  for (double lambda = -0.95; lambda <= 0.95; lambda += 0.05) {
    roundtrip_err =
        std::max(roundtrip_err, std::abs(car1_lambda(car1_alpha(lambda)) - lambda));
    ++evals;
  }
  for (double alpha = -0.49; alpha <= 0.49; alpha += 0.07) {
    roundtrip_err =
        std::max(roundtrip_err, std::abs(car1_alpha(car1_lambda(alpha)) - alpha));
    ++evals;
  }
  const bool passed = max_err <= tol && roundtrip_err <= 1e-14;
  return make_report("spectral", evals, std::max(max_err, roundtrip_err), tol, passed, seed,
                     watch);
}

CheckReport run_sampler_suite(long long trials, std::uint64_t seed, double tol) {
  const Stopwatch watch;
  const double lambda = 0.5;
  const WcParams p(lambda);
  const WcSampleMethod methods[3] = {WcSampleMethod::kDoubling,
                                     WcSampleMethod::kStereographic,
                                     WcSampleMethod::kWrapping};
  double max_z = 0.0;
  for (int mi = 0; mi < 3; ++mi) {
    Rng rng = Rng::split(seed, 100 + mi);
    double sums[3] = {0.0, 0.0, 0.0};
    for (long long i = 0; i < trials; ++i) {
      const double theta = sample_wc(p, methods[mi], rng).value();
      for (int m = 1; m <= 3; ++m) sums[m - 1] += std::cos(m * theta);
    }
    for (int m = 1; m <= 3; ++m) {
      const double mean = sums[m - 1] / trials;
      const double target = std::pow(lambda, m);
      const double sigma =
          std::sqrt((1.0 - std::pow(lambda, 2 * m)) / (2.0 * trials));
      max_z = std::max(max_z, std::abs(mean - target) / sigma);
    }
  }
  return make_report("samplers", 3 * trials, max_z, tol, max_z <= tol, seed, watch);
}

CheckReport run_measure_factor_suite(double tol) {
  const Stopwatch watch;
  double max_err = 0.0;
  long long evals = 0;
  for (const int q : {2, 3, 4}) {
    for (int i = 0; i < 200; ++i) {
      const double phi = 1.45 * i / 199.0;
      const double g = gnomonic_measure_factor(phi, q);
      const double combined =
          stereo_measure_factor(2.0 * phi, q) * doubling_measure_factor(phi, q);
      max_err = std::max(max_err, std::abs(g - combined) / g);
      if (q == 2 && doubling_measure_factor(phi, 2) != 2.0) {
        max_err = 1e300;  // the circle factor must be exactly 2
      }
      ++evals;
    }
  }
  return make_report("measure-factors", evals, max_err, tol, max_err <= tol, 0, watch);
}

CheckReport run_quadratic_form_suite(long long trials, std::uint64_t seed, double tol) {
  const Stopwatch watch;
  double split_err = 0.0;
  for (long long i = 0; i < trials; ++i) {
    Rng rng = Rng::split(seed, static_cast<std::uint64_t>(i));
    const int q = 2 + static_cast<int>(i % 5);
    const SpdMatrix sigma = random_spd(q, rng);
    const Eigen::VectorXd x = rng.normal_vector(q);
    const int q1 = 1 + static_cast<int>(i % (q - 1));
    const QfSplit s = qf_split(x, sigma, q1);
    split_err = std::max(split_err, std::abs(s.total - s.marginal - s.conditional));
  }

  double expand_err = 0.0;
  for (long long i = 0; i < 1000; ++i) {
    Rng rng = Rng::split(seed, 50000 + static_cast<std::uint64_t>(i));
    const int q = 2 + static_cast<int>(i % 3);
    const ScParams p(rng.uniform(0.0, 0.95), sample_uniform(q, rng));
    const SpdMatrix a = expand_sc_quadratic(p);  // construction validates SPD
    const UnitVectord e1 = UnitVectord::axis(q);
    const UnitVectord x = sample_uniform(q, rng);
    const UnitVectord y = double_angle_sphere(x, e1);
    const double lin = 1.0 + p.lambda * p.lambda - 2.0 * p.lambda * y.dot(p.mu0);
    expand_err = std::max(expand_err, std::abs(lin - a.quadratic_form(x.coords())));
  }
  const bool passed = split_err <= tol && expand_err <= 1e-12;
  return make_report("quadratic-forms", trials + 1000, std::max(split_err, expand_err), tol,
                     passed, seed, watch);
}

std::vector<CheckReport> run_identity_suite(const std::string& name,
                                            std::optional<long long> trials,
                                            std::uint64_t seed,
                                            std::optional<double> tol) {
  if (trials && *trials < 1) {
    throw std::invalid_argument("run_identity_suite: trials must be at least 1");
  }
  if (tol && !(*tol > 0.0 && std::isfinite(*tol))) {
    throw std::invalid_argument("run_identity_suite: tolerance must be positive and finite");
  }

  struct Entry {
    const char* name;
    CheckReport (*run)(long long, std::uint64_t, double);
    long long default_trials;
    double default_tol;
  };
  static const Entry entries[] = {
      {"mobius", run_mobius_suite, 100000, 1e-12},
      {"mobius-general", run_mobius_general_suite, 10000, 1e-11},
      {"doubling", run_doubling_suite, 1000, 1e-12},
      {"pushforward-gnomonic", run_gnomonic_pushforward_suite, 500, 1e-10},
      {"pushforward-stereo", run_stereo_pushforward_suite, 500, 1e-10},
      {"normalization", run_normalization_suite, 1, 1e-8},
      {"fourier", run_fourier_suite, 1, 1e-10},
      {"table1", run_table1_suite, 1, 1e-12},
      {"spectral", run_spectral_suite, 1, 1e-12},
      {"samplers", run_sampler_suite, 100000, 3.0},
  };

  std::vector<CheckReport> reports;
  bool found = false;
  for (const Entry& e : entries) {
    if (name == "all" || name == e.name) {
      found = true;
      reports.push_back(e.run(trials.value_or(e.default_trials), seed,
                              tol.value_or(e.default_tol)));
    }
  }
  if (!found) {
    throw std::invalid_argument("run_identity_suite: unknown suite '" + name + "'");
  }
  return reports;
}

}  // namespace dirdist
