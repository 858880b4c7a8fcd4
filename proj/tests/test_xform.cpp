#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "dirdist/rng.hpp"
#include "dirdist/xform.hpp"

using namespace dirdist;

namespace {
constexpr double kPi = std::numbers::pi;

UnitVectord unit2(double a, double b) { return UnitVectord(Eigen::Vector2d(a, b)); }

std::complex<double> to_complex(const UnitVectord& x) { return {x[0], x[1]}; }

// Complex-arithmetic form of the general Mobius map, evaluated independently
// of the vector implementation.
std::complex<double> mobius_complex(std::complex<double> z, double lambda, double alpha,
                                    double beta) {
  const std::complex<double> e2b = std::exp(std::complex<double>(0.0, 2.0 * beta));
  const std::complex<double> phase = std::exp(std::complex<double>(0.0, 2.0 * (alpha - beta)));
  return phase * (z + lambda * e2b) / (lambda * std::conj(e2b) * z + 1.0);
}
}  // namespace

TEST_CASE("squaring doubles the angle") {
  CHECK((square(unit2(1, 0)).coords() - Eigen::Vector2d(1, 0)).norm() == 0.0);
  CHECK((square(unit2(0, 1)).coords() - Eigen::Vector2d(-1, 0)).norm() == 0.0);

  // Oracle: complex squaring of (3 + 4i)/5.
  const std::complex<double> z(3.0 / 5.0, 4.0 / 5.0);
  const std::complex<double> z2 = z * z;
  CHECK(z2.real() == doctest::Approx(-7.0 / 25.0));
  CHECK(z2.imag() == doctest::Approx(24.0 / 25.0));
  const UnitVectord s = square(unit2(3.0 / 5.0, 4.0 / 5.0));
  CHECK(s[0] == doctest::Approx(-7.0 / 25.0));
  CHECK(s[1] == doctest::Approx(24.0 / 25.0));

  Rng rng(21);
  for (int i = 0; i < 300; ++i) {
    const Angled phi(rng.uniform(-kPi, kPi));
    const UnitVectord x = vec(phi);
    // Exactly two-to-one: the antipode maps to the same point, bitwise.
    CHECK(square(-x)[0] == square(x)[0]);
    CHECK(square(-x)[1] == square(x)[1]);
    // arg doubles mod 2 pi.
    const double diff = arg(square(x)).value() - 2.0 * phi.value();
    CHECK(std::abs(std::remainder(diff, 2.0 * kPi)) < 1e-12);
  }
}

TEST_CASE("rescaled diagonal linear transformation") {
  Rng rng(22);
  for (int i = 0; i < 100; ++i) {
    const UnitVectord x = vec(Angled(rng.uniform(-kPi, kPi)));
    CHECK((rescale_linear_diag(x, 1.0).coords() - x.coords()).norm() < 1e-15);
  }
  CHECK((rescale_linear_diag(unit2(0, 1), 3.7).coords() - Eigen::Vector2d(0, 1)).norm() <
        1e-15);

  const double s = std::sqrt(2.0) / 2.0;
  const UnitVectord out = rescale_linear_diag(unit2(s, s), 2.0);
  CHECK(out[0] == doctest::Approx(1.0 / std::sqrt(5.0)));
  CHECK(out[1] == doctest::Approx(2.0 / std::sqrt(5.0)));

  CHECK_THROWS_AS(rescale_linear_diag(unit2(1, 0), 0.0), std::invalid_argument);

  // tan(arg out) = b tan(arg in) away from the vertical axis.
  for (int i = 0; i < 200; ++i) {
    const double phi = rng.uniform(-1.4, 1.4);
    const double b = std::exp(rng.uniform(std::log(0.1), std::log(10.0)));
    const UnitVectord z = rescale_linear_diag(vec(Angled(phi)), b);
    CHECK(std::tan(arg(z).value()) ==
          doctest::Approx(b * std::tan(phi)).epsilon(1e-10));
  }
}

TEST_CASE("general rescaled linear transformation") {
  Rng rng(23);
  const Eigen::Matrix2d id = Eigen::Matrix2d::Identity();
  for (int i = 0; i < 100; ++i) {
    const UnitVectord x = vec(Angled(rng.uniform(-kPi, kPi)));
    CHECK((rescale_linear_general(x, GeneralLinear2d(id)).coords() - x.coords()).norm() <
          1e-15);
    // Diagonal reduction.
    const double b = std::exp(rng.uniform(std::log(0.1), std::log(10.0)));
    Eigen::Matrix2d diag;
    diag << 1.0, 0.0, 0.0, b;
    CHECK((rescale_linear_general(x, GeneralLinear2d(diag)).coords() -
           rescale_linear_diag(x, b).coords())
              .norm() < 1e-14);
    // Projective invariance under positive rescaling of the matrix.
    Eigen::Matrix2d m;
    m << rng.normal(), rng.normal(), rng.normal(), rng.normal();
    if (m.determinant() < 0) m.col(1) *= -1.0;
    if (m.determinant() < 0.05) continue;
    const double t = std::exp(rng.uniform(-2.0, 2.0));
    CHECK((rescale_linear_general(x, GeneralLinear2d(m)).coords() -
           rescale_linear_general(x, GeneralLinear2d(Eigen::Matrix2d(t * m))).coords())
              .norm() < 1e-13);
  }
  CHECK((rescale_linear_general(unit2(0.6, 0.8), GeneralLinear2d(Eigen::Matrix2d(3.0 * id)))
             .coords() -
         Eigen::Vector2d(0.6, 0.8))
            .norm() < 1e-15);
  Eigen::Matrix2d reflection;
  reflection << 1.0, 0.0, 0.0, -1.0;
  const Eigen::Matrix2d singular = Eigen::Matrix2d::Ones();
  CHECK_THROWS_AS((GeneralLinear2d(reflection)), std::invalid_argument);
  CHECK_THROWS_AS((GeneralLinear2d(singular)), std::invalid_argument);
}

TEST_CASE("diagonal Mobius transformation") {
  Rng rng(24);
  for (int i = 0; i < 100; ++i) {
    const UnitVectord y = vec(Angled(rng.uniform(-kPi, kPi)));
    CHECK((mobius_diag(y, 0.0).coords() - y.coords()).norm() < 1e-15);
  }
  // (+-1, 0) are fixed points for every lambda.
  for (const double l : {-0.9, -0.3, 0.2, 0.7}) {
    CHECK((mobius_diag(unit2(1, 0), l).coords() - Eigen::Vector2d(1, 0)).norm() < 1e-15);
    CHECK((mobius_diag(unit2(-1, 0), l).coords() - Eigen::Vector2d(-1, 0)).norm() < 1e-15);
  }

  const UnitVectord w = mobius_diag(unit2(0, 1), 0.5);
  CHECK(w[0] == doctest::Approx(0.8));
  CHECK(w[1] == doctest::Approx(0.6));

  CHECK_THROWS_AS(mobius_diag(unit2(0, 1), 1.0), std::invalid_argument);

  SUBCASE("agrees with the complex fractional-linear form") {
    double max_err = 0.0;
    for (int i = 0; i < 500; ++i) {
      const UnitVectord y = vec(Angled(rng.uniform(-kPi, kPi)));
      const double l = rng.uniform(-0.95, 0.95);
      const std::complex<double> z = to_complex(y);
      const std::complex<double> oracle = (z + l) / (l * z + 1.0);
      const UnitVectord out = mobius_diag(y, l);
      max_err = std::max(max_err, std::abs(to_complex(out) - oracle));
    }
    CHECK(max_err < 1e-12);
  }

  SUBCASE("half-angle relation") {
    for (int i = 0; i < 300; ++i) {
      const double theta = rng.uniform(-3.0, 3.0);
      const double l = rng.uniform(-0.9, 0.9);
      const double b = (1.0 - l) / (1.0 + l);
      const UnitVectord out = mobius_diag(vec(Angled(theta)), l);
      const double lhs = std::tan(arg(out).value() / 2.0);
      const double rhs = b * std::tan(theta / 2.0);
      CHECK(std::abs(lhs - rhs) < 1e-10 * std::max(1.0, std::abs(rhs)));
    }
  }

  SUBCASE("inverse round trip") {
    CHECK((mobius_inverse(unit2(0.8, 0.6), 0.5).coords() - Eigen::Vector2d(0, 1)).norm() <
          1e-14);
    for (int i = 0; i < 100; ++i) {
      const UnitVectord y = vec(Angled(rng.uniform(-kPi, kPi)));
      CHECK((mobius_inverse(mobius_diag(y, 0.7), 0.7).coords() - y.coords()).norm() < 1e-12);
      CHECK((mobius_inverse(y, 0.0).coords() - y.coords()).norm() < 1e-15);
    }
  }
}

TEST_CASE("general Mobius transformation") {
  Rng rng(25);
  for (int i = 0; i < 100; ++i) {
    const UnitVectord y = vec(Angled(rng.uniform(-kPi, kPi)));
    const double l = rng.uniform(-0.9, 0.9);
    // Diagonal reduction at zero phases.
    const MobiusParamsd diag(l, Angled(0.0), Angled(0.0));
    CHECK((mobius_general(y, diag).coords() - mobius_diag(y, l).coords()).norm() < 1e-14);
    // lambda = 0 is the pure rotation by psi_post - psi_pre.
    const Angled pre(rng.uniform(-kPi, kPi));
    const Angled post(rng.uniform(-kPi, kPi));
    const MobiusParamsd rot(0.0, pre, post);
    CHECK((mobius_general(y, rot).coords() - rotate2(post - pre, y).coords()).norm() < 1e-13);
  }

  SUBCASE("random cases against the complex formula") {
    double max_err = 0.0;
    for (int i = 0; i < 500; ++i) {
      const UnitVectord y = vec(Angled(rng.uniform(-kPi, kPi)));
      const double l = rng.uniform(-0.9, 0.9);
      const double alpha = rng.uniform(-1.5, 1.5);
      const double beta = rng.uniform(-1.5, 1.5);
      const MobiusParamsd p(l, Angled(2.0 * beta), Angled(2.0 * alpha));
      const std::complex<double> oracle = mobius_complex(to_complex(y), l, alpha, beta);
      max_err = std::max(max_err, std::abs(to_complex(mobius_general(y, p)) - oracle));
    }
    CHECK(max_err < 1e-12);
  }

  CHECK_THROWS_AS(MobiusParamsd(1.2, Angled(0.0), Angled(0.0)), std::invalid_argument);
}

TEST_CASE("canonical 2x2 SVD") {
  SUBCASE("diagonal case") {
    Eigen::Matrix2d m;
    m << 2.0, 0.0, 0.0, 1.0;
    const Svd2d f = svd2(m);
    CHECK(f.c == doctest::Approx(2.0));
    CHECK(f.b == doctest::Approx(0.5));
    CHECK(std::abs(f.alpha.value()) < 1e-14);
    CHECK(std::abs(f.beta.value()) < 1e-14);
  }

  SUBCASE("pure rotation hits the tie-break") {
    const Eigen::Matrix2d r = Rotation2d(Angled(kPi / 3.0)).matrix();
    const Svd2d f = svd2(r);
    CHECK(f.c == doctest::Approx(1.0));
    CHECK(f.b == doctest::Approx(1.0));
    CHECK(f.alpha.value() == doctest::Approx(kPi / 3.0));
    CHECK(f.beta.value() == 0.0);
  }

  SUBCASE("random reconstruction") {
    Rng rng(26);
    double max_err = 0.0;
    for (int i = 0; i < 500; ++i) {
      Eigen::Matrix2d m;
      do {
        m << rng.normal(), rng.normal(), rng.normal(), rng.normal();
        if (m.determinant() < 0) m.col(1) *= -1.0;
      } while (m.determinant() < 0.05);
      const Svd2d f = svd2(m);
      CHECK(f.c > 0.0);
      CHECK(f.b > 0.0);
      CHECK(f.b <= 1.0);
      Eigen::Matrix2d d = Eigen::Matrix2d::Identity();
      d(1, 1) = f.b;
      const Eigen::Matrix2d rebuilt = f.c * Rotation2d(f.alpha).matrix() * d *
                                      Rotation2d(f.beta).matrix().transpose();
      max_err = std::max(max_err, (rebuilt - m).cwiseAbs().maxCoeff());

      // Independent oracle for the singular values via trace and determinant
      // of m^T m.
      const Eigen::Matrix2d g = m.transpose() * m;
      const double tr = g.trace();
      const double det = g.determinant();
      const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
      const double s_max = std::sqrt(0.5 * (tr + disc));
      const double s_min = std::sqrt(0.5 * (tr - disc));
      CHECK(f.c == doctest::Approx(s_max).epsilon(1e-10));
      CHECK(f.c * f.b == doctest::Approx(s_min).epsilon(1e-8));
    }
    CHECK(max_err < 1e-10);
  }

  Eigen::Matrix2d flipped;
  flipped << 1.0, 0.0, 0.0, -1.0;
  CHECK_THROWS_AS(svd2(flipped), std::invalid_argument);
}

TEST_CASE("angle doubling and halving on spheres") {
  const UnitVectord e1_3 = UnitVectord::axis(3);
  CHECK((double_angle_sphere(e1_3, e1_3).coords() - e1_3.coords()).norm() == 0.0);

  // (phi = pi/4, u = (1, 0)) doubles to (0, 1, 0).
  const UnitVectord x = UnitVectord::normalized(Eigen::Vector3d(1.0, 1.0, 0.0));
  const UnitVectord doubled = double_angle_sphere(x, e1_3);
  CHECK((doubled.coords() - Eigen::Vector3d(0, 1, 0)).norm() < 1e-14);

  SUBCASE("circle case agrees with squaring") {
    Rng rng(27);
    const UnitVectord e1_2 = UnitVectord::axis(2);
    double max_err = 0.0;
    for (int i = 0; i < 100; ++i) {
      const UnitVectord c = vec(Angled(rng.uniform(-kPi, kPi)));
      max_err = std::max(
          max_err, (double_angle_sphere(c, e1_2).coords() - square(c).coords()).norm());
    }
    CHECK(max_err < 1e-12);
  }

  SUBCASE("halving picks the hemisphere branch") {
    CHECK((halve_angle_sphere(e1_3, e1_3).coords() - e1_3.coords()).norm() == 0.0);

    // theta = pi on the circle halves to phi = pi/2 with the u = +1 branch.
    const UnitVectord e1_2 = UnitVectord::axis(2);
    const UnitVectord h = halve_angle_sphere(unit2(-1.0, 0.0), e1_2);
    CHECK(h[0] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(h[1] == doctest::Approx(1.0));

    CHECK_THROWS_AS(halve_angle_sphere(-e1_3, e1_3), std::domain_error);

    Rng rng(28);
    double max_err = 0.0;
    for (int i = 0; i < 400; ++i) {
      const int q = 2 + static_cast<int>(i % 4);
      const UnitVectord pole = UnitVectord::normalized(rng.normal_vector(q));
      const UnitVectord y = UnitVectord::normalized(rng.normal_vector(q));
      const UnitVectord half = halve_angle_sphere(y, pole);
      CHECK(half.dot(pole) >= -1e-12);
      max_err =
          std::max(max_err, (double_angle_sphere(half, pole).coords() - y.coords()).norm());
      // The other preimage is the antipode and doubles to the same point.
      max_err =
          std::max(max_err, (double_angle_sphere(-half, pole).coords() - y.coords()).norm());
    }
    CHECK(max_err < 1e-12);
  }
}

TEST_CASE("fundamental Mobius identities") {
  Rng rng(29);
  SUBCASE("diagonal identity") {
    double max_err = 0.0;
    for (int i = 0; i < 2000; ++i) {
      const UnitVectord x = vec(Angled(rng.uniform(-kPi, kPi)));
      const double b = std::exp(rng.uniform(std::log(0.05), std::log(20.0)));
      const double l = (1.0 - b) / (1.0 + b);
      max_err = std::max(max_err, (mobius_diag(square(x), l).coords() -
                                   square(rescale_linear_diag(x, b)).coords())
                                      .norm());
    }
    CHECK(max_err < 1e-12);
  }

  SUBCASE("general identity") {
    double max_err = 0.0;
    for (int i = 0; i < 500; ++i) {
      Eigen::Matrix2d m;
      do {
        m << rng.normal(), rng.normal(), rng.normal(), rng.normal();
        if (m.determinant() < 0) m.col(1) *= -1.0;
      } while (m.determinant() < 0.1);
      const Svd2d f = svd2(m);
      const double l = (1.0 - f.b) / (1.0 + f.b);
      const MobiusParamsd p(l, f.beta * 2.0, f.alpha * 2.0);
      const UnitVectord x = vec(Angled(rng.uniform(-kPi, kPi)));
      max_err = std::max(max_err, (mobius_general(square(x), p).coords() -
                                   square(rescale_linear_general(x, GeneralLinear2d(m))).coords())
                                      .norm());
    }
    CHECK(max_err < 1e-11);
  }
}
