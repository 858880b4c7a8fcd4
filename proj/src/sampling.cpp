#include "dirdist/sampling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dirdist/geom.hpp"
#include "dirdist/projection.hpp"

namespace dirdist {

UnitVectord sample_uniform(int q, Rng& rng) {
  if (q < 2) {
    throw std::invalid_argument("sample_uniform: dimension must be at least 2");
  }
  for (;;) {
    const Eigen::VectorXd g = rng.normal_vector(q);
    const double n = g.norm();
    if (n > 1e-12) return UnitVectord(g / n);
  }
}

UnitVectord sample_acg(const AcgParams& p, Rng& rng) {
  const Eigen::VectorXd g = rng.normal_vector(p.dim());
  // With Omega = L L^T, solving L^T z = g gives z ~ N(0, Omega^{-1}).
  const Eigen::VectorXd z = p.omega().llt().matrixU().solve(g);
  const double n = z.norm();
  if (!(n > 1e-300)) {
    return sample_acg(p, rng);  // essentially impossible; redraw
  }
  return UnitVectord(z / n);
}

Eigen::VectorXd sample_mvt(const MvtParams& p, Rng& rng) {
  const int dim = static_cast<int>(p.location.size());
  const Eigen::VectorXd z = rng.normal_vector(dim);
  const double chi2 = rng.chi_squared(p.kappa);
  const Eigen::MatrixXd l = p.scatter.llt().matrixL();
  return p.location + (l * z) * std::sqrt(p.kappa / chi2);
}

Angled sample_wc(const WcParams& p, WcSampleMethod method, Rng& rng) {
  // Negative concentration is the same family with the mode moved to mu + pi.
  const double lambda = std::abs(p.lambda);
  const double mu =
      p.lambda < 0.0 ? p.mu.value() + std::numbers::pi : p.mu.value();
  switch (method) {
    case WcSampleMethod::kDoubling: {
      const double b = (1.0 - lambda) / (1.0 + lambda);
      const UnitVectord x = sample_acg(AcgParams::circle(b), rng);
      return Angled(2.0 * arg(x).value() + mu);
    }
    case WcSampleMethod::kStereographic: {
      const double b = (1.0 - lambda) / (1.0 + lambda);
      const double z = rng.cauchy(b);
      const UnitVectord y = stereographic_inverse(TangentPointd(z));
      return Angled(arg(y).value() + mu);
    }
    case WcSampleMethod::kWrapping: {
      if (!(lambda > 0.0)) {
        throw std::invalid_argument("sample_wc: wrapping requires lambda != 0");
      }
      const double scale = -std::log(lambda);
      return Angled(rng.cauchy(scale) + mu);
    }
  }
  throw std::invalid_argument("sample_wc: unknown method");
}

UnitVectord sample_sc(const ScParams& p, Rng& rng) {
  const Eigen::VectorXd w = sample_mvt(sc_stereo_params(p), rng);
  return stereographic_inverse(TangentPointd(w));
}

}  // namespace dirdist
