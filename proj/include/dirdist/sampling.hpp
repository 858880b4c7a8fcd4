#pragma once

#include <Eigen/Core>

#include "dirdist/angle.hpp"
#include "dirdist/distributions.hpp"
#include "dirdist/rng.hpp"
#include "dirdist/unit_vector.hpp"

namespace dirdist {

/// Uniform draw on S_{q-1}: a normalized standard Gaussian vector.
UnitVectord sample_uniform(int q, Rng& rng);

/// ACG draw: z ~ N(0, Omega^{-1}) normalized to the sphere.
UnitVectord sample_acg(const AcgParams& p, Rng& rng);

/// Multivariate t draw via the Gaussian-over-chi construction.
Eigen::VectorXd sample_mvt(const MvtParams& p, Rng& rng);

/// The three constructions of a wrapped Cauchy draw. All produce WC(lambda,
/// mu) in law; kWrapping additionally requires lambda != 0.
enum class WcSampleMethod {
  kDoubling,       // double the angle of a circle ACG draw
  kStereographic,  // inverse stereographic image of a linear Cauchy draw
  kWrapping,       // linear Cauchy with scale -log(lambda), reduced mod 2 pi
};

Angled sample_wc(const WcParams& p, WcSampleMethod method, Rng& rng);

/// Spherical Cauchy draw: a multivariate t draw in stereographic coordinates
/// mapped back to the sphere. The t parameters already carry the modal
/// direction, so no extra rotation is applied.
UnitVectord sample_sc(const ScParams& p, Rng& rng);

}  // namespace dirdist
