#pragma once

#include <Eigen/Core>

#include "morph4d/landmarks.hpp"

namespace morph4d {

/// Square-root velocity representation of a landmark trajectory.
///
/// samples holds one flattened velocity sample per inter-frame interval
/// (M = T-1 rows, 3k columns). After encoding, the discrete squared norm
/// sum_i ||samples_i||^2 * dt equals 1 and the discarded positive scale is
/// kept in `scale` so the original trajectory can be recovered exactly.
struct Srvf {
    Eigen::MatrixXd samples;  // M x 3k
    double dt = 0.0;
    double scale = 1.0;

    int sample_count() const { return static_cast<int>(samples.rows()); }
    int landmark_count() const { return static_cast<int>(samples.cols()) / 3; }

    /// Discrete norm sqrt(sum_i ||samples_i||^2 * dt).
    double norm() const;

    /// Copy with samples multiplied by `scale` and scale reset to 1.
    Srvf denormalized() const;
};

/// Tangent vector at a reference point of the unit sphere of SRVFs.
struct TangentVector {
    Eigen::MatrixXd samples;  // M x 3k
    double dt = 0.0;
    Srvf basepoint;

    double norm() const;
};

/// Discrete inner product sum_i a_i . b_i * dt shared by all sphere geometry.
double srvf_inner(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double dt);

/// Forward-difference SRVF of a sequence, rescaled to unit discrete norm.
/// Zero-velocity intervals map to the zero sample. Throws on T < 2 and on
/// sequences with no motion at all (nothing to normalize).
Srvf srvf_encode(const LandmarkSequence& seq);

/// Inverse of srvf_encode: cumulative sum alpha_{i+1} = alpha_i + dt*||q_i||*q_i
/// starting from `init`. Exact mutual inverse of the encoder up to the global
/// scale stored in q.scale (decode q.denormalized() to restore it).
LandmarkSequence srvf_decode(const Srvf& q, const LandmarkFrame& init);

}  // namespace morph4d
