#pragma once

#include <Eigen/Core>

#include <vector>

namespace morph4d {

/// One frame of k 3D landmarks, row per landmark (model units, mm for scan data).
using LandmarkFrame = Eigen::Matrix<double, Eigen::Dynamic, 3>;

/// A landmark trajectory: T frames of k landmarks sampled at spacing dt.
/// With the default dt = 1/(T-1) the parameter domain is [0,1].
struct LandmarkSequence {
    std::vector<LandmarkFrame> frames;
    double dt = 0.0;

    LandmarkSequence() = default;
    LandmarkSequence(std::vector<LandmarkFrame> frames, double dt = -1.0);

    int frame_count() const { return static_cast<int>(frames.size()); }
    int landmark_count() const { return frames.empty() ? 0 : static_cast<int>(frames.front().rows()); }

    /// Throws std::invalid_argument on T < 2, inconsistent k, or non-finite coordinates.
    void validate() const;
};

/// Translates every frame so its centroid sits at the origin, then rescales the
/// whole sequence by a single factor so the first frame has unit Frobenius norm.
/// Throws if any frame is degenerate (all points coincident).
LandmarkSequence center_normalize(const LandmarkSequence& seq);

}  // namespace morph4d
