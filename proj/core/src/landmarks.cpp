#include "morph4d/landmarks.hpp"

#include <stdexcept>

namespace morph4d {

LandmarkSequence::LandmarkSequence(std::vector<LandmarkFrame> frames_in, double dt_in)
    : frames(std::move(frames_in)), dt(dt_in) {
    if (dt <= 0.0) {
        dt = frames.size() > 1 ? 1.0 / static_cast<double>(frames.size() - 1) : 1.0;
    }
    validate();
}

void LandmarkSequence::validate() const {
    if (frames.size() < 2) {
        throw std::invalid_argument("sequence too short: need at least 2 frames");
    }
    if (dt <= 0.0) {
        throw std::invalid_argument("sample spacing dt must be positive");
    }
    const auto k = frames.front().rows();
    if (k < 1) {
        throw std::invalid_argument("frames must contain at least one landmark");
    }
    for (const auto& f : frames) {
        if (f.rows() != k) {
            throw std::invalid_argument("inconsistent landmark count across frames");
        }
        if (!f.allFinite()) {
            throw std::invalid_argument("non-finite landmark coordinate");
        }
    }
}

LandmarkSequence center_normalize(const LandmarkSequence& seq) {
    // Accepts single-frame inputs too; the T >= 2 invariant only matters for encoding.
    if (seq.frames.empty()) {
        throw std::invalid_argument("empty sequence");
    }
    LandmarkSequence out = seq;
    for (auto& frame : out.frames) {
        const Eigen::RowVector3d centroid = frame.colwise().mean();
        frame.rowwise() -= centroid;
    }
    const double first_norm = out.frames.front().norm();
    if (first_norm == 0.0) {
        throw std::invalid_argument("degenerate frame: all points coincident");
    }
    // One global factor so motion shape is preserved.
    for (auto& frame : out.frames) {
        frame /= first_norm;
    }
    return out;
}

}  // namespace morph4d
