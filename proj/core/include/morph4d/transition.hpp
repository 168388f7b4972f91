#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "morph4d/sphere.hpp"

namespace morph4d {

struct ExpressionLabel {
    int id = 0;
    std::string name;

    friend bool operator==(const ExpressionLabel& a, const ExpressionLabel& b) {
        return a.id == b.id && a.name == b.name;
    }
};

/// An SRVF motion with its start/end expression labels and the landmark
/// configuration alpha(0) needed to decode it.
struct LabeledMotion {
    Srvf motion;
    ExpressionLabel start;
    ExpressionLabel end;
    LandmarkFrame init;
};

/// Cross-subject average peak configuration for one expression.
struct ExpressionPrototype {
    ExpressionLabel label;
    LandmarkFrame frame;
};

/// A synthesized sequence together with its start/end labels.
struct LabeledSequence {
    LandmarkSequence sequence;
    ExpressionLabel start;
    ExpressionLabel end;
};

/// Splits a sequence into onset (0..peak) and offset (peak..end) halves, the
/// peak frame shared by both. Without an explicit index the peak is the frame
/// with maximum mean per-landmark distance from frame 0; throws "no interior
/// peak" when that falls on either end.
std::pair<LandmarkSequence, LandmarkSequence> split_at_peak(
    const LandmarkSequence& seq, std::optional<int> peak_index = std::nullopt);

/// Peak-to-peak transition between two onset motions sharing the same initial
/// (neutral) frame. Samples n_steps points on the geodesic between the two
/// SRVFs, decodes each from the shared init, and keeps the last frame of every
/// decoded sequence. The result starts at m1's peak and ends at m2's peak.
LabeledSequence synth_peak_transition(const LabeledMotion& m1, const LabeledMotion& m2,
                                      int n_steps = 30, double init_tolerance = 1e-6);

/// Coordinate-wise mean of peak frames across subjects.
ExpressionPrototype expression_prototype(
    const std::vector<std::pair<std::string, LandmarkFrame>>& peaks,
    const ExpressionLabel& label);

/// Keeps the top_k transitions per (start, end) label pair scoring lowest
/// mean per-landmark distance of first frame to the start prototype plus last
/// frame to the end prototype. Throws when a label has no prototype.
std::vector<LabeledSequence> select_by_prototype(
    const std::vector<LabeledSequence>& transitions,
    const std::vector<ExpressionPrototype>& prototypes, int top_k);

/// Decodes a chain of motions incrementally, each starting from the last frame
/// of the previous one, and concatenates them dropping the duplicated junction
/// frames. Throws "discontinuous transition chain" when labels do not chain.
LandmarkSequence compose_transitions(const std::vector<LabeledMotion>& motions,
                                     const LandmarkFrame& init);

/// Re-applies the motion of `source` to a different initial configuration.
LandmarkSequence transfer_motion(const LandmarkSequence& source,
                                 const LandmarkFrame& target_init);

}  // namespace morph4d
