#pragma once

#include <vector>

#include "morph4d/deform.hpp"
#include "morph4d/landmarks.hpp"

namespace morph4d {

struct ErrorSummary {
    double mean = 0.0;  // mm
    double std = 0.0;   // mm
    std::vector<double> per_item;  // optional retention (per vertex / frame / sample)
};

struct CumulativeCurve {
    std::vector<double> thresholds;  // ascending, mm
    std::vector<double> fractions;   // nondecreasing, in [0,1]
};

/// Mean and population std of per-vertex Euclidean distances between two
/// meshes in correspondence; per-vertex values retained in per_item.
ErrorSummary per_vertex_error(const Mesh& a, const Mesh& b);

/// Fraction of vertices with error <= each threshold.
CumulativeCurve cumulative_error_curve(const std::vector<double>& errors,
                                       std::vector<double> thresholds);

/// (1/N) sum_i ||Dg_i - Dgt_i||_1 over vertices.
double displacement_l1(const DisplacementField& generated, const DisplacementField& ground_truth);

/// (1/N) sum_i w_i ||p^g_i - p^gt_i||_1 over vertices.
double weighted_l1(const Mesh& generated, const Mesh& ground_truth, const VertexWeights& w);

/// beta1 * l_dr + beta2 * l_pr.
double s2d_total_loss(double l_dr, double l_pr, double beta1 = 1.0, double beta2 = 0.1);

/// Specificity of generated samples against one reference transition: per
/// sample, the mean over frames and landmarks of the Euclidean distance to the
/// reference's corresponding landmark; summarized mean +/- std over samples.
ErrorSummary specificity(const std::vector<LandmarkSequence>& generated,
                         const LandmarkSequence& reference);

/// Same distance averaged per frame over samples and landmarks.
std::vector<double> per_frame_specificity(const std::vector<LandmarkSequence>& generated,
                                          const LandmarkSequence& reference);

/// Nearest-of-many variant: per sample, the minimum specificity distance over
/// a set of references.
ErrorSummary specificity_nearest(const std::vector<LandmarkSequence>& generated,
                                 const std::vector<LandmarkSequence>& references);

/// Per generated frame t, the minimum mean per-vertex error against ground
/// truth frames within a window of the given width centered on t (clamped at
/// the ends); summarized over frames. Even widths are widened to the next odd.
ErrorSummary sliding_window_error(const std::vector<Mesh>& generated,
                                  const std::vector<Mesh>& ground_truth, int window);

}  // namespace morph4d
