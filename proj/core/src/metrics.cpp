#include "morph4d/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace morph4d {

namespace {

ErrorSummary summarize(std::vector<double> values) {
    ErrorSummary s;
    if (values.empty()) {
        return s;
    }
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    s.mean = sum / static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) {
        var += (v - s.mean) * (v - s.mean);
    }
    s.std = std::sqrt(var / static_cast<double>(values.size()));
    s.per_item = std::move(values);
    return s;
}

void check_compatible(const std::vector<LandmarkSequence>& generated,
                      const LandmarkSequence& reference) {
    if (generated.empty()) {
        throw std::invalid_argument("no generated samples");
    }
    for (const auto& g : generated) {
        if (g.frame_count() != reference.frame_count()) {
            throw std::invalid_argument("sequence length mismatch with reference");
        }
        if (g.landmark_count() != reference.landmark_count()) {
            throw std::invalid_argument("landmark count mismatch with reference");
        }
    }
}

double sample_distance(const LandmarkSequence& g, const LandmarkSequence& ref) {
    double sum = 0.0;
    for (int t = 0; t < g.frame_count(); ++t) {
        sum += (g.frames[t] - ref.frames[t]).rowwise().norm().mean();
    }
    return sum / static_cast<double>(g.frame_count());
}

}  // namespace

ErrorSummary per_vertex_error(const Mesh& a, const Mesh& b) {
    if (a.vertex_count() != b.vertex_count()) {
        throw std::invalid_argument("topology mismatch");
    }
    std::vector<double> errors(a.vertex_count());
    for (int i = 0; i < a.vertex_count(); ++i) {
        errors[i] = (a.vertices.row(i) - b.vertices.row(i)).norm();
    }
    return summarize(std::move(errors));
}

CumulativeCurve cumulative_error_curve(const std::vector<double>& errors,
                                       std::vector<double> thresholds) {
    if (errors.empty()) {
        throw std::invalid_argument("no errors given");
    }
    std::sort(thresholds.begin(), thresholds.end());
    CumulativeCurve curve;
    curve.thresholds = std::move(thresholds);
    curve.fractions.reserve(curve.thresholds.size());
    for (double th : curve.thresholds) {
        const auto count = std::count_if(errors.begin(), errors.end(),
                                         [th](double e) { return e <= th; });
        curve.fractions.push_back(static_cast<double>(count) /
                                  static_cast<double>(errors.size()));
    }
    return curve;
}

double displacement_l1(const DisplacementField& generated, const DisplacementField& ground_truth) {
    if (generated.values.rows() != ground_truth.values.rows()) {
        throw std::invalid_argument("displacement field size mismatch");
    }
    return (generated.values - ground_truth.values).cwiseAbs().sum() /
           static_cast<double>(generated.values.rows());
}

double weighted_l1(const Mesh& generated, const Mesh& ground_truth, const VertexWeights& w) {
    if (generated.vertex_count() != ground_truth.vertex_count() ||
        w.weights.size() != generated.vertex_count()) {
        throw std::invalid_argument("mesh/weight size mismatch");
    }
    double sum = 0.0;
    for (int i = 0; i < generated.vertex_count(); ++i) {
        sum += w.weights(i) *
               (generated.vertices.row(i) - ground_truth.vertices.row(i)).cwiseAbs().sum();
    }
    return sum / static_cast<double>(generated.vertex_count());
}

double s2d_total_loss(double l_dr, double l_pr, double beta1, double beta2) {
    return beta1 * l_dr + beta2 * l_pr;
}

ErrorSummary specificity(const std::vector<LandmarkSequence>& generated,
                         const LandmarkSequence& reference) {
    check_compatible(generated, reference);
    std::vector<double> per_sample;
    per_sample.reserve(generated.size());
    for (const auto& g : generated) {
        per_sample.push_back(sample_distance(g, reference));
    }
    return summarize(std::move(per_sample));
}

std::vector<double> per_frame_specificity(const std::vector<LandmarkSequence>& generated,
                                          const LandmarkSequence& reference) {
    check_compatible(generated, reference);
    std::vector<double> curve(reference.frame_count(), 0.0);
    for (const auto& g : generated) {
        for (int t = 0; t < g.frame_count(); ++t) {
            curve[t] += (g.frames[t] - reference.frames[t]).rowwise().norm().mean();
        }
    }
    for (double& v : curve) {
        v /= static_cast<double>(generated.size());
    }
    return curve;
}

ErrorSummary specificity_nearest(const std::vector<LandmarkSequence>& generated,
                                 const std::vector<LandmarkSequence>& references) {
    if (references.empty()) {
        throw std::invalid_argument("no reference samples");
    }
    for (const auto& ref : references) {
        check_compatible(generated, ref);
    }
    std::vector<double> per_sample;
    per_sample.reserve(generated.size());
    for (const auto& g : generated) {
        double best = sample_distance(g, references.front());
        for (size_t r = 1; r < references.size(); ++r) {
            best = std::min(best, sample_distance(g, references[r]));
        }
        per_sample.push_back(best);
    }
    return summarize(std::move(per_sample));
}

ErrorSummary sliding_window_error(const std::vector<Mesh>& generated,
                                  const std::vector<Mesh>& ground_truth, int window) {
    if (generated.empty() || ground_truth.empty()) {
        throw std::invalid_argument("empty mesh sequence");
    }
    if (window < 1) {
        throw std::invalid_argument("window must be positive");
    }
    const int half = window / 2;  // even widths widen to the next odd
    const int n_gt = static_cast<int>(ground_truth.size());

    std::vector<double> per_frame;
    per_frame.reserve(generated.size());
    for (int t = 0; t < static_cast<int>(generated.size()); ++t) {
        const int lo = std::max(0, t - half);
        const int hi = std::min(n_gt - 1, t + half);
        if (lo > hi) {
            // Generated frame falls entirely past the ground truth; compare to the last frame.
            per_frame.push_back(per_vertex_error(generated[t], ground_truth.back()).mean);
            continue;
        }
        double best = std::numeric_limits<double>::infinity();
        for (int s = lo; s <= hi; ++s) {
            best = std::min(best, per_vertex_error(generated[t], ground_truth[s]).mean);
        }
        per_frame.push_back(best);
    }
    return summarize(std::move(per_frame));
}

}  // namespace morph4d
