#include "morph4d/transition.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace morph4d {

namespace {

double mean_landmark_distance(const LandmarkFrame& a, const LandmarkFrame& b) {
    if (a.rows() != b.rows()) {
        throw std::invalid_argument("landmark count mismatch");
    }
    return (a - b).rowwise().norm().mean();
}

}  // namespace

std::pair<LandmarkSequence, LandmarkSequence> split_at_peak(const LandmarkSequence& seq,
                                                            std::optional<int> peak_index) {
    seq.validate();
    const int T = seq.frame_count();
    if (T < 3) {
        throw std::invalid_argument("sequence too short to split: need at least 3 frames");
    }

    int peak;
    if (peak_index) {
        peak = *peak_index;
        if (peak < 0 || peak >= T) {
            throw std::invalid_argument("peak index out of range");
        }
    } else {
        peak = 0;
        double best = -1.0;
        for (int t = 0; t < T; ++t) {
            const double d = mean_landmark_distance(seq.frames[t], seq.frames.front());
            if (d > best) {
                best = d;
                peak = t;
            }
        }
        if (peak == 0 || peak == T - 1) {
            throw std::invalid_argument("no interior peak");
        }
    }

    LandmarkSequence onset, offset;
    onset.dt = seq.dt;
    offset.dt = seq.dt;
    onset.frames.assign(seq.frames.begin(), seq.frames.begin() + peak + 1);
    offset.frames.assign(seq.frames.begin() + peak, seq.frames.end());
    return {std::move(onset), std::move(offset)};
}

LabeledSequence synth_peak_transition(const LabeledMotion& m1, const LabeledMotion& m2,
                                      int n_steps, double init_tolerance) {
    if (n_steps < 2) {
        throw std::invalid_argument("need at least 2 interpolation steps");
    }
    if (m1.init.rows() != m2.init.rows() ||
        (m1.init - m2.init).cwiseAbs().maxCoeff() > init_tolerance) {
        throw std::invalid_argument("incoherent initial configuration");
    }

    LabeledSequence out;
    out.start = m1.end;
    out.end = m2.end;
    out.sequence.dt = m1.motion.dt;
    out.sequence.frames.reserve(n_steps);

    for (int i = 0; i < n_steps; ++i) {
        const double tau = static_cast<double>(i) / static_cast<double>(n_steps - 1);
        Srvf q = geodesic_interpolate(m1.motion, m2.motion, tau);
        // The two motions may carry different curve scales; blend them linearly
        // so the endpoint decodes hit the exact original peaks.
        q.scale = (1.0 - tau) * m1.motion.scale + tau * m2.motion.scale;
        const LandmarkSequence decoded = srvf_decode(q.denormalized(), m1.init);
        out.sequence.frames.push_back(decoded.frames.back());
    }
    return out;
}

ExpressionPrototype expression_prototype(
    const std::vector<std::pair<std::string, LandmarkFrame>>& peaks,
    const ExpressionLabel& label) {
    if (peaks.empty()) {
        throw std::invalid_argument("no peak frames given");
    }
    const auto k = peaks.front().second.rows();
    LandmarkFrame mean = LandmarkFrame::Zero(k, 3);
    for (const auto& [subject, frame] : peaks) {
        if (frame.rows() != k) {
            throw std::invalid_argument("mixed landmark counts across subjects");
        }
        mean += frame;
    }
    mean /= static_cast<double>(peaks.size());
    return {label, std::move(mean)};
}

std::vector<LabeledSequence> select_by_prototype(const std::vector<LabeledSequence>& transitions,
                                                 const std::vector<ExpressionPrototype>& prototypes,
                                                 int top_k) {
    if (top_k < 1) {
        throw std::invalid_argument("top_k must be positive");
    }
    auto prototype_for = [&](const ExpressionLabel& label) -> const LandmarkFrame& {
        for (const auto& p : prototypes) {
            if (p.label.id == label.id) {
                return p.frame;
            }
        }
        throw std::invalid_argument("missing prototype for label '" + label.name + "'");
    };

    // Group candidate indices per (start, end) label pair, score, keep top_k.
    std::map<std::pair<int, int>, std::vector<std::pair<double, size_t>>> scored;
    for (size_t i = 0; i < transitions.size(); ++i) {
        const auto& t = transitions[i];
        const double score = mean_landmark_distance(t.sequence.frames.front(), prototype_for(t.start)) +
                             mean_landmark_distance(t.sequence.frames.back(), prototype_for(t.end));
        scored[{t.start.id, t.end.id}].emplace_back(score, i);
    }

    std::vector<size_t> kept;
    for (auto& [pair, candidates] : scored) {
        std::stable_sort(candidates.begin(), candidates.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        const size_t n = std::min<size_t>(top_k, candidates.size());
        for (size_t i = 0; i < n; ++i) {
            kept.push_back(candidates[i].second);
        }
    }
    std::sort(kept.begin(), kept.end());

    std::vector<LabeledSequence> out;
    out.reserve(kept.size());
    for (size_t i : kept) {
        out.push_back(transitions[i]);
    }
    return out;
}

LandmarkSequence compose_transitions(const std::vector<LabeledMotion>& motions,
                                     const LandmarkFrame& init) {
    if (motions.empty()) {
        throw std::invalid_argument("no motions to compose");
    }
    for (size_t i = 0; i + 1 < motions.size(); ++i) {
        if (motions[i].end.id != motions[i + 1].start.id) {
            throw std::invalid_argument("discontinuous transition chain: '" + motions[i].end.name +
                                        "' != '" + motions[i + 1].start.name + "'");
        }
    }

    LandmarkSequence out;
    out.dt = motions.front().motion.dt;
    LandmarkFrame current = init;
    for (size_t i = 0; i < motions.size(); ++i) {
        const LandmarkSequence decoded = srvf_decode(motions[i].motion.denormalized(), current);
        // Junction frame is duplicated by construction; keep only the first copy.
        const size_t begin = (i == 0) ? 0 : 1;
        for (size_t t = begin; t < decoded.frames.size(); ++t) {
            out.frames.push_back(decoded.frames[t]);
        }
        current = decoded.frames.back();
    }
    return out;
}

LandmarkSequence transfer_motion(const LandmarkSequence& source, const LandmarkFrame& target_init) {
    if (source.landmark_count() != target_init.rows()) {
        throw std::invalid_argument("landmark count mismatch between source and target");
    }
    const Srvf q = srvf_encode(source);
    return srvf_decode(q.denormalized(), target_init);
}

}  // namespace morph4d
