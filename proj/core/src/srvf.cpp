#include "morph4d/srvf.hpp"

#include <cmath>
#include <stdexcept>

namespace morph4d {

double srvf_inner(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double dt) {
    return a.cwiseProduct(b).sum() * dt;
}

double Srvf::norm() const {
    return std::sqrt(srvf_inner(samples, samples, dt));
}

Srvf Srvf::denormalized() const {
    Srvf out = *this;
    out.samples *= scale;
    out.scale = 1.0;
    return out;
}

double TangentVector::norm() const {
    return std::sqrt(srvf_inner(samples, samples, dt));
}

Srvf srvf_encode(const LandmarkSequence& seq) {
    if (seq.frames.size() < 2) {
        throw std::invalid_argument("sequence too short: need at least 2 frames");
    }
    seq.validate();

    const int intervals = seq.frame_count() - 1;
    const int cols = seq.landmark_count() * 3;
    Srvf q;
    q.dt = seq.dt;
    q.samples.resize(intervals, cols);

    for (int i = 0; i < intervals; ++i) {
        Eigen::MatrixXd velocity = (seq.frames[i + 1] - seq.frames[i]) / seq.dt;
        Eigen::Map<Eigen::RowVectorXd> flat(velocity.data(), cols);
        const double speed = flat.norm();
        if (speed == 0.0) {
            q.samples.row(i).setZero();
        } else {
            q.samples.row(i) = flat / std::sqrt(speed);
        }
    }

    const double norm = q.norm();
    if (norm == 0.0) {
        throw std::invalid_argument("zero motion: sequence is constant");
    }
    q.samples /= norm;
    q.scale = norm;
    return q;
}

LandmarkSequence srvf_decode(const Srvf& q, const LandmarkFrame& init) {
    const int k = static_cast<int>(init.rows());
    if (q.samples.cols() != 3 * k) {
        throw std::invalid_argument("dimension mismatch between SRVF and initial frame");
    }
    if (q.dt <= 0.0) {
        throw std::invalid_argument("SRVF sample spacing must be positive");
    }

    LandmarkSequence out;
    out.dt = q.dt;
    out.frames.reserve(q.sample_count() + 1);
    out.frames.push_back(init);
    for (int i = 0; i < q.sample_count(); ++i) {
        const Eigen::RowVectorXd row = q.samples.row(i);
        const Eigen::RowVectorXd step = q.dt * row.norm() * row;
        LandmarkFrame next = out.frames.back();
        next += Eigen::Map<const LandmarkFrame>(step.data(), k, 3);
        out.frames.push_back(std::move(next));
    }
    return out;
}

}  // namespace morph4d
