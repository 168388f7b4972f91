#include "morph4d/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace morph4d {

namespace {

void check_same_shape(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("SRVF shape mismatch");
    }
}

}  // namespace

double geodesic_distance(const Srvf& q1, const Srvf& q2) {
    check_same_shape(q1.samples, q2.samples);
    const double ip = std::clamp(srvf_inner(q1.samples, q2.samples, q1.dt), -1.0, 1.0);
    return std::acos(ip);
}

Srvf exp_map(const Srvf& p, const TangentVector& v, double eps) {
    check_same_shape(p.samples, v.samples);
    const double len = v.norm();
    if (len < eps) {
        return p;
    }
    Srvf out = p;
    out.samples = std::cos(len) * p.samples + (std::sin(len) / len) * v.samples;
    return out;
}

TangentVector log_map(const Srvf& p, const Srvf& q, double eps) {
    check_same_shape(p.samples, q.samples);
    const double theta = geodesic_distance(p, q);

    TangentVector v;
    v.dt = p.dt;
    v.basepoint = p;
    if (theta < eps) {
        v.samples = Eigen::MatrixXd::Zero(p.samples.rows(), p.samples.cols());
        return v;
    }
    if (theta > std::numbers::pi - eps) {
        throw std::invalid_argument("antipodal point: logarithm map undefined");
    }
    v.samples = (theta / std::sin(theta)) * (q.samples - std::cos(theta) * p.samples);
    return v;
}

Srvf geodesic_interpolate(const Srvf& q1, const Srvf& q2, double tau, double eps) {
    check_same_shape(q1.samples, q2.samples);
    if (tau < 0.0 || tau > 1.0) {
        throw std::invalid_argument("interpolation parameter must lie in [0,1]");
    }
    const double theta = geodesic_distance(q1, q2);
    if (theta < eps) {
        return q1;
    }
    if (theta > std::numbers::pi - eps) {
        throw std::invalid_argument("antipodal points: geodesic not unique");
    }
    Srvf out = q1;
    out.samples = (std::sin((1.0 - tau) * theta) * q1.samples + std::sin(tau * theta) * q2.samples) /
                  std::sin(theta);
    return out;
}

Srvf karcher_mean(const std::vector<Srvf>& qs, double tol, int max_iter) {
    if (qs.empty()) {
        throw std::invalid_argument("karcher_mean of an empty list");
    }
    Srvf mean = qs.front();
    for (int iter = 0; iter < max_iter; ++iter) {
        Eigen::MatrixXd tangent_sum =
            Eigen::MatrixXd::Zero(mean.samples.rows(), mean.samples.cols());
        for (const auto& q : qs) {
            tangent_sum += log_map(mean, q).samples;
        }
        TangentVector step;
        step.samples = tangent_sum / static_cast<double>(qs.size());
        step.dt = mean.dt;
        step.basepoint = mean;
        if (step.norm() < tol) {
            return mean;
        }
        mean = exp_map(mean, step);
    }
    throw KarcherNonConvergence(std::move(mean));
}

}  // namespace morph4d
