#pragma once

#include <Eigen/QR>

#include <cmath>
#include <numbers>
#include <random>

#include "morph4d/deform.hpp"
#include "morph4d/sphere.hpp"
#include "morph4d/srvf.hpp"

namespace morph4d::testing {

/// Smooth synthetic trajectory with a drift term so no interval has zero velocity.
inline LandmarkSequence random_smooth_sequence(std::mt19937& rng, int k, int T) {
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    std::uniform_real_distribution<double> freq(0.5, 3.0);

    LandmarkSequence seq;
    seq.dt = 1.0 / (T - 1);
    std::vector<std::array<double, 4>> params(k * 3);
    for (auto& p : params) {
        p = {amp(rng), freq(rng), amp(rng) * std::numbers::pi, 0.5 + 0.5 * std::abs(amp(rng))};
    }
    for (int t = 0; t < T; ++t) {
        const double s = t * seq.dt;
        LandmarkFrame frame(k, 3);
        for (int i = 0; i < k; ++i) {
            for (int c = 0; c < 3; ++c) {
                const auto& p = params[i * 3 + c];
                frame(i, c) = p[0] * std::sin(p[1] * s + p[2]) + p[3] * s;
            }
        }
        seq.frames.push_back(std::move(frame));
    }
    return seq;
}

/// Uniform random point on the unit sphere of SRVFs.
inline Srvf random_unit_srvf(std::mt19937& rng, int samples, int k, double dt = -1.0) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Srvf q;
    q.dt = dt > 0.0 ? dt : 1.0 / samples;
    q.samples.resize(samples, 3 * k);
    for (int i = 0; i < samples; ++i) {
        for (int c = 0; c < 3 * k; ++c) {
            q.samples(i, c) = gauss(rng);
        }
    }
    q.samples /= q.norm();
    return q;
}

/// Random tangent at p with the requested norm.
inline TangentVector random_tangent(std::mt19937& rng, const Srvf& p, double norm) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    TangentVector v;
    v.dt = p.dt;
    v.basepoint = p;
    v.samples.resize(p.samples.rows(), p.samples.cols());
    for (Eigen::Index i = 0; i < v.samples.rows(); ++i) {
        for (Eigen::Index c = 0; c < v.samples.cols(); ++c) {
            v.samples(i, c) = gauss(rng);
        }
    }
    v.samples -= srvf_inner(v.samples, p.samples, p.dt) * p.samples;
    v.samples *= norm / v.norm();
    return v;
}

/// Random mesh over the unit cube with the first `k` vertices as landmarks.
inline Mesh random_mesh(std::mt19937& rng, int n_vertices, int k) {
    std::uniform_real_distribution<double> coord(-10.0, 10.0);
    Mesh mesh;
    mesh.vertices.resize(n_vertices, 3);
    for (int i = 0; i < n_vertices; ++i) {
        for (int c = 0; c < 3; ++c) {
            mesh.vertices(i, c) = coord(rng);
        }
    }
    auto topo = std::make_shared<MeshTopology>();
    topo->vertex_count = n_vertices;
    for (int i = 0; i + 2 < n_vertices; i += 3) {
        topo->faces.push_back({i, i + 1, i + 2});
    }
    for (int i = 0; i < k; ++i) {
        topo->landmark_indices.push_back(i);
    }
    mesh.topology = std::move(topo);
    return mesh;
}

/// Random orthonormal deformation model (QR of a Gaussian matrix).
inline DeformationModel random_orthonormal_model(std::mt19937& rng, int n_vertices, int k, int m,
                                                 bool zero_mean = true) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd raw(3 * n_vertices, m);
    for (Eigen::Index i = 0; i < raw.rows(); ++i) {
        for (Eigen::Index c = 0; c < raw.cols(); ++c) {
            raw(i, c) = gauss(rng);
        }
    }
    DeformationModel model;
    model.basis = Eigen::HouseholderQR<Eigen::MatrixXd>(raw)
                      .householderQ() *
                  Eigen::MatrixXd::Identity(3 * n_vertices, m);
    model.mean = Eigen::VectorXd::Zero(3 * n_vertices);
    if (!zero_mean) {
        for (Eigen::Index i = 0; i < model.mean.size(); ++i) {
            model.mean(i) = 0.1 * gauss(rng);
        }
    }
    for (int i = 0; i < k; ++i) {
        model.landmark_indices.push_back(i);
    }
    model.landmark_rows.resize(3 * k, m);
    model.mean_landmarks.resize(3 * k);
    for (int j = 0; j < k; ++j) {
        model.landmark_rows.middleRows<3>(3 * j) = model.basis.middleRows<3>(3 * j);
        model.mean_landmarks.segment<3>(3 * j) = model.mean.segment<3>(3 * j);
    }
    model.explained_variance_ratio = Eigen::VectorXd::Zero(m);
    return model;
}

}  // namespace morph4d::testing
