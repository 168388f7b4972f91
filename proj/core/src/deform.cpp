#include "morph4d/deform.hpp"

#include <Eigen/Dense>

#include <limits>
#include <stdexcept>
#include <unordered_set>

namespace morph4d {

namespace {

// Vertex-major flattening: vertex i occupies entries 3i..3i+2.
Eigen::VectorXd flatten(const Eigen::Matrix<double, Eigen::Dynamic, 3>& values) {
    Eigen::VectorXd out(values.rows() * 3);
    for (Eigen::Index i = 0; i < values.rows(); ++i) {
        out.segment<3>(3 * i) = values.row(i).transpose();
    }
    return out;
}

Eigen::Matrix<double, Eigen::Dynamic, 3> unflatten(const Eigen::VectorXd& v) {
    if (v.size() % 3 != 0) {
        throw std::invalid_argument("flattened vector length not divisible by 3");
    }
    Eigen::Matrix<double, Eigen::Dynamic, 3> out(v.size() / 3, 3);
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
        out.row(i) = v.segment<3>(3 * i).transpose();
    }
    return out;
}

void check_shared_topology(const Mesh& a, const Mesh& b) {
    if (a.vertex_count() != b.vertex_count()) {
        throw std::invalid_argument("topology mismatch: different vertex counts");
    }
}

}  // namespace

void MeshTopology::validate() const {
    if (vertex_count < 1) {
        throw std::invalid_argument("topology needs at least one vertex");
    }
    for (const auto& f : faces) {
        for (int idx : f) {
            if (idx < 0 || idx >= vertex_count) {
                throw std::invalid_argument("face index out of range");
            }
        }
    }
    std::unordered_set<int> seen;
    for (int idx : landmark_indices) {
        if (idx < 0 || idx >= vertex_count) {
            throw std::invalid_argument("landmark index out of range");
        }
        if (!seen.insert(idx).second) {
            throw std::invalid_argument("duplicate landmark index");
        }
    }
}

void DeformationModel::verify_consistency(double tol) const {
    if (landmark_rows.rows() != 3 * landmark_count() || landmark_rows.cols() != mode_count() ||
        mean_landmarks.size() != 3 * landmark_count()) {
        throw std::invalid_argument("model landmark restriction has wrong shape");
    }
    for (int j = 0; j < landmark_count(); ++j) {
        const int v = landmark_indices[j];
        if (v < 0 || v >= vertex_count()) {
            throw std::invalid_argument("model landmark index out of range");
        }
        for (int c = 0; c < 3; ++c) {
            if ((landmark_rows.row(3 * j + c) - basis.row(3 * v + c)).cwiseAbs().maxCoeff() > tol ||
                std::abs(mean_landmarks(3 * j + c) - mean(3 * v + c)) > tol) {
                throw std::invalid_argument("landmark_rows inconsistent with basis row selection");
            }
        }
    }
}

LandmarkFrame extract_landmarks(const Mesh& mesh) {
    if (!mesh.topology) {
        throw std::invalid_argument("mesh has no topology");
    }
    const auto& idx = mesh.topology->landmark_indices;
    LandmarkFrame out(idx.size(), 3);
    for (size_t j = 0; j < idx.size(); ++j) {
        out.row(j) = mesh.vertices.row(idx[j]);
    }
    return out;
}

std::vector<std::pair<DisplacementField, SparseDisplacement>> build_displacement_dataset(
    const std::vector<std::pair<Mesh, Mesh>>& pairs) {
    std::vector<std::pair<DisplacementField, SparseDisplacement>> out;
    out.reserve(pairs.size());
    for (const auto& [neutral, expressive] : pairs) {
        check_shared_topology(neutral, expressive);
        DisplacementField dense{expressive.vertices - neutral.vertices};
        const auto& idx = neutral.topology->landmark_indices;
        SparseDisplacement sparse;
        sparse.values.resize(idx.size(), 3);
        for (size_t j = 0; j < idx.size(); ++j) {
            sparse.values.row(j) = dense.values.row(idx[j]);
        }
        out.emplace_back(std::move(dense), std::move(sparse));
    }
    return out;
}

DeformationModel train_pca(const std::vector<DisplacementField>& displacements,
                           const std::vector<int>& landmark_indices, int m) {
    if (displacements.empty()) {
        throw std::invalid_argument("no training displacements");
    }
    const Eigen::Index n = static_cast<Eigen::Index>(displacements.size());
    const Eigen::Index dim = displacements.front().values.rows() * 3;
    if (m < 1 || m > std::min<Eigen::Index>(n, dim)) {
        throw std::invalid_argument("component count out of range for the training set");
    }

    Eigen::MatrixXd data(n, dim);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (displacements[i].values.rows() * 3 != dim) {
            throw std::invalid_argument("topology mismatch in training displacements");
        }
        data.row(i) = flatten(displacements[i].values).transpose();
    }

    DeformationModel model;
    model.mean = data.colwise().mean().transpose();
    data.rowwise() -= model.mean.transpose();

    Eigen::BDCSVD<Eigen::MatrixXd> svd(data, Eigen::ComputeThinV);
    model.basis = svd.matrixV().leftCols(m);

    const Eigen::VectorXd sv = svd.singularValues();
    const double total = sv.squaredNorm();
    model.explained_variance_ratio =
        total > 0.0 ? Eigen::VectorXd(sv.head(m).array().square() / total)
                    : Eigen::VectorXd::Zero(m);

    model.landmark_indices = landmark_indices;
    const int N = static_cast<int>(dim) / 3;
    model.landmark_rows.resize(3 * landmark_indices.size(), m);
    model.mean_landmarks.resize(3 * landmark_indices.size());
    for (size_t j = 0; j < landmark_indices.size(); ++j) {
        const int v = landmark_indices[j];
        if (v < 0 || v >= N) {
            throw std::invalid_argument("landmark index out of range for training meshes");
        }
        model.landmark_rows.middleRows<3>(3 * j) = model.basis.middleRows<3>(3 * v);
        model.mean_landmarks.segment<3>(3 * j) = model.mean.segment<3>(3 * v);
    }
    return model;
}

Eigen::VectorXd fit_coefficients(const DeformationModel& model, const SparseDisplacement& d_target,
                                 double ridge) {
    if (d_target.values.rows() != model.landmark_count()) {
        throw std::invalid_argument("target landmark count does not match the model");
    }
    if (ridge < 0.0) {
        throw std::invalid_argument("ridge must be nonnegative");
    }
    const Eigen::MatrixXd& A = model.landmark_rows;
    const Eigen::VectorXd b = flatten(d_target.values) - model.mean_landmarks;

    if (ridge == 0.0) {
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
        if (qr.rank() < A.cols()) {
            throw std::invalid_argument(
                "singular landmark system with ridge = 0; supply ridge > 0");
        }
        return qr.solve(b);
    }
    const Eigen::MatrixXd normal =
        A.transpose() * A + ridge * Eigen::MatrixXd::Identity(A.cols(), A.cols());
    return Eigen::LDLT<Eigen::MatrixXd>(normal).solve(A.transpose() * b);
}

std::pair<Mesh, DisplacementField> apply_deformation(const DeformationModel& model,
                                                     const Eigen::VectorXd& coefficients,
                                                     const Mesh& neutral) {
    if (coefficients.size() != model.mode_count()) {
        throw std::invalid_argument("coefficient vector length does not match the model");
    }
    if (neutral.vertex_count() != model.vertex_count()) {
        throw std::invalid_argument("mesh vertex count does not match the model");
    }
    DisplacementField field{unflatten(model.basis * coefficients + model.mean)};
    Mesh expressive = neutral;
    expressive.vertices += field.values;
    return {std::move(expressive), std::move(field)};
}

VertexWeights compute_vertex_weights(const Mesh& neutral) {
    if (!neutral.topology || neutral.topology->landmark_indices.empty()) {
        throw std::invalid_argument("topology has no landmarks");
    }
    const auto& idx = neutral.topology->landmark_indices;
    const std::unordered_set<int> landmark_set(idx.begin(), idx.end());

    const int N = neutral.vertex_count();
    Eigen::VectorXd raw(N);
    double max_finite = 0.0;
    for (int i = 0; i < N; ++i) {
        if (landmark_set.contains(i)) {
            raw(i) = std::numeric_limits<double>::infinity();
            continue;
        }
        double min_d = std::numeric_limits<double>::infinity();
        for (int v : idx) {
            min_d = std::min(min_d, (neutral.vertices.row(i) - neutral.vertices.row(v)).norm());
        }
        if (min_d == 0.0) {
            // Coincident with a landmark: gets the landmark weight.
            raw(i) = std::numeric_limits<double>::infinity();
        } else {
            raw(i) = 1.0 / min_d;
            max_finite = std::max(max_finite, raw(i));
        }
    }
    if (max_finite == 0.0) {
        // Every vertex is (or coincides with) a landmark.
        max_finite = 1.0;
    }

    VertexWeights out;
    out.weights.resize(N);
    for (int i = 0; i < N; ++i) {
        out.weights(i) = std::isinf(raw(i)) ? 1.0 : raw(i) / max_finite;
    }
    return out;
}

std::vector<Mesh> deform_sequence(const Mesh& neutral, const LandmarkSequence& lms,
                                  const DeformationModel& model, double ridge) {
    lms.validate();
    if (lms.landmark_count() != model.landmark_count()) {
        throw std::invalid_argument("sequence landmark count does not match the model");
    }
    std::vector<Mesh> out;
    out.reserve(lms.frames.size());
    for (const auto& frame : lms.frames) {
        SparseDisplacement d{frame - lms.frames.front()};
        const Eigen::VectorXd c = fit_coefficients(model, d, ridge);
        out.push_back(apply_deformation(model, c, neutral).first);
    }
    return out;
}

}  // namespace morph4d
