#pragma once

#include <Eigen/Core>

#include <array>
#include <memory>
#include <utility>
#include <vector>

#include "morph4d/landmarks.hpp"

namespace morph4d {

/// Fixed mesh topology: vertex count, triangle faces, and the vertex indices
/// that act as landmarks.
struct MeshTopology {
    int vertex_count = 0;
    std::vector<std::array<int, 3>> faces;
    std::vector<int> landmark_indices;

    int landmark_count() const { return static_cast<int>(landmark_indices.size()); }
    void validate() const;
};

struct Mesh {
    Eigen::Matrix<double, Eigen::Dynamic, 3> vertices;  // N x 3, mm
    std::shared_ptr<const MeshTopology> topology;

    int vertex_count() const { return static_cast<int>(vertices.rows()); }
};

/// Per-vertex 3D displacement of a full mesh, D_i = expressive - neutral.
struct DisplacementField {
    Eigen::Matrix<double, Eigen::Dynamic, 3> values;  // N x 3
};

/// Landmark displacement, d_i = expressive landmarks - neutral landmarks.
struct SparseDisplacement {
    Eigen::Matrix<double, Eigen::Dynamic, 3> values;  // k x 3
};

/// Linear model of dense displacements with its restriction to landmark rows.
/// Flattening is row-major per vertex: vertex i occupies rows 3i..3i+2.
struct DeformationModel {
    Eigen::MatrixXd basis;          // 3N x m, orthonormal columns for PCA models
    Eigen::VectorXd mean;           // 3N
    Eigen::MatrixXd landmark_rows;  // 3k x m, row selection of basis at I_z
    Eigen::VectorXd mean_landmarks; // 3k, same selection of mean
    std::vector<int> landmark_indices;
    Eigen::VectorXd explained_variance_ratio;  // per retained component

    int vertex_count() const { return static_cast<int>(basis.rows()) / 3; }
    int landmark_count() const { return static_cast<int>(landmark_indices.size()); }
    int mode_count() const { return static_cast<int>(basis.cols()); }

    /// Re-checks that landmark_rows/mean_landmarks match the row selection of
    /// basis/mean at landmark_indices. Used by the deserializer.
    void verify_consistency(double tol = 1e-12) const;
};

/// Per-vertex weights in (0,1], landmark vertices pinned at exactly 1.
struct VertexWeights {
    Eigen::VectorXd weights;  // N
};

/// Rows of the vertex array at the topology's landmark indices, in order.
LandmarkFrame extract_landmarks(const Mesh& mesh);

/// D_i = expressive - neutral per vertex; d_i is its landmark-row restriction.
std::vector<std::pair<DisplacementField, SparseDisplacement>> build_displacement_dataset(
    const std::vector<std::pair<Mesh, Mesh>>& pairs);

/// PCA of flattened displacement fields: sample mean plus the top-m orthonormal
/// principal directions. Throws when m exceeds what the data supports.
DeformationModel train_pca(const std::vector<DisplacementField>& displacements,
                           const std::vector<int>& landmark_indices, int m);

/// Least-squares coefficients minimizing
///   || landmark_rows c + mean_landmarks - d_target ||^2 + ridge ||c||^2.
/// With ridge = 0 a rank-deficient system is an error rather than a pseudo-inverse.
Eigen::VectorXd fit_coefficients(const DeformationModel& model,
                                 const SparseDisplacement& d_target, double ridge = 0.0);

/// Expressive mesh = neutral + reshape(basis c + mean).
std::pair<Mesh, DisplacementField> apply_deformation(const DeformationModel& model,
                                                     const Eigen::VectorXd& coefficients,
                                                     const Mesh& neutral);

/// w_i = 1 / min_j ||p_i - Z_j|| for non-landmark vertices, landmark vertices
/// (and vertices coincident with one) pinned to the maximum weight, then all
/// divided by the max so the range is (0,1].
VertexWeights compute_vertex_weights(const Mesh& neutral);

/// Per-frame fit-and-apply over a landmark sequence; frame 0 is treated as the
/// neutral landmark configuration.
std::vector<Mesh> deform_sequence(const Mesh& neutral, const LandmarkSequence& lms,
                                  const DeformationModel& model, double ridge = 0.0);

}  // namespace morph4d
