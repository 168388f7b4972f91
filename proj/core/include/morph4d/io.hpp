#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "morph4d/deform.hpp"
#include "morph4d/landmarks.hpp"
#include "morph4d/srvf.hpp"
#include "morph4d/transition.hpp"

namespace morph4d {

/// File-level failures (missing files, malformed content). Distinct from
/// std::invalid_argument so callers can map them to a separate exit code.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- meshes (ASCII OBJ, `v x y z` and triangular `f i j k` records) ---

Mesh load_mesh(const std::filesystem::path& path,
               const std::vector<int>& landmark_indices = {});
void save_mesh(const Mesh& mesh, const std::filesystem::path& path);

/// Loads every .obj in a directory in lexicographic filename order and checks
/// the frames share one topology.
std::vector<Mesh> load_sequence_dir(const std::filesystem::path& dir,
                                    const std::vector<int>& landmark_indices = {});

// --- landmark sequences ---

/// CSV with header `frame,landmark,x,y,z`.
LandmarkSequence load_sequence_csv(const std::filesystem::path& path, double dt = -1.0);
void save_sequence_csv(const LandmarkSequence& seq, const std::filesystem::path& path);

/// JSON container { "k":…, "dt":…, "frames":[[[x,y,z],…],…] }.
LandmarkSequence load_sequence_json(const std::filesystem::path& path);
void save_sequence_json(const LandmarkSequence& seq, const std::filesystem::path& path);

/// Dispatches on extension (.csv / .json).
LandmarkSequence load_sequence(const std::filesystem::path& path);
void save_sequence(const LandmarkSequence& seq, const std::filesystem::path& path);

// --- SRVF points, JSON { "dt":…, "scale":…, "samples":[[…],…] } ---

Srvf load_srvf(const std::filesystem::path& path);
void save_srvf(const Srvf& q, const std::filesystem::path& path);

// --- labeled motions, JSON { "start":…, "end":…, "init":[[x,y,z],…], "motion":{…} } ---

LabeledMotion load_motion(const std::filesystem::path& path,
                          const std::vector<ExpressionLabel>& labels);
void save_motion(const LabeledMotion& motion, const std::filesystem::path& path);

// --- label sets, JSON { "labels": ["neutral", …] } ---

std::vector<ExpressionLabel> load_labels(const std::filesystem::path& path);

// --- landmark index files, one zero-based vertex index per line ---

std::vector<int> load_landmark_indices(const std::filesystem::path& path);
void save_landmark_indices(const std::vector<int>& indices, const std::filesystem::path& path);

// --- deformation models, single JSON container ---

DeformationModel load_model(const std::filesystem::path& path);
void save_model(const DeformationModel& model, const std::filesystem::path& path);

}  // namespace morph4d
