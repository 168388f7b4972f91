#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "morph4d/gan_loss.hpp"

namespace morph4d {

/// Toolkit-wide configuration loaded from a single JSON document. Every field
/// has a usable default so the tool runs without a config file.
struct PipelineConfig {
    std::string label_set_path;
    std::string landmark_index_path;
    int n_steps = 30;
    int pca_components = 220;
    std::optional<double> pca_variance_target;  // overrides pca_components when set
    double ridge = 0.0;
    LossWeights loss_weights;
    double beta1 = 1.0;
    double beta2 = 0.1;
    double numeric_epsilon = 1e-12;
    double karcher_tol = 1e-8;
    int karcher_max_iter = 100;

    void validate() const;
};

PipelineConfig load_config(const std::filesystem::path& path);

/// Loads from `path` when given, else from $MORPH4D_CONFIG when set, else
/// returns the defaults.
PipelineConfig resolve_config(const std::optional<std::filesystem::path>& path);

}  // namespace morph4d
