#include "morph4d/config.hpp"

#include <json.hpp>

#include <cstdlib>
#include <fstream>

#include "morph4d/io.hpp"

namespace morph4d {

using nlohmann::json;

void PipelineConfig::validate() const {
    if (n_steps < 2) {
        throw std::invalid_argument("config: n_steps must be at least 2");
    }
    if (pca_components < 1) {
        throw std::invalid_argument("config: pca_components must be positive");
    }
    if (pca_variance_target && (*pca_variance_target <= 0.0 || *pca_variance_target > 1.0)) {
        throw std::invalid_argument("config: pca_variance_target must lie in (0,1]");
    }
    if (ridge < 0.0) {
        throw std::invalid_argument("config: ridge must be nonnegative");
    }
    if (loss_weights.alpha1 < 0.0 || loss_weights.alpha2 < 0.0 || loss_weights.lambda_gp < 0.0) {
        throw std::invalid_argument("config: loss weights must be nonnegative");
    }
    if (numeric_epsilon <= 0.0 || karcher_tol <= 0.0 || karcher_max_iter < 1) {
        throw std::invalid_argument("config: invalid numeric tolerances");
    }
    if (!label_set_path.empty() && !std::filesystem::exists(label_set_path)) {
        throw std::invalid_argument("config: label set path does not resolve: " + label_set_path);
    }
    if (!landmark_index_path.empty() && !std::filesystem::exists(landmark_index_path)) {
        throw std::invalid_argument("config: landmark index path does not resolve: " +
                                    landmark_index_path);
    }
}

PipelineConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw io_error("cannot open config " + path.string());
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw io_error(path.string() + ": " + e.what());
    }

    PipelineConfig cfg;
    try {
        cfg.label_set_path = j.value("label_set_path", cfg.label_set_path);
        cfg.landmark_index_path = j.value("landmark_index_path", cfg.landmark_index_path);
        cfg.n_steps = j.value("n_steps", cfg.n_steps);
        cfg.pca_components = j.value("pca_components", cfg.pca_components);
        if (j.contains("pca_variance_target")) {
            cfg.pca_variance_target = j.at("pca_variance_target").get<double>();
        }
        cfg.ridge = j.value("ridge", cfg.ridge);
        cfg.loss_weights.alpha1 = j.value("alpha1", cfg.loss_weights.alpha1);
        cfg.loss_weights.alpha2 = j.value("alpha2", cfg.loss_weights.alpha2);
        cfg.loss_weights.lambda_gp = j.value("lambda_gp", cfg.loss_weights.lambda_gp);
        cfg.beta1 = j.value("beta1", cfg.beta1);
        cfg.beta2 = j.value("beta2", cfg.beta2);
        cfg.numeric_epsilon = j.value("numeric_epsilon", cfg.numeric_epsilon);
        cfg.karcher_tol = j.value("karcher_tol", cfg.karcher_tol);
        cfg.karcher_max_iter = j.value("karcher_max_iter", cfg.karcher_max_iter);
    } catch (const json::exception& e) {
        throw io_error(path.string() + ": " + e.what());
    }
    cfg.validate();
    return cfg;
}

PipelineConfig resolve_config(const std::optional<std::filesystem::path>& path) {
    if (path) {
        return load_config(*path);
    }
    if (const char* env = std::getenv("MORPH4D_CONFIG")) {
        return load_config(env);
    }
    return {};
}

}  // namespace morph4d
