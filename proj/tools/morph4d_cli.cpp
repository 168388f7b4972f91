// Command-line front end for the morph4d core library.
//
// Exit codes: 0 success, 1 invalid input or arguments, 2 file I/O failure.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "morph4d/config.hpp"
#include "morph4d/io.hpp"
#include "morph4d/metrics.hpp"
#include "morph4d/sphere.hpp"
#include "morph4d/transition.hpp"

namespace fs = std::filesystem;
using namespace morph4d;

namespace {

LandmarkFrame first_frame(const fs::path& path) {
    const auto seq = load_sequence(path);
    if (seq.frames.empty()) {
        throw std::invalid_argument("empty sequence: " + path.string());
    }
    return seq.frames.front();
}

int run(CLI::App& app, int argc, char** argv) {
    std::string config_str;
    app.add_option("--config", config_str, "pipeline configuration JSON");
    app.require_subcommand(1);

    // encode: landmark sequence -> SRVF
    auto* encode = app.add_subcommand("encode", "encode a landmark sequence as an SRVF");
    fs::path encode_in, encode_out;
    encode->add_option("input", encode_in, "sequence (.csv or .json)")->required();
    encode->add_option("--out", encode_out, "output SRVF JSON")->required();

    // decode: SRVF + initial frame -> landmark sequence
    auto* decode = app.add_subcommand("decode", "decode an SRVF from an initial frame");
    fs::path decode_in, decode_init, decode_out;
    bool decode_normalized = false;
    decode->add_option("input", decode_in, "SRVF JSON")->required();
    decode->add_option("--init", decode_init, "sequence whose first frame is the start")
        ->required();
    decode->add_option("--out", decode_out, "output sequence (.csv or .json)")->required();
    decode->add_flag("--normalized", decode_normalized,
                     "decode the unit-norm SRVF without restoring the stored scale");

    // interpolate: geodesic point between two SRVFs
    auto* interp = app.add_subcommand("interpolate", "geodesic interpolation of two SRVFs");
    fs::path interp_a, interp_b, interp_out;
    double interp_tau = 0.5;
    interp->add_option("first", interp_a, "first SRVF JSON")->required();
    interp->add_option("second", interp_b, "second SRVF JSON")->required();
    interp->add_option("--tau", interp_tau, "position in [0,1]")->required();
    interp->add_option("--out", interp_out, "output SRVF JSON")->required();

    // synth-transition: peak-to-peak transition between two onset motions
    auto* synth = app.add_subcommand("synth-transition",
                                     "synthesize a peak-to-peak transition");
    fs::path synth_m1, synth_m2, synth_labels, synth_out;
    int synth_steps = 0;
    synth->add_option("first", synth_m1, "first labeled motion JSON")->required();
    synth->add_option("second", synth_m2, "second labeled motion JSON")->required();
    synth->add_option("--labels", synth_labels, "label set JSON")->required();
    synth->add_option("--steps", synth_steps, "number of interpolation steps");
    synth->add_option("--out", synth_out, "output sequence (.csv or .json)")->required();

    // compose: chain labeled motions into one sequence
    auto* compose = app.add_subcommand("compose", "compose a chain of labeled motions");
    std::vector<fs::path> compose_motions;
    fs::path compose_labels, compose_init, compose_out;
    compose->add_option("motions", compose_motions, "labeled motion JSON files, in order")
        ->required()
        ->expected(-2);
    compose->add_option("--labels", compose_labels, "label set JSON")->required();
    compose->add_option("--init", compose_init, "sequence whose first frame starts the chain")
        ->required();
    compose->add_option("--out", compose_out, "output sequence (.csv or .json)")->required();

    // transfer: replay a motion from a different initial configuration
    auto* transfer = app.add_subcommand("transfer", "re-target a motion to a new start frame");
    fs::path transfer_src, transfer_init, transfer_out;
    transfer->add_option("source", transfer_src, "source sequence (.csv or .json)")->required();
    transfer->add_option("--init", transfer_init, "sequence whose first frame is the new start")
        ->required();
    transfer->add_option("--out", transfer_out, "output sequence (.csv or .json)")->required();

    // train-model: PCA deformation model from mesh sequences
    auto* train = app.add_subcommand("train-model",
                                     "train a PCA deformation model from OBJ sequences");
    fs::path train_dir, train_landmarks, train_out;
    int train_m = 0;
    train->add_option("data", train_dir,
                      "directory of per-sequence subdirectories of OBJ frames "
                      "(first frame neutral)")
        ->required();
    train->add_option("--landmarks", train_landmarks, "landmark index file")->required();
    train->add_option("--components", train_m, "number of principal components");
    train->add_option("--out", train_out, "output model JSON")->required();

    // fit: drive a dense mesh from a sparse landmark sequence
    auto* fit = app.add_subcommand("fit", "deform a neutral mesh along a landmark sequence");
    fs::path fit_model, fit_neutral, fit_seq, fit_out, fit_landmarks;
    fit->add_option("model", fit_model, "deformation model JSON")->required();
    fit->add_option("neutral", fit_neutral, "neutral mesh OBJ")->required();
    fit->add_option("sequence", fit_seq, "landmark sequence (.csv or .json)")->required();
    fit->add_option("--out", fit_out, "output directory for OBJ frames")->required();

    // evaluate: per-vertex error between two meshes or aligned directories
    auto* evaluate = app.add_subcommand("evaluate", "per-vertex error between meshes");
    fs::path eval_a, eval_b;
    int eval_window = 0;
    evaluate->add_option("generated", eval_a, "mesh OBJ or directory of OBJ frames")
        ->required();
    evaluate->add_option("reference", eval_b, "mesh OBJ or directory of OBJ frames")
        ->required();
    evaluate->add_option("--window", eval_window,
                         "sliding-window width for directory comparison (0 = aligned)");

    // weights: landmark-distance vertex weights
    auto* weights = app.add_subcommand("weights", "landmark-distance vertex weights");
    fs::path weights_mesh, weights_landmarks, weights_out;
    weights->add_option("mesh", weights_mesh, "neutral mesh OBJ")->required();
    weights->add_option("--landmarks", weights_landmarks, "landmark index file")->required();
    weights->add_option("--out", weights_out, "output file, one weight per line")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    std::optional<fs::path> config_path;
    if (!config_str.empty()) {
        config_path = fs::path(config_str);
    }
    const PipelineConfig config = resolve_config(config_path);

    if (*encode) {
        save_srvf(srvf_encode(load_sequence(encode_in)), encode_out);
    } else if (*decode) {
        Srvf q = load_srvf(decode_in);
        if (!decode_normalized) {
            q = q.denormalized();
        }
        save_sequence(srvf_decode(q, first_frame(decode_init)), decode_out);
    } else if (*interp) {
        const Srvf a = load_srvf(interp_a);
        const Srvf b = load_srvf(interp_b);
        Srvf mid = geodesic_interpolate(a, b, interp_tau);
        mid.scale = (1.0 - interp_tau) * a.scale + interp_tau * b.scale;
        save_srvf(mid, interp_out);
    } else if (*synth) {
        const auto labels = load_labels(synth_labels);
        const auto m1 = load_motion(synth_m1, labels);
        const auto m2 = load_motion(synth_m2, labels);
        const int steps = synth_steps > 0 ? synth_steps : config.n_steps;
        const auto result = synth_peak_transition(m1, m2, steps);
        save_sequence(result.sequence, synth_out);
        std::cout << result.start.name << " -> " << result.end.name << ", "
                  << result.sequence.frame_count() << " frames\n";
    } else if (*compose) {
        const auto labels = load_labels(compose_labels);
        std::vector<LabeledMotion> chain;
        for (const auto& path : compose_motions) {
            chain.push_back(load_motion(path, labels));
        }
        save_sequence(compose_transitions(chain, first_frame(compose_init)), compose_out);
    } else if (*transfer) {
        save_sequence(transfer_motion(load_sequence(transfer_src), first_frame(transfer_init)),
                      transfer_out);
    } else if (*train) {
        const auto landmark_indices = load_landmark_indices(train_landmarks);
        std::vector<std::pair<Mesh, Mesh>> pairs;
        std::vector<fs::path> subdirs;
        for (const auto& entry : fs::directory_iterator(train_dir)) {
            if (entry.is_directory()) {
                subdirs.push_back(entry.path());
            }
        }
        std::sort(subdirs.begin(), subdirs.end());
        for (const auto& subdir : subdirs) {
            const auto frames = load_sequence_dir(subdir, landmark_indices);
            for (size_t t = 1; t < frames.size(); ++t) {
                pairs.emplace_back(frames.front(), frames[t]);
            }
        }
        std::vector<DisplacementField> fields;
        for (auto& [dense, sparse] : build_displacement_dataset(pairs)) {
            fields.push_back(std::move(dense));
        }
        const int m = train_m > 0 ? train_m : config.pca_components;
        const auto model = train_pca(fields, landmark_indices, m);
        save_model(model, train_out);
        std::cout << "trained " << model.mode_count() << " modes from " << fields.size()
                  << " displacement fields\n";
    } else if (*fit) {
        const auto model = load_model(fit_model);
        const Mesh neutral = load_mesh(fit_neutral, model.landmark_indices);
        const auto seq = load_sequence(fit_seq);
        const auto meshes = deform_sequence(neutral, seq, model, config.ridge);
        fs::create_directories(fit_out);
        for (size_t t = 0; t < meshes.size(); ++t) {
            char name[32];
            std::snprintf(name, sizeof(name), "frame_%04zu.obj", t);
            save_mesh(meshes[t], fit_out / name);
        }
        std::cout << "wrote " << meshes.size() << " frames to " << fit_out.string() << '\n';
    } else if (*evaluate) {
        ErrorSummary summary;
        if (fs::is_directory(eval_a)) {
            const auto gen = load_sequence_dir(eval_a);
            const auto ref = load_sequence_dir(eval_b);
            if (eval_window > 0) {
                summary = sliding_window_error(gen, ref, eval_window);
            } else {
                if (gen.size() != ref.size()) {
                    throw std::invalid_argument("aligned comparison needs equal frame counts");
                }
                double total = 0.0;
                for (size_t t = 0; t < gen.size(); ++t) {
                    const auto e = per_vertex_error(gen[t], ref[t]);
                    summary.per_item.push_back(e.mean);
                    total += e.mean;
                }
                summary.mean = total / static_cast<double>(gen.size());
                double var = 0.0;
                for (double v : summary.per_item) {
                    var += (v - summary.mean) * (v - summary.mean);
                }
                summary.std = std::sqrt(var / static_cast<double>(summary.per_item.size()));
            }
        } else {
            summary = per_vertex_error(load_mesh(eval_a), load_mesh(eval_b));
        }
        std::cout << "{\"mean_mm\": " << summary.mean << ", \"std_mm\": " << summary.std
                  << "}\n";
    } else if (*weights) {
        const auto landmark_indices = load_landmark_indices(weights_landmarks);
        const Mesh mesh = load_mesh(weights_mesh, landmark_indices);
        const auto w = compute_vertex_weights(mesh);
        std::ofstream out(weights_out);
        if (!out) {
            throw io_error("cannot open for writing: " + weights_out.string());
        }
        out.precision(17);
        for (Eigen::Index i = 0; i < w.weights.size(); ++i) {
            out << w.weights(i) << '\n';
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"4D facial motion toolkit"};
    try {
        return run(app, argc, argv);
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
