#include "morph4d/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace morph4d {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::ifstream open_input(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw io_error("cannot open " + path.string());
    }
    return in;
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw io_error("cannot write " + path.string());
    }
    return out;
}

json parse_json(const fs::path& path) {
    auto in = open_input(path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw io_error(path.string() + ": " + e.what());
    }
}

void write_json(const json& j, const fs::path& path) {
    auto out = open_output(path);
    out << j.dump(2) << '\n';
    if (!out) {
        throw io_error("write failed: " + path.string());
    }
}

LandmarkFrame frame_from_json(const json& j) {
    LandmarkFrame frame(j.size(), 3);
    for (size_t i = 0; i < j.size(); ++i) {
        for (int c = 0; c < 3; ++c) {
            frame(i, c) = j[i][c].get<double>();
        }
    }
    return frame;
}

json frame_to_json(const LandmarkFrame& frame) {
    json j = json::array();
    for (Eigen::Index i = 0; i < frame.rows(); ++i) {
        j.push_back({frame(i, 0), frame(i, 1), frame(i, 2)});
    }
    return j;
}

}  // namespace

Mesh load_mesh(const fs::path& path, const std::vector<int>& landmark_indices) {
    auto in = open_input(path);
    std::vector<Eigen::RowVector3d> vertices;
    std::vector<std::array<int, 3>> faces;

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#') {
            continue;
        }
        if (tag == "v") {
            Eigen::RowVector3d v;
            if (!(ls >> v(0) >> v(1) >> v(2))) {
                throw io_error(path.string() + ":" + std::to_string(line_no) +
                               ": malformed vertex record");
            }
            vertices.push_back(v);
        } else if (tag == "f") {
            std::array<int, 3> face{};
            for (int c = 0; c < 3; ++c) {
                std::string token;
                if (!(ls >> token)) {
                    throw io_error(path.string() + ":" + std::to_string(line_no) +
                                   ": face needs three vertex indices");
                }
                // Tolerate v/vt/vn style references; only the vertex index matters.
                const auto slash = token.find('/');
                if (slash != std::string::npos) {
                    token.resize(slash);
                }
                int idx = 0;
                const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), idx);
                if (ec != std::errc{} || ptr != token.data() + token.size()) {
                    throw io_error(path.string() + ":" + std::to_string(line_no) +
                                   ": malformed face index '" + token + "'");
                }
                face[c] = idx - 1;  // OBJ is 1-based
            }
            std::string extra;
            if (ls >> extra) {
                throw io_error(path.string() + ":" + std::to_string(line_no) +
                               ": only triangular faces are supported");
            }
            faces.push_back(face);
        }
        // Other record types (vn, vt, usemtl, ...) are ignored.
    }

    const int N = static_cast<int>(vertices.size());
    for (size_t f = 0; f < faces.size(); ++f) {
        for (int idx : faces[f]) {
            if (idx < 0 || idx >= N) {
                throw io_error(path.string() + ": face " + std::to_string(f + 1) +
                               " references out-of-range vertex " + std::to_string(idx + 1));
            }
        }
    }

    Mesh mesh;
    mesh.vertices.resize(N, 3);
    for (int i = 0; i < N; ++i) {
        mesh.vertices.row(i) = vertices[i];
    }
    auto topology = std::make_shared<MeshTopology>();
    topology->vertex_count = N;
    topology->faces = std::move(faces);
    topology->landmark_indices = landmark_indices;
    try {
        topology->validate();
    } catch (const std::invalid_argument& e) {
        throw io_error(path.string() + ": " + e.what());
    }
    mesh.topology = std::move(topology);
    return mesh;
}

void save_mesh(const Mesh& mesh, const fs::path& path) {
    auto out = open_output(path);
    out << std::fixed;
    out.precision(6);
    for (int i = 0; i < mesh.vertex_count(); ++i) {
        out << "v " << mesh.vertices(i, 0) << ' ' << mesh.vertices(i, 1) << ' '
            << mesh.vertices(i, 2) << '\n';
    }
    if (mesh.topology) {
        for (const auto& f : mesh.topology->faces) {
            out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
        }
    }
    if (!out) {
        throw io_error("write failed: " + path.string());
    }
}

std::vector<Mesh> load_sequence_dir(const fs::path& dir, const std::vector<int>& landmark_indices) {
    if (!fs::is_directory(dir)) {
        throw io_error("not a directory: " + dir.string());
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".obj") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        throw io_error("no .obj files in " + dir.string());
    }

    std::vector<Mesh> meshes;
    meshes.reserve(files.size());
    for (const auto& file : files) {
        Mesh mesh = load_mesh(file, landmark_indices);
        if (!meshes.empty()) {
            const auto& first = meshes.front();
            if (mesh.vertex_count() != first.vertex_count() ||
                mesh.topology->faces != first.topology->faces) {
                throw io_error("topology drift at frame " + file.filename().string());
            }
            mesh.topology = first.topology;
        }
        meshes.push_back(std::move(mesh));
    }
    return meshes;
}

LandmarkSequence load_sequence_csv(const fs::path& path, double dt) {
    auto in = open_input(path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("frame,landmark,x,y,z", 0) != 0) {
        throw io_error(path.string() + ": expected header 'frame,landmark,x,y,z'");
    }

    std::vector<std::vector<Eigen::RowVector3d>> frames;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        std::istringstream ls(line);
        int frame_idx = 0, landmark_idx = 0;
        double x = 0, y = 0, z = 0;
        char comma = 0;
        if (!(ls >> frame_idx >> comma >> landmark_idx >> comma >> x >> comma >> y >> comma >> z)) {
            throw io_error(path.string() + ":" + std::to_string(line_no) + ": malformed row");
        }
        if (frame_idx < 0 || landmark_idx < 0) {
            throw io_error(path.string() + ":" + std::to_string(line_no) + ": negative index");
        }
        if (frames.size() <= static_cast<size_t>(frame_idx)) {
            frames.resize(frame_idx + 1);
        }
        auto& frame = frames[frame_idx];
        if (frame.size() <= static_cast<size_t>(landmark_idx)) {
            frame.resize(landmark_idx + 1, Eigen::RowVector3d::Zero());
        }
        frame[landmark_idx] = Eigen::RowVector3d(x, y, z);
    }
    if (frames.empty()) {
        throw io_error(path.string() + ": no data rows");
    }

    LandmarkSequence seq;
    const size_t k = frames.front().size();
    for (size_t t = 0; t < frames.size(); ++t) {
        if (frames[t].size() != k) {
            throw io_error(path.string() + ": frame " + std::to_string(t) +
                           " has a different landmark count");
        }
        LandmarkFrame frame(k, 3);
        for (size_t i = 0; i < k; ++i) {
            frame.row(i) = frames[t][i];
        }
        seq.frames.push_back(std::move(frame));
    }
    seq.dt = dt > 0.0 ? dt : (frames.size() > 1 ? 1.0 / static_cast<double>(frames.size() - 1) : 1.0);
    return seq;
}

void save_sequence_csv(const LandmarkSequence& seq, const fs::path& path) {
    auto out = open_output(path);
    out << "frame,landmark,x,y,z\n";
    out.precision(17);
    for (size_t t = 0; t < seq.frames.size(); ++t) {
        const auto& frame = seq.frames[t];
        for (Eigen::Index i = 0; i < frame.rows(); ++i) {
            out << t << ',' << i << ',' << frame(i, 0) << ',' << frame(i, 1) << ','
                << frame(i, 2) << '\n';
        }
    }
    if (!out) {
        throw io_error("write failed: " + path.string());
    }
}

LandmarkSequence load_sequence_json(const fs::path& path) {
    const json j = parse_json(path);
    try {
        LandmarkSequence seq;
        seq.dt = j.at("dt").get<double>();
        const int k = j.at("k").get<int>();
        for (const auto& jframe : j.at("frames")) {
            LandmarkFrame frame = frame_from_json(jframe);
            if (frame.rows() != k) {
                throw io_error(path.string() + ": frame landmark count differs from header k");
            }
            seq.frames.push_back(std::move(frame));
        }
        return seq;
    } catch (const json::exception& e) {
        throw io_error(path.string() + ": " + e.what());
    }
}

void save_sequence_json(const LandmarkSequence& seq, const fs::path& path) {
    json j;
    j["k"] = seq.landmark_count();
    j["dt"] = seq.dt;
    j["frames"] = json::array();
    for (const auto& frame : seq.frames) {
        j["frames"].push_back(frame_to_json(frame));
    }
    write_json(j, path);
}

LandmarkSequence load_sequence(const fs::path& path) {
    if (path.extension() == ".csv") {
        return load_sequence_csv(path);
    }
    if (path.extension() == ".json") {
        return load_sequence_json(path);
    }
    throw io_error("unknown sequence format: " + path.string());
}

void save_sequence(const LandmarkSequence& seq, const fs::path& path) {
    if (path.extension() == ".csv") {
        save_sequence_csv(seq, path);
    } else if (path.extension() == ".json") {
        save_sequence_json(seq, path);
    } else {
        throw io_error("unknown sequence format: " + path.string());
    }
}

Srvf load_srvf(const fs::path& path) {
    const json j = parse_json(path);
    try {
        Srvf q;
        q.dt = j.at("dt").get<double>();
        q.scale = j.value("scale", 1.0);
        const auto& rows = j.at("samples");
        if (rows.empty()) {
            throw io_error(path.string() + ": empty sample matrix");
        }
        q.samples.resize(rows.size(), rows[0].size());
        for (size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != static_cast<size_t>(q.samples.cols())) {
                throw io_error(path.string() + ": ragged sample matrix");
            }
            for (size_t c = 0; c < rows[i].size(); ++c) {
                q.samples(i, c) = rows[i][c].get<double>();
            }
        }
        return q;
    } catch (const json::exception& e) {
        throw io_error(path.string() + ": " + e.what());
    }
}

void save_srvf(const Srvf& q, const fs::path& path) {
    json j;
    j["dt"] = q.dt;
    j["scale"] = q.scale;
    j["samples"] = json::array();
    for (int i = 0; i < q.sample_count(); ++i) {
        json row = json::array();
        for (Eigen::Index c = 0; c < q.samples.cols(); ++c) {
            row.push_back(q.samples(i, c));
        }
        j["samples"].push_back(std::move(row));
    }
    write_json(j, path);
}

LabeledMotion load_motion(const fs::path& path, const std::vector<ExpressionLabel>& labels) {
    const json j = parse_json(path);
    auto label_by_name = [&](const std::string& name) -> ExpressionLabel {
        for (const auto& l : labels) {
            if (l.name == name) {
                return l;
            }
        }
        throw io_error(path.string() + ": unknown expression label '" + name + "'");
    };
    try {
        LabeledMotion m;
        m.start = label_by_name(j.at("start").get<std::string>());
        m.end = label_by_name(j.at("end").get<std::string>());
        m.init = frame_from_json(j.at("init"));

        const json& motion = j.at("motion");
        Srvf q;
        q.dt = motion.at("dt").get<double>();
        q.scale = motion.value("scale", 1.0);
        const auto& rows = motion.at("samples");
        q.samples.resize(rows.size(), rows.empty() ? 0 : rows[0].size());
        for (size_t i = 0; i < rows.size(); ++i) {
            for (size_t c = 0; c < rows[i].size(); ++c) {
                q.samples(i, c) = rows[i][c].get<double>();
            }
        }
        m.motion = std::move(q);
        if (m.motion.samples.cols() != m.init.rows() * 3) {
            throw io_error(path.string() + ": init frame does not match motion dimensions");
        }
        return m;
    } catch (const json::exception& e) {
        throw io_error(path.string() + ": " + e.what());
    }
}

void save_motion(const LabeledMotion& motion, const fs::path& path) {
    json j;
    j["start"] = motion.start.name;
    j["end"] = motion.end.name;
    j["init"] = frame_to_json(motion.init);
    json m;
    m["dt"] = motion.motion.dt;
    m["scale"] = motion.motion.scale;
    m["samples"] = json::array();
    for (int i = 0; i < motion.motion.sample_count(); ++i) {
        json row = json::array();
        for (Eigen::Index c = 0; c < motion.motion.samples.cols(); ++c) {
            row.push_back(motion.motion.samples(i, c));
        }
        m["samples"].push_back(std::move(row));
    }
    j["motion"] = std::move(m);
    write_json(j, path);
}

std::vector<ExpressionLabel> load_labels(const fs::path& path) {
    const json j = parse_json(path);
    try {
        std::vector<ExpressionLabel> labels;
        int id = 0;
        for (const auto& name : j.at("labels")) {
            labels.push_back({id++, name.get<std::string>()});
        }
        if (labels.empty()) {
            throw io_error(path.string() + ": empty label set");
        }
        return labels;
    } catch (const json::exception& e) {
        throw io_error(path.string() + ": " + e.what());
    }
}

std::vector<int> load_landmark_indices(const fs::path& path) {
    auto in = open_input(path);
    std::vector<int> indices;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::istringstream ls(line);
        int idx = 0;
        if (!(ls >> idx) || idx < 0) {
            throw io_error(path.string() + ":" + std::to_string(line_no) +
                           ": expected a nonnegative vertex index");
        }
        indices.push_back(idx);
    }
    if (indices.empty()) {
        throw io_error(path.string() + ": no landmark indices");
    }
    return indices;
}

void save_landmark_indices(const std::vector<int>& indices, const fs::path& path) {
    auto out = open_output(path);
    for (int idx : indices) {
        out << idx << '\n';
    }
    if (!out) {
        throw io_error("write failed: " + path.string());
    }
}

DeformationModel load_model(const fs::path& path) {
    const json j = parse_json(path);
    try {
        DeformationModel model;
        const int N = j.at("N").get<int>();
        const int k = j.at("k").get<int>();
        const int m = j.at("m").get<int>();

        model.landmark_indices = j.at("landmark_indices").get<std::vector<int>>();
        if (static_cast<int>(model.landmark_indices.size()) != k) {
            throw io_error(path.string() + ": landmark index list does not match k");
        }

        auto read_matrix = [&](const char* key, Eigen::Index rows, Eigen::Index cols) {
            const auto& data = j.at(key);
            if (static_cast<Eigen::Index>(data.size()) != rows) {
                throw io_error(path.string() + ": '" + key + "' has wrong row count");
            }
            Eigen::MatrixXd mat(rows, cols);
            for (Eigen::Index r = 0; r < rows; ++r) {
                if (static_cast<Eigen::Index>(data[r].size()) != cols) {
                    throw io_error(path.string() + ": '" + key + "' has wrong column count");
                }
                for (Eigen::Index c = 0; c < cols; ++c) {
                    mat(r, c) = data[r][c].get<double>();
                }
            }
            return mat;
        };
        auto read_vector = [&](const char* key, Eigen::Index size) {
            const auto v = j.at(key).get<std::vector<double>>();
            if (static_cast<Eigen::Index>(v.size()) != size) {
                throw io_error(path.string() + ": '" + key + "' has wrong length");
            }
            return Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(v.data(), size));
        };

        model.basis = read_matrix("basis", 3 * N, m);
        model.mean = read_vector("mean", 3 * N);
        model.landmark_rows = read_matrix("landmark_rows", 3 * k, m);
        model.mean_landmarks = read_vector("mean_landmarks", 3 * k);
        if (j.contains("explained_variance_ratio")) {
            model.explained_variance_ratio = read_vector("explained_variance_ratio", m);
        }

        try {
            model.verify_consistency();
        } catch (const std::invalid_argument& e) {
            throw io_error(path.string() + ": " + e.what());
        }
        return model;
    } catch (const json::exception& e) {
        throw io_error(path.string() + ": " + e.what());
    }
}

void save_model(const DeformationModel& model, const fs::path& path) {
    json j;
    j["N"] = model.vertex_count();
    j["k"] = model.landmark_count();
    j["m"] = model.mode_count();
    j["landmark_indices"] = model.landmark_indices;

    auto matrix_to_json = [](const Eigen::MatrixXd& mat) {
        json rows = json::array();
        for (Eigen::Index r = 0; r < mat.rows(); ++r) {
            json row = json::array();
            for (Eigen::Index c = 0; c < mat.cols(); ++c) {
                row.push_back(mat(r, c));
            }
            rows.push_back(std::move(row));
        }
        return rows;
    };
    auto vector_to_json = [](const Eigen::VectorXd& v) {
        return json(std::vector<double>(v.data(), v.data() + v.size()));
    };

    j["basis"] = matrix_to_json(model.basis);
    j["mean"] = vector_to_json(model.mean);
    j["landmark_rows"] = matrix_to_json(model.landmark_rows);
    j["mean_landmarks"] = vector_to_json(model.mean_landmarks);
    if (model.explained_variance_ratio.size() == model.mode_count()) {
        j["explained_variance_ratio"] = vector_to_json(model.explained_variance_ratio);
    }
    write_json(j, path);
}

}  // namespace morph4d
