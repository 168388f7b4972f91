#include <doctest.h>

#include <Eigen/Dense>

#include "helpers.hpp"
#include "morph4d/deform.hpp"

using namespace morph4d;

TEST_CASE("extract_landmarks gathers the indexed rows") {
    std::mt19937 rng(107);
    const Mesh mesh = testing::random_mesh(rng, 50, 8);
    const LandmarkFrame lms = extract_landmarks(mesh);
    REQUIRE(lms.rows() == 8);
    for (int j = 0; j < 8; ++j) {
        CHECK((lms.row(j) - mesh.vertices.row(mesh.topology->landmark_indices[j]))
                  .cwiseAbs()
                  .maxCoeff() == 0.0);
    }

    // Linearity under translation.
    Mesh moved = mesh;
    moved.vertices.rowwise() += Eigen::RowVector3d(1, 2, 3);
    const LandmarkFrame moved_lms = extract_landmarks(moved);
    for (int j = 0; j < 8; ++j) {
        CHECK((moved_lms.row(j) - lms.row(j) - Eigen::RowVector3d(1, 2, 3)).cwiseAbs().maxCoeff() <
              1e-12);
    }
}

TEST_CASE("build_displacement_dataset") {
    std::mt19937 rng(109);
    const Mesh neutral = testing::random_mesh(rng, 40, 6);

    SUBCASE("identical pair gives zero fields") {
        const auto data = build_displacement_dataset({{neutral, neutral}});
        REQUIRE(data.size() == 1);
        CHECK(data[0].first.values.cwiseAbs().maxCoeff() == 0.0);
        CHECK(data[0].second.values.cwiseAbs().maxCoeff() == 0.0);
    }

    SUBCASE("single-vertex shift produces a single nonzero row") {
        Mesh expressive = neutral;
        expressive.vertices(17, 2) += 1.0;
        const auto data = build_displacement_dataset({{neutral, expressive}});
        CHECK(data[0].first.values.row(17).cwiseAbs().sum() == doctest::Approx(1.0));
        CHECK(data[0].first.values.cwiseAbs().sum() == doctest::Approx(1.0));
    }

    SUBCASE("sparse part is consistent with landmark extraction") {
        Mesh expressive = neutral;
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (Eigen::Index i = 0; i < expressive.vertices.rows(); ++i) {
            for (int c = 0; c < 3; ++c) {
                expressive.vertices(i, c) += gauss(rng);
            }
        }
        const auto data = build_displacement_dataset({{neutral, expressive}});
        const LandmarkFrame expected = extract_landmarks(expressive) - extract_landmarks(neutral);
        CHECK((data[0].second.values - expected).cwiseAbs().maxCoeff() < 1e-12);
    }

    SUBCASE("topology mismatch is rejected") {
        const Mesh other = testing::random_mesh(rng, 41, 6);
        CHECK_THROWS_AS(build_displacement_dataset({{neutral, other}}), std::invalid_argument);
    }
}

TEST_CASE("train_pca recovers rank-1 structure") {
    std::mt19937 rng(113);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    const int N = 30;
    Eigen::VectorXd direction = Eigen::VectorXd::Random(3 * N).normalized();
    Eigen::VectorXd center = Eigen::VectorXd::Random(3 * N);

    std::vector<DisplacementField> samples;
    for (int i = 0; i < 10; ++i) {
        const Eigen::VectorXd flat = center + coeff(rng) * direction;
        DisplacementField f;
        f.values.resize(N, 3);
        for (int v = 0; v < N; ++v) {
            f.values.row(v) = flat.segment<3>(3 * v).transpose();
        }
        samples.push_back(std::move(f));
    }

    const auto model = train_pca(samples, {0, 1, 2}, 1);
    // Projecting any sample onto the single mode reproduces it.
    for (const auto& s : samples) {
        Eigen::VectorXd flat(3 * N);
        for (int v = 0; v < N; ++v) {
            flat.segment<3>(3 * v) = s.values.row(v).transpose();
        }
        const Eigen::VectorXd centered = flat - model.mean;
        const Eigen::VectorXd residual = centered - model.basis * (model.basis.transpose() * centered);
        CHECK(residual.cwiseAbs().maxCoeff() < 1e-9);
    }
    CHECK(model.explained_variance_ratio(0) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("train_pca basis is orthonormal and reconstructs at full rank") {
    std::mt19937 rng(127);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int N = 25;
    const int n_samples = 8;
    std::vector<DisplacementField> samples;
    for (int i = 0; i < n_samples; ++i) {
        DisplacementField f;
        f.values.resize(N, 3);
        for (int v = 0; v < N; ++v) {
            for (int c = 0; c < 3; ++c) {
                f.values(v, c) = gauss(rng);
            }
        }
        samples.push_back(std::move(f));
    }

    const auto model = train_pca(samples, {0, 5, 9}, n_samples - 1);
    const Eigen::MatrixXd gram = model.basis.transpose() * model.basis;
    CHECK((gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() <
          1e-9);

    for (const auto& s : samples) {
        Eigen::VectorXd flat(3 * N);
        for (int v = 0; v < N; ++v) {
            flat.segment<3>(3 * v) = s.values.row(v).transpose();
        }
        const Eigen::VectorXd centered = flat - model.mean;
        const Eigen::VectorXd recon = model.basis * (model.basis.transpose() * centered);
        CHECK((recon - centered).cwiseAbs().maxCoeff() < 1e-6);
    }

    CHECK_THROWS_AS(train_pca(samples, {0}, n_samples + 1), std::invalid_argument);
}

TEST_CASE("PCA reconstruction error is nonincreasing in component count") {
    std::mt19937 rng(131);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int N = 20;
    std::vector<DisplacementField> samples;
    for (int i = 0; i < 12; ++i) {
        DisplacementField f;
        f.values.resize(N, 3);
        for (int v = 0; v < N; ++v) {
            for (int c = 0; c < 3; ++c) {
                f.values(v, c) = gauss(rng);
            }
        }
        samples.push_back(std::move(f));
    }

    double previous = std::numeric_limits<double>::infinity();
    for (int m : {2, 4, 6, 8}) {
        const auto model = train_pca(samples, {0}, m);
        double total = 0.0;
        for (const auto& s : samples) {
            Eigen::VectorXd flat(3 * N);
            for (int v = 0; v < N; ++v) {
                flat.segment<3>(3 * v) = s.values.row(v).transpose();
            }
            const Eigen::VectorXd centered = flat - model.mean;
            total += (centered - model.basis * (model.basis.transpose() * centered)).squaredNorm();
        }
        CHECK(total <= previous + 1e-9);
        previous = total;
    }
}

TEST_CASE("fit_coefficients recovers planted coefficients") {
    std::mt19937 rng(137);
    const auto model = testing::random_orthonormal_model(rng, 100, 12, 8);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXd planted(8);
    for (int i = 0; i < 8; ++i) {
        planted(i) = gauss(rng);
    }
    SparseDisplacement target;
    const Eigen::VectorXd flat = model.landmark_rows * planted + model.mean_landmarks;
    target.values.resize(12, 3);
    for (int j = 0; j < 12; ++j) {
        target.values.row(j) = flat.segment<3>(3 * j).transpose();
    }
    const Eigen::VectorXd fitted = fit_coefficients(model, target, 0.0);
    CHECK((fitted - planted).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("fit_coefficients centered target gives zero") {
    std::mt19937 rng(139);
    const auto model = testing::random_orthonormal_model(rng, 60, 10, 6, /*zero_mean=*/false);
    SparseDisplacement target;
    target.values.resize(10, 3);
    for (int j = 0; j < 10; ++j) {
        target.values.row(j) = model.mean_landmarks.segment<3>(3 * j).transpose();
    }
    const Eigen::VectorXd fitted = fit_coefficients(model, target, 0.0);
    CHECK(fitted.cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("huge ridge drives coefficients to zero") {
    std::mt19937 rng(149);
    const auto model = testing::random_orthonormal_model(rng, 60, 10, 6);
    SparseDisplacement target;
    target.values = Eigen::Matrix<double, Eigen::Dynamic, 3>::Random(10, 3);
    const Eigen::VectorXd fitted = fit_coefficients(model, target, 1e12);
    CHECK(fitted.norm() < 1e-6);
}

TEST_CASE("rank-deficient fit without ridge is an error") {
    std::mt19937 rng(151);
    // More modes than landmark equations: 3k = 6 < m = 8.
    const auto model = testing::random_orthonormal_model(rng, 50, 2, 8);
    SparseDisplacement target;
    target.values = Eigen::Matrix<double, Eigen::Dynamic, 3>::Random(2, 3);
    CHECK_THROWS_WITH_AS(fit_coefficients(model, target, 0.0), doctest::Contains("ridge"),
                         std::invalid_argument);
    // The same system solves once regularized.
    CHECK_NOTHROW(fit_coefficients(model, target, 1e-6));
}

TEST_CASE("fitted solution is a local minimum of the regularized objective") {
    std::mt19937 rng(157);
    const auto model = testing::random_orthonormal_model(rng, 80, 10, 6);
    SparseDisplacement target;
    target.values = Eigen::Matrix<double, Eigen::Dynamic, 3>::Random(10, 3);
    const double ridge = 1e-3;
    const Eigen::VectorXd fitted = fit_coefficients(model, target, ridge);

    Eigen::VectorXd flat(30);
    for (int j = 0; j < 10; ++j) {
        flat.segment<3>(3 * j) = target.values.row(j).transpose();
    }
    auto objective = [&](const Eigen::VectorXd& c) {
        return (model.landmark_rows * c + model.mean_landmarks - flat).squaredNorm() +
               ridge * c.squaredNorm();
    };
    const double at_min = objective(fitted);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::VectorXd delta(6);
        for (int i = 0; i < 6; ++i) {
            delta(i) = gauss(rng);
        }
        delta *= 1e-3 / delta.norm();
        CHECK(objective(fitted + delta) >= at_min);
    }
}

TEST_CASE("apply_deformation identity and linearity") {
    std::mt19937 rng(163);
    const Mesh neutral = testing::random_mesh(rng, 40, 5);
    const auto model = testing::random_orthonormal_model(rng, 40, 5, 4);

    const auto [same, zero_field] =
        apply_deformation(model, Eigen::VectorXd::Zero(4), neutral);
    CHECK((same.vertices - neutral.vertices).cwiseAbs().maxCoeff() == 0.0);
    CHECK(zero_field.values.cwiseAbs().maxCoeff() == 0.0);

    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXd c1(4), c2(4);
    for (int i = 0; i < 4; ++i) {
        c1(i) = gauss(rng);
        c2(i) = gauss(rng);
    }
    const auto d1 = apply_deformation(model, c1, neutral).second;
    const auto d2 = apply_deformation(model, c2, neutral).second;
    const auto d12 = apply_deformation(model, c1 + c2, neutral).second;
    CHECK((d12.values - d1.values - d2.values).cwiseAbs().maxCoeff() < 1e-10);

    // Topology untouched.
    const auto deformed = apply_deformation(model, c1, neutral).first;
    CHECK(deformed.vertex_count() == neutral.vertex_count());
    CHECK(deformed.topology.get() == neutral.topology.get());
}

TEST_CASE("vertex weights follow the inverse-distance law") {
    auto topo = std::make_shared<MeshTopology>();
    topo->vertex_count = 4;
    topo->landmark_indices = {0};
    Mesh mesh;
    mesh.topology = topo;
    mesh.vertices.resize(4, 3);
    mesh.vertices << 0, 0, 0,  // landmark
        1, 0, 0,               // distance 1
        2, 0, 0,               // distance 2
        0, 0, 0;               // coincident with the landmark
    const auto w = compute_vertex_weights(mesh);
    CHECK(w.weights(0) == 1.0);
    CHECK(w.weights(3) == 1.0);
    CHECK(w.weights(1) / w.weights(2) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(w.weights(1) == doctest::Approx(1.0).epsilon(1e-12));  // closest non-landmark is the max
}

TEST_CASE("vertex weights are monotone in nearest-landmark distance") {
    std::mt19937 rng(167);
    for (int trial = 0; trial < 10; ++trial) {
        const Mesh mesh = testing::random_mesh(rng, 60, 6);
        const auto w = compute_vertex_weights(mesh);
        std::vector<std::pair<double, double>> dist_weight;
        for (int i = 0; i < 60; ++i) {
            double min_d = std::numeric_limits<double>::infinity();
            for (int v : mesh.topology->landmark_indices) {
                min_d = std::min(min_d, (mesh.vertices.row(i) - mesh.vertices.row(v)).norm());
            }
            dist_weight.emplace_back(min_d, w.weights(i));
            CHECK(w.weights(i) > 0.0);
            CHECK(w.weights(i) <= 1.0);
        }
        std::sort(dist_weight.begin(), dist_weight.end());
        for (size_t i = 0; i + 1 < dist_weight.size(); ++i) {
            CHECK(dist_weight[i].second >= dist_weight[i + 1].second - 1e-12);
        }
    }
}

TEST_CASE("deform_sequence with planted coefficients reproduces ground truth") {
    std::mt19937 rng(173);
    const int N = 80, k = 10, m = 6, T = 10;
    const Mesh neutral = testing::random_mesh(rng, N, k);
    const auto model = testing::random_orthonormal_model(rng, N, k, m);

    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Eigen::VectorXd> coeffs;
    std::vector<Mesh> truth;
    LandmarkSequence lms;
    lms.dt = 1.0 / (T - 1);
    for (int t = 0; t < T; ++t) {
        Eigen::VectorXd c(m);
        if (t == 0) {
            c.setZero();  // frame 0 is the neutral configuration
        } else {
            for (int i = 0; i < m; ++i) {
                c(i) = gauss(rng);
            }
        }
        coeffs.push_back(c);
        const auto [mesh, field] = apply_deformation(model, c, neutral);
        truth.push_back(mesh);
        lms.frames.push_back(extract_landmarks(mesh));
    }

    const auto out = deform_sequence(neutral, lms, model, 0.0);
    REQUIRE(out.size() == static_cast<size_t>(T));
    for (int t = 0; t < T; ++t) {
        const double err = (out[t].vertices - truth[t].vertices).rowwise().norm().maxCoeff();
        CHECK(err < 1e-6);
    }
}

TEST_CASE("deform_sequence constant input gives constant output") {
    std::mt19937 rng(179);
    const Mesh neutral = testing::random_mesh(rng, 50, 8);
    const auto model = testing::random_orthonormal_model(rng, 50, 8, 5);
    LandmarkSequence lms;
    lms.dt = 1.0;
    const LandmarkFrame f = extract_landmarks(neutral);
    lms.frames = {f, f, f};
    const auto out = deform_sequence(neutral, lms, model, 0.0);
    REQUIRE(out.size() == 3);
    for (const auto& mesh : out) {
        CHECK((mesh.vertices - out.front().vertices).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("model consistency verification catches tampering") {
    std::mt19937 rng(181);
    auto model = testing::random_orthonormal_model(rng, 30, 4, 3);
    CHECK_NOTHROW(model.verify_consistency());
    model.landmark_rows(0, 0) += 1e-6;
    CHECK_THROWS_AS(model.verify_consistency(), std::invalid_argument);
}
