#include <benchmark/benchmark.h>

#include <random>

#include "morph4d/deform.hpp"
#include "morph4d/sphere.hpp"
#include "morph4d/srvf.hpp"

using namespace morph4d;

namespace {

LandmarkSequence make_sequence(std::mt19937& rng, int k, int T) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    LandmarkSequence seq;
    seq.dt = 1.0 / (T - 1);
    LandmarkFrame base(k, 3);
    for (int i = 0; i < k; ++i) {
        for (int c = 0; c < 3; ++c) {
            base(i, c) = gauss(rng);
        }
    }
    for (int t = 0; t < T; ++t) {
        LandmarkFrame f = base;
        const double s = static_cast<double>(t + 1) / T;
        f.array() += 0.3 * std::sin(6.0 * s) + 0.5 * s;
        seq.frames.push_back(std::move(f));
    }
    return seq;
}

void bench_srvf_encode(benchmark::State& state) {
    std::mt19937 rng(1);
    const auto seq = make_sequence(rng, static_cast<int>(state.range(0)), 100);
    for (auto _ : state) {
        benchmark::DoNotOptimize(srvf_encode(seq));
    }
}
BENCHMARK(bench_srvf_encode)->Arg(13)->Arg(68);

void bench_srvf_decode(benchmark::State& state) {
    std::mt19937 rng(2);
    const auto seq = make_sequence(rng, static_cast<int>(state.range(0)), 100);
    const Srvf q = srvf_encode(seq).denormalized();
    for (auto _ : state) {
        benchmark::DoNotOptimize(srvf_decode(q, seq.frames.front()));
    }
}
BENCHMARK(bench_srvf_decode)->Arg(13)->Arg(68);

void bench_geodesic_interpolate(benchmark::State& state) {
    std::mt19937 rng(3);
    const Srvf a = srvf_encode(make_sequence(rng, 68, 100));
    const Srvf b = srvf_encode(make_sequence(rng, 68, 100));
    double tau = 0.0;
    for (auto _ : state) {
        tau = tau < 1.0 ? tau + 1.0 / 64 : 0.0;
        benchmark::DoNotOptimize(geodesic_interpolate(a, b, tau));
    }
}
BENCHMARK(bench_geodesic_interpolate);

void bench_karcher_mean(benchmark::State& state) {
    std::mt19937 rng(4);
    std::vector<Srvf> points;
    for (int i = 0; i < 10; ++i) {
        points.push_back(srvf_encode(make_sequence(rng, 13, 50)));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(karcher_mean(points));
    }
}
BENCHMARK(bench_karcher_mean);

void bench_fit_coefficients(benchmark::State& state) {
    std::mt19937 rng(5);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int N = 1000, k = 68;
    const int m = static_cast<int>(state.range(0));

    std::vector<DisplacementField> fields;
    for (int s = 0; s < 2 * m; ++s) {
        DisplacementField f;
        f.values.resize(N, 3);
        for (int i = 0; i < N; ++i) {
            for (int c = 0; c < 3; ++c) {
                f.values(i, c) = gauss(rng);
            }
        }
        fields.push_back(std::move(f));
    }
    std::vector<int> landmarks(k);
    for (int j = 0; j < k; ++j) {
        landmarks[j] = j;
    }
    const auto model = train_pca(fields, landmarks, m);

    SparseDisplacement target;
    target.values.resize(k, 3);
    for (int j = 0; j < k; ++j) {
        for (int c = 0; c < 3; ++c) {
            target.values(j, c) = gauss(rng);
        }
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit_coefficients(model, target, 1e-8));
    }
}
BENCHMARK(bench_fit_coefficients)->Arg(20)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
