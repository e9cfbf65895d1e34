#include "mkpca/clustering.hpp"
#include "mkpca/integration.hpp"
#include "mkpca/kernels.hpp"
#include "mkpca/kpca.hpp"
#include "mkpca/survival.hpp"

#include "helpers.hpp"

#include <benchmark/benchmark.h>

using namespace mkpca;
using mkpca::testing::Rng;

namespace {

std::vector<KernelMatrix> centered_kernels(int m, Eigen::Index n, Eigen::Index d) {
    Rng rng(404);
    std::vector<KernelMatrix> kernels;
    for (int i = 0; i < m; ++i) {
        DataMatrix x = mkpca::testing::make_view(rng, n, d, "v" + std::to_string(i));
        kernels.push_back(center_kernel(gaussian_kernel(x, default_gamma(d))));
    }
    return kernels;
}

}  // namespace

static void BM_GaussianKernel(benchmark::State& state) {
    Rng rng(1);
    DataMatrix x = mkpca::testing::make_view(rng, state.range(0), 500, "v");
    double gamma = default_gamma(500);
    for (auto _ : state) {
        KernelMatrix k = gaussian_kernel(x, gamma);
        benchmark::DoNotOptimize(k.values().data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GaussianKernel)->RangeMultiplier(2)->Range(32, 256)->Complexity();

static void BM_Eigendecompose(benchmark::State& state) {
    auto kernels = centered_kernels(1, state.range(0), 20);
    for (auto _ : state) {
        EigenSystem eig = eigendecompose(kernels[0]);
        benchmark::DoNotOptimize(eig.eigenvalues.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Eigendecompose)->RangeMultiplier(2)->Range(32, 256)->Complexity();

static void BM_WeightGridSearch(benchmark::State& state) {
    auto kernels = centered_kernels(3, state.range(0), 20);
    for (auto _ : state) {
        auto result = optimize_weights(kernels, 3, 0.1);
        benchmark::DoNotOptimize(result.score);
    }
}
BENCHMARK(BM_WeightGridSearch)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_SelectDimension(benchmark::State& state) {
    auto kernels = centered_kernels(3, 128, 20);
    for (auto _ : state) {
        auto selection = select_dimension(kernels, state.range(0), 0.1);
        benchmark::DoNotOptimize(selection.p_star);
    }
}
BENCHMARK(BM_SelectDimension)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_Project(benchmark::State& state) {
    auto kernels = centered_kernels(1, state.range(0), 20);
    auto ids = mkpca::testing::sample_ids(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        ProjectionResult proj = project(kernels[0], ids, 3);
        benchmark::DoNotOptimize(proj.coordinates.data());
    }
}
BENCHMARK(BM_Project)->Arg(128)->Arg(256);

static void BM_KMeans(benchmark::State& state) {
    Eigen::MatrixXd centers(4, 3);
    centers << 0, 0, 0, 5, 0, 0, 0, 5, 0, 0, 0, 5;
    auto blobs = mkpca::testing::make_blobs(7, centers, static_cast<int>(state.range(0) / 4),
                                            0.8);
    for (auto _ : state) {
        Clustering result = kmeans(blobs.points, 4, 42, 20);
        benchmark::DoNotOptimize(result.inertia);
    }
}
BENCHMARK(BM_KMeans)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_SilhouetteWidth(benchmark::State& state) {
    Eigen::MatrixXd centers(3, 2);
    centers << 0, 0, 6, 0, 0, 6;
    auto blobs = mkpca::testing::make_blobs(11, centers, static_cast<int>(state.range(0) / 3),
                                            0.5);
    for (auto _ : state) {
        double s = silhouette_width(blobs.points, blobs.labels);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_SilhouetteWidth)->Arg(99)->Arg(213);

static void BM_LogRank(benchmark::State& state) {
    Rng rng(21);
    std::vector<SurvivalRecord> records;
    std::vector<int> groups;
    for (int i = 0; i < state.range(0); ++i) {
        records.push_back(SurvivalRecord{"s" + std::to_string(i),
                                         std::floor(rng.uniform() * 500.0) + 1.0,
                                         rng.uniform() < 0.7});
        groups.push_back(i % 4);
    }
    for (auto _ : state) {
        LogRankResult result = logrank_test(groups, records);
        benchmark::DoNotOptimize(result.chi_square);
    }
}
BENCHMARK(BM_LogRank)->Arg(100)->Arg(213);

BENCHMARK_MAIN();
