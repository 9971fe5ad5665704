#include <benchmark/benchmark.h>

#include "singcat/approximation.hpp"
#include "singcat/io.hpp"
#include "singcat/random.hpp"
#include "singcat/singularity.hpp"

using namespace singcat;

namespace {

io::AlgebraFile ex313(long n, bool quotient) {
    linalg::set_prime(2);
    return io::load_algebra(std::string(SINGCAT_FIXTURE_DIR) + (quotient ? "/ex313_quot.alg" : "/ex313.alg"), {{"n", n}});
}

void BM_RowReduce(benchmark::State& st) {
    linalg::set_prime(3);
    const auto n = static_cast<std::size_t>(st.range(0));
    Rng rng(1);
    linalg::Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = random_scalar(rng);
    for (auto _ : st) benchmark::DoNotOptimize(linalg::rank(m));
}
BENCHMARK(BM_RowReduce)->Arg(32)->Arg(128)->Arg(256);

void BM_BuildAlgebra(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(ex313(st.range(0), false).alg->dim());
}
BENCHMARK(BM_BuildAlgebra)->DenseRange(2, 6, 2);

void BM_Resolution(benchmark::State& st) {
    auto a = ex313(st.range(0), false).alg;
    Module s2 = simple(a, 1);
    for (auto _ : st) benchmark::DoNotOptimize(min_proj_resolution(s2).steps());
}
BENCHMARK(BM_Resolution)->DenseRange(2, 6, 2);

void BM_StableHom(benchmark::State& st) {
    auto a = ex313(st.range(0), true).alg;
    Rng rng(3);
    std::vector<Module> ms;
    for (int i = 0; i < 8; ++i) ms.push_back(random_module(a, rng, 8));
    for (auto _ : st)
        for (const auto& m : ms)
            for (const auto& n : ms) benchmark::DoNotOptimize(stable_hom_dim(m, n));
}
BENCHMARK(BM_StableHom)->Arg(2)->Arg(3);

void BM_DsgEnumeration(benchmark::State& st) {
    auto a = ex313(st.range(0), true).alg;
    SeedOptions o;
    o.layers = true;
    for (auto _ : st) benchmark::DoNotOptimize(dsg_indecomposables(a, o).objects.size());
}
BENCHMARK(BM_DsgEnumeration)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_DualTower(benchmark::State& st) {
    auto a = ex313(st.range(0), false).alg;
    Complex t = projective_resolution_complex(simple(a, 0));
    auto gens = regular_generators(a);
    for (auto _ : st) benchmark::DoNotOptimize(dual_bousfield_tower(t, gens).stages.size());
}
BENCHMARK(BM_DualTower)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
