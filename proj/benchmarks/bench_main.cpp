#include "tropcross/divisor.hpp"
#include "tropcross/families.hpp"
#include "tropcross/immersion_builder.hpp"
#include "tropcross/newton_polygon.hpp"
#include "tropcross/spatial_curve.hpp"

#include <benchmark/benchmark.h>

using namespace tropcross;

namespace {

AbstractTropicalCurve theta_curve() {
    return make_family(parse_family_spec({"theta", "a=1", "b=2", "c=3"}));
}

// Cube graph with distinct rational lengths.
AbstractTropicalCurve cube() {
    const int ends[12][2] = {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 5}, {5, 6}, {6, 7}, {7, 4}, {0, 4}, {1, 5}, {2, 6}, {3, 7}};
    std::vector<Edge> es;
    for (int k = 0; k < 12; ++k) es.push_back({ends[k][0], ends[k][1], Length(Rational(k + 2, k % 4 + 1))});
    return AbstractTropicalCurve({0, 1, 2, 3, 4, 5, 6, 7}, es);
}

void BM_BuildImmersionTheta(benchmark::State& state) {
    auto c = theta_curve();
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(build_immersion(c, seed++));
}
BENCHMARK(BM_BuildImmersionTheta)->Unit(benchmark::kMillisecond);

void BM_BuildImmersionCube(benchmark::State& state) {
    auto c = cube();
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(build_immersion(c, seed++));
}
BENCHMARK(BM_BuildImmersionCube)->Unit(benchmark::kMillisecond);

void BM_BuildEmbeddingCube(benchmark::State& state) {
    auto c = cube();
    for (auto _ : state) benchmark::DoNotOptimize(build_embedding(c, 3, 1));
}
BENCHMARK(BM_BuildEmbeddingCube)->Unit(benchmark::kMillisecond);

void BM_ContactsCube(benchmark::State& state) {
    auto e = build_embedding(cube(), 3, 1);
    for (auto _ : state) benchmark::DoNotOptimize(find_contacts(e.curve));
}
BENCHMARK(BM_ContactsCube)->Unit(benchmark::kMillisecond);

void BM_DualSubdivision(benchmark::State& state) {
    auto im = build_immersion(cube(), 2);
    for (auto _ : state) benchmark::DoNotOptimize(dual_subdivision(im.curve));
}
BENCHMARK(BM_DualSubdivision)->Unit(benchmark::kMillisecond);

void BM_VerifyIdentities(benchmark::State& state) {
    auto rep = plane_representative(parse_family_spec({"sun", "blocks=5"}));
    for (auto _ : state) benchmark::DoNotOptimize(verify_identities(rep.curve));
}
BENCHMARK(BM_VerifyIdentities)->Unit(benchmark::kMicrosecond);

void BM_LatticeWidth(benchmark::State& state) {
    std::vector<LatticePoint> pts;
    for (std::int64_t k = 0; k < state.range(0); ++k) pts.push_back({k * k % 37, (3 * k + 5) % 29});
    auto p = LatticePolygon::hull_of(pts);
    for (auto _ : state) benchmark::DoNotOptimize(lattice_width(p));
}
BENCHMARK(BM_LatticeWidth)->Arg(8)->Arg(32);

void BM_DharReduce(benchmark::State& state) {
    ModelOptions opts;
    opts.refinement = state.range(0);
    opts.max_vertices = 1024;
    auto m = uniform_model(make_family(generic_chain_of_loops(3)), {}, opts);
    Config d(m.num_vertices, 0);
    d[0] = static_cast<std::int64_t>(m.num_vertices);
    d[m.num_vertices - 1] = -3;
    for (auto _ : state) benchmark::DoNotOptimize(dhar_reduce(m, d, m.num_vertices / 2));
}
BENCHMARK(BM_DharReduce)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMicrosecond);

void BM_GonalityTheta(benchmark::State& state) {
    ModelOptions opts;
    opts.refinement = state.range(0);
    auto c = make_family(parse_family_spec({"theta", "a=1", "b=1", "c=1"}));
    for (auto _ : state) benchmark::DoNotOptimize(gonality(c, std::nullopt, opts));
}
BENCHMARK(BM_GonalityTheta)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
