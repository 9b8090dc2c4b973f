#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>

#include "mssp/cycles.hpp"
#include "mssp/dijkstra.hpp"
#include "mssp/face_sweep.hpp"
#include "mssp/generate.hpp"

using namespace mssp;

namespace {

struct Planar {
  std::shared_ptr<const EmbeddedGraph> g;
  int face;
};

Planar planar(int n) {
  int k = static_cast<int>(std::sqrt(n));
  auto g = std::make_shared<const EmbeddedGraph>(make_planar_triangulation(n, k, random_weights(n), n));
  int f = g->face_size(g->face_of(0, 0)) == k ? g->face_of(0, 0) : g->face_of(0, 1);
  return {g, f};
}

template <class Num>
void BM_PlanarSweep(benchmark::State& state) {
  auto in = planar(static_cast<int>(state.range(0)));
  long pivots = 0;
  for (auto _ : state) {
    auto sw = sweep_face<Num>(in.g, in.face);
    pivots = sw.stats().pivots;
    benchmark::DoNotOptimize(sw);
  }
  state.counters["pivots"] = static_cast<double>(pivots);
  state.SetComplexityN(state.range(0));
}

// Baseline: one Dijkstra per face vertex.
template <class Num>
void BM_DijkstraPerFaceVertex(benchmark::State& state) {
  auto in = planar(static_cast<int>(state.range(0)));
  auto w = in.g->weights<Num>();
  auto walk = in.g->face_darts(in.face);
  for (auto _ : state)
    for (int d : walk) benchmark::DoNotOptimize(dijkstra<Num>(*in.g, in.g->tail(d), w));
  state.SetComplexityN(state.range(0));
}

template <class Num>
void BM_GenusSweep(benchmark::State& state) {
  int genus = static_cast<int>(state.range(0));
  int dart = 0;
  auto g = std::make_shared<const EmbeddedGraph>(
      merge_faces(make_genus_glued(genus, 1000, random_weights(genus), genus), 10, genus, &dart));
  int f = g->face_of(dart, 0);
  for (auto _ : state) benchmark::DoNotOptimize(sweep_face<Num>(g, f));
}

void BM_KleinCoverSweep(benchmark::State& state) {
  int w = static_cast<int>(state.range(0));
  auto g = std::make_shared<const EmbeddedGraph>(make_klein_grid(w, w, random_weights(w), w));
  for (auto _ : state) benchmark::DoNotOptimize(sweep_face<double>(g, g->face_of(0, 0)));
}

void BM_Noncontractible(benchmark::State& state) {
  int genus = static_cast<int>(state.range(0));
  Surface s = make_surface(make_genus_glued(genus, 200, random_weights(genus), genus));
  for (auto _ : state) benchmark::DoNotOptimize(shortest_noncontractible(s));
}

void BM_Nonseparating(benchmark::State& state) {
  int genus = static_cast<int>(state.range(0));
  Surface s = make_surface(make_genus_glued(genus, 200, random_weights(genus), genus));
  for (auto _ : state) benchmark::DoNotOptimize(shortest_nonseparating(s));
}

}  // namespace

BENCHMARK(BM_PlanarSweep<double>)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Unit(benchmark::kMillisecond)->Complexity(benchmark::oNLogN);
BENCHMARK(BM_PlanarSweep<Rational>)->RangeMultiplier(4)->Range(1 << 10, 1 << 14)->Unit(benchmark::kMillisecond)->Complexity(benchmark::oNLogN);
BENCHMARK(BM_DijkstraPerFaceVertex<double>)->RangeMultiplier(4)->Range(1 << 10, 1 << 14)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GenusSweep<double>)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GenusSweep<Rational>)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KleinCoverSweep)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Noncontractible)->DenseRange(1, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Nonseparating)->DenseRange(1, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
