// Serial reference vs OpenMP kernels on a synthetic fractal tile.
//   ./clear_bench --benchmark_filter=local_std
// Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <map>

#include "clear/bsd.hpp"
#include "clear/decompose.hpp"
#include "clear/kernels.hpp"
#include "clear/synth.hpp"

namespace {

using namespace clear;

struct Fixture {
  TerrainTile tile;
  SeedSet seeds;
  std::vector<Ring> polygons;
  std::vector<PointSet> cells;
  std::vector<Region> regions;
  FitParams fit{2.0, 4};
};

const Fixture& fixture(int side) {
  static std::map<int, Fixture> cache;
  auto it = cache.find(side);
  if (it != cache.end()) return it->second;
  Fixture f;
  SynthSpec spec;
  spec.kind = "fractal";
  spec.width = side;
  spec.height = side;
  spec.cell_size = 10.0;
  spec.params = {{"relief", 80.0}};
  f.tile = synth_tile(spec, 42);
  BsdParams bsd;
  bsd.n = side * side / 40;
  bsd.alpha_bdy = 0.5;
  f.seeds = select_seeds(f.tile, local_std(f.tile, 5), bsd);
  for (const auto& c : voronoi_partition(f.seeds, f.tile)) f.polygons.push_back(c.vertices);
  const Grid<int> labels = voronoi_labels(f.seeds, side, side);
  f.cells = gather_cell_points(f.tile, labels, static_cast<int>(f.polygons.size()));
  ClearParams params;
  params.bsd = bsd;
  params.fit = f.fit;
  f.regions = decompose_clear(f.tile, params).regions;
  return cache.emplace(side, std::move(f)).first->second;
}

template <bool Parallel>
void local_std(benchmark::State& state) {
  const auto& f = fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto g = Parallel ? kernels::omp::local_std(f.tile.elevation, 5)
                      : kernels::serial::local_std(f.tile.elevation, 5);
    benchmark::DoNotOptimize(g);
  }
}

template <bool Parallel>
void local_entropy(benchmark::State& state) {
  const auto& f = fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto g = Parallel ? kernels::omp::local_entropy(f.tile.landcover, 3)
                      : kernels::serial::local_entropy(f.tile.landcover, 3);
    benchmark::DoNotOptimize(g);
  }
}

template <bool Parallel>
void voronoi(benchmark::State& state) {
  const auto& f = fixture(static_cast<int>(state.range(0)));
  const int side = f.tile.width;
  for (auto _ : state) {
    auto cells = Parallel ? kernels::omp::voronoi_cells(f.seeds.seeds, side, side, 10.0)
                          : kernels::serial::voronoi_cells(f.seeds.seeds, side, side, 10.0);
    auto labels = Parallel ? kernels::omp::nearest_seed_labels(f.seeds.seeds, side, side)
                           : kernels::serial::nearest_seed_labels(f.seeds.seeds, side, side);
    benchmark::DoNotOptimize(cells);
    benchmark::DoNotOptimize(labels);
  }
}

template <bool Parallel>
void fit_cells(benchmark::State& state) {
  const auto& f = fixture(static_cast<int>(state.range(0)));
  RegionContext ctx;
  ctx.cell_size = f.tile.cell_size;
  ctx.classes = &f.tile.classes;
  for (auto _ : state) {
    auto fits = Parallel ? kernels::omp::fit_cells(f.cells, f.polygons, f.fit, ctx)
                         : kernels::serial::fit_cells(f.cells, f.polygons, f.fit, ctx);
    benchmark::DoNotOptimize(fits);
  }
}

template <bool Parallel>
void rasterize(benchmark::State& state) {
  const auto& f = fixture(static_cast<int>(state.range(0)));
  const int side = f.tile.width;
  for (auto _ : state) {
    auto rec = Parallel ? kernels::omp::rasterize(f.regions, side, side, 10.0)
                        : kernels::serial::rasterize(f.regions, side, side, 10.0);
    benchmark::DoNotOptimize(rec);
  }
}

}  // namespace

#define CLEAR_PAIR(fn)                                                                    \
  BENCHMARK(fn<false>)->Name(#fn "/serial")->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond); \
  BENCHMARK(fn<true>)->Name(#fn "/omp")->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond)

CLEAR_PAIR(local_std);
CLEAR_PAIR(local_entropy);
CLEAR_PAIR(voronoi);
CLEAR_PAIR(fit_cells);
CLEAR_PAIR(rasterize);

BENCHMARK_MAIN();
