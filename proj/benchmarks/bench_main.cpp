#include <benchmark/benchmark.h>

#include "z2cross/instances.hpp"
#include "z2cross/ktheory.hpp"
#include "z2cross/models.hpp"
#include "z2cross/random.hpp"

using namespace z2cross;

namespace {

void BM_generate_full_matrix(benchmark::State& state) {
  Eigen::Index n = state.range(0);
  CMatrix shift = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) shift(i, i + 1) = 1.0;
  for (auto _ : state) {
    StarAlgebra alg = StarAlgebra::generate(n, {shift});
    benchmark::DoNotOptimize(alg.dim());
  }
}
BENCHMARK(BM_generate_full_matrix)->Arg(2)->Arg(3)->Arg(4);

void BM_commutant(benchmark::State& state) {
  RandomInstance inst = random_instance(5, int(state.range(0)));
  for (auto _ : state) {
    StarAlgebra comm = commutant(inst.algebra);
    benchmark::DoNotOptimize(comm.dim());
  }
}
BENCHMARK(BM_commutant)->Arg(2)->Arg(3);

void BM_crossed_product(benchmark::State& state) {
  CircleModel m = build_circle(int(state.range(0)), CirclePointMap::Conj);
  for (auto _ : state) {
    CrossedProduct cp = crossed_product(m.sigma);
    benchmark::DoNotOptimize(cp.algebra.dim());
  }
}
BENCHMARK(BM_crossed_product)->Arg(4)->Arg(8);

void BM_census(benchmark::State& state) {
  CrossedProduct cp =
      crossed_product(build_circle(int(state.range(0)), CirclePointMap::Flip).sigma);
  for (auto _ : state) {
    Census c = census(cp, 7);
    benchmark::DoNotOptimize(c.class_dims.size());
  }
}
BENCHMARK(BM_census)->Arg(4)->Arg(8);

void BM_smith_normal_form(benchmark::State& state) {
  Eigen::Index n = state.range(0);
  Rng rng(99);
  IntMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      m.at(i, j) = BigInt(long(rng.integer(41)) - 20);
  for (auto _ : state) {
    SmithDecomposition s = smith_normal_form(m);
    benchmark::DoNotOptimize(s.d.entries.size());
  }
}
BENCHMARK(BM_smith_normal_form)->Arg(4)->Arg(6)->Arg(8);

void BM_k0_map_embedding(benchmark::State& state) {
  CrossedProduct cp =
      crossed_product(build_circle(int(state.range(0)), CirclePointMap::Flip).sigma);
  for (auto _ : state) {
    IntMatrix m = k0_map(cp.embed, 7);
    benchmark::DoNotOptimize(m.entries.size());
  }
}
BENCHMARK(BM_k0_map_embedding)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
