// Microbenchmarks for the kernels the searches spend their time in: exact
// matrix products, principal congruence closure, stabilizer-chain group
// order, quandle construction, and table isomorphism.

#include <benchmark/benchmark.h>

#include <algorithm>
#include <vector>

#include "qlat/common.hpp"
#include "qlat/conglat.hpp"
#include "qlat/constructions.hpp"
#include "qlat/linfq.hpp"
#include "qlat/perm.hpp"
#include "qlat/quandle.hpp"
#include "qlat/quiso.hpp"

using namespace qlat;

namespace {

FqMatrix random_invertible(int p, int n, std::mt19937_64& rng) {
  for (;;) {
    std::vector<std::vector<int>> rows(static_cast<std::size_t>(n),
                                       std::vector<int>(static_cast<std::size_t>(n)));
    for (auto& r : rows)
      for (auto& v : r) v = static_cast<int>(rng() % static_cast<unsigned>(p));
    FqMatrix m = FqMatrix::from_rows(p, rows);
    if (m.rank() == n) return m;
  }
}

void BM_f2_matrix_mul_8x8(benchmark::State& state) {
  auto& rng = test_rng();
  FqMatrix a = random_invertible(2, 8, rng);
  FqMatrix b = random_invertible(2, 8, rng);
  for (auto _ : state) {
    FqMatrix c = a.mul(b);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_f2_matrix_mul_8x8);

void BM_f7_matrix_inverse_2x2(benchmark::State& state) {
  auto& rng = test_rng();
  FqMatrix a = random_invertible(7, 2, rng);
  for (auto _ : state) {
    FqMatrix c = a.inv();
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_f7_matrix_inverse_2x2);

void BM_principal_congruence_48(benchmark::State& state) {
  QuandleTable q = build_si48().quandle;
  for (auto _ : state) {
    Congruence c = principal_congruence(q, 0, 1);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_principal_congruence_48);

void BM_congruence_lattice_48(benchmark::State& state) {
  QuandleTable q = build_si48().quandle;
  for (auto _ : state) {
    auto lat = congruence_lattice(q);
    benchmark::DoNotOptimize(lat);
  }
}
BENCHMARK(BM_congruence_lattice_48);

void BM_stabilizer_chain_order(benchmark::State& state) {
  QuandleTable q = build_si48().quandle;
  std::vector<Permutation> gens = q.lmlt().generators();
  for (auto _ : state) {
    PermGroup g(q.size(), gens);  // fresh group: order() builds the chain
    benchmark::DoNotOptimize(g.order());
  }
}
BENCHMARK(BM_stabilizer_chain_order);

void BM_build_coset_quandle_28(benchmark::State& state) {
  auto gk = build_gk(7);
  for (auto _ : state) {
    auto q = build_q4p(gk, 1);
    benchmark::DoNotOptimize(q);
  }
}
BENCHMARK(BM_build_coset_quandle_28);

void BM_isomorphism_48(benchmark::State& state) {
  QuandleTable a = build_si48().quandle;
  auto& rng = test_rng();
  std::vector<int> img(static_cast<std::size_t>(a.size()));
  for (std::size_t i = 0; i < img.size(); ++i) img[i] = static_cast<int>(i);
  std::shuffle(img.begin(), img.end(), rng);
  QuandleTable b = relabel(a, Permutation::from_images(img));
  for (auto _ : state) {
    auto m = find_isomorphism(a, b);
    benchmark::DoNotOptimize(m);
  }
}
BENCHMARK(BM_isomorphism_48);

}  // namespace

BENCHMARK_MAIN();
