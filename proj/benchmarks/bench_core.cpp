#include <benchmark/benchmark.h>

#include <complex>
#include <numbers>
#include <random>

#include "bohrlab/approx_hom.hpp"
#include "bohrlab/bogolyubov.hpp"
#include "bohrlab/group.hpp"
#include "bohrlab/subset.hpp"
#include "bohrlab/unitary.hpp"

namespace {

using namespace bohrlab;

GroupMap cyclic_char(int n, int dim) {
  const GroupPtr g = build_group(GroupDescriptor::cyclic(n));
  std::vector<CMatrix> images;
  images.reserve(n);
  for (int x = 0; x < n; ++x) {
    CMatrix m = CMatrix::Identity(dim, dim);
    for (int d = 0; d < dim; ++d)
      m(d, d) = std::polar(1.0, 2.0 * std::numbers::pi * x * (d + 1) / n);
    images.push_back(std::move(m));
  }
  return GroupMap(g, std::move(images));
}

void BM_defect(benchmark::State& state) {
  const GroupMap map = cyclic_char(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(defect(map).defect);
}
BENCHMARK(BM_defect)->Arg(32)->Arg(64)->Arg(128);

void BM_product_set(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const GroupPtr g = build_group(GroupDescriptor::cyclic(n));
  std::vector<int> members;
  for (int x = 0; x < n; x += 2) members.push_back(x);
  const Subset a(g, members);
  for (auto _ : state) benchmark::DoNotOptimize(product_set(a, a).size());
}
BENCHMARK(BM_product_set)->Arg(64)->Arg(256)->Arg(1024);

void BM_operator_norm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(7);
  std::normal_distribution<double> gauss;
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
  for (auto _ : state) benchmark::DoNotOptimize(operator_norm(m));
}
BENCHMARK(BM_operator_norm)->Arg(2)->Arg(8)->Arg(32);

void BM_ruzsa(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const GroupPtr g = build_group(GroupDescriptor::cyclic(n));
  std::vector<int> members;
  for (int x = 0; x < n; ++x)
    if (x % 3 != 2) members.push_back(x);
  const Subset a(g, members);
  for (auto _ : state)
    benchmark::DoNotOptimize(bogolyubov_abelian(a).spectrum_size);
}
BENCHMARK(BM_ruzsa)->Arg(32)->Arg(64)->Arg(128);

void BM_correction(benchmark::State& state) {
  const GroupMap map = cyclic_char(static_cast<int>(state.range(0)), 2);
  std::mt19937_64 rng(11);
  std::normal_distribution<double> gauss;
  std::vector<CMatrix> noisy;
  for (int x = 0; x < map.group()->order(); ++x) {
    CMatrix h(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) h(i, j) = Complex(gauss(rng), gauss(rng));
    noisy.push_back(polar_unitary_part(map.image(x) + 0.001 * h).matrix());
  }
  const GroupMap perturbed(map.group(), std::move(noisy));
  CorrectionOptions opts;
  opts.defect_cap = 0.02;  // gaussian tails can push the defect past 1/200
  for (auto _ : state)
    benchmark::DoNotOptimize(correct_homomorphism(perturbed, opts).final_defect);
}
BENCHMARK(BM_correction)->Arg(12)->Arg(24);

}  // namespace

BENCHMARK_MAIN();
