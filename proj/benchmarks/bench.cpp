#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "ncr4/fibration.hpp"
#include "ncr4/quotient.hpp"
#include "ncr4/transition.hpp"
#include "ncr4/weierstrass.hpp"

namespace {

using ncr4::Cx;

std::vector<Cx> points_in_annulus(double r_in, double r_out, std::size_t n) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> rad(r_in, r_out);
  std::uniform_real_distribution<double> arg(-ncr4::kPi, ncr4::kPi);
  std::vector<Cx> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(std::polar(rad(rng), arg(rng)));
  return v;
}

void BM_FPrime(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::vector<ncr4::fibration::S4Point> pts;
  for (int i = 0; i < 1024; ++i) pts.push_back(ncr4::fibration::random_s4(rng));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ncr4::fibration::f_prime(pts[i++ & 1023]));
  }
}
BENCHMARK(BM_FPrime);

void BM_G2(benchmark::State& state) {
  const auto taus = points_in_annulus(0.01, 0.3, 1024);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(ncr4::weierstrass::g2(taus[i++ & 1023]));
}
BENCHMARK(BM_G2);

void BM_JWeierstrass(benchmark::State& state) {
  const auto taus = points_in_annulus(0.01, 0.3, 1024);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ncr4::weierstrass::j_from_weierstrass(taus[i++ & 1023]));
  }
}
BENCHMARK(BM_JWeierstrass);

void BM_JTorus(benchmark::State& state) {
  const auto ws = points_in_annulus(0.01, 0.3, 1024);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(ncr4::quotient::j_torus(ws[i++ & 1023]));
}
BENCHMARK(BM_JTorus);

void BM_Phi(benchmark::State& state) {
  const auto ws = points_in_annulus(0.1, 0.3, 1024);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(ncr4::transition::phi(ws[i++ & 1023], 0));
}
BENCHMARK(BM_Phi);

void BM_GlueMap(benchmark::State& state) {
  const ncr4::ModuliParams p{};
  const auto zs = points_in_annulus(1.01, 1.99, 1024);
  const auto us = points_in_annulus(3.34, 9.9, 1024);
  std::size_t i = 0;
  for (auto _ : state) {
    const std::size_t k = i++ & 1023;
    benchmark::DoNotOptimize(ncr4::transition::glue_map(zs[k], us[k], p));
  }
}
BENCHMARK(BM_GlueMap);

void BM_Reduce(benchmark::State& state) {
  const auto ws = points_in_annulus(0.1, 0.3, 1024);
  const auto zs = points_in_annulus(1e-3, 1e3, 1024);
  std::size_t i = 0;
  for (auto _ : state) {
    const std::size_t k = i++ & 1023;
    benchmark::DoNotOptimize(ncr4::quotient::reduce(zs[k], ws[k]));
  }
}
BENCHMARK(BM_Reduce);

}  // namespace

BENCHMARK_MAIN();
