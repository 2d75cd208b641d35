// Serial reference versus OpenMP versions of the data-parallel kernels.

#include <benchmark/benchmark.h>

#include <vector>

#include "fracshear/expm.hpp"
#include "fracshear/initial_data.hpp"
#include "fracshear/linear_dynamics.hpp"
#include "fracshear/loops.hpp"
#include "fracshear/pseudospectrum.hpp"
#include "fracshear/spectral_ops.hpp"

using namespace fracshear;

namespace {

SpectralField2D field(std::size_t n) { return random_field(TorusGrid(n, n), static_cast<int>(n / 3), 1); }

template <bool Parallel>
void BM_apply_symbol(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  auto f = field(n);
  const auto sym = Multiplier::frac_power(1.5).table(f.grid());
  for (auto _ : st) {
    if constexpr (Parallel)
      loops::omp::apply_symbol(f.coeffs(), std::span<const cplx>(sym));
    else
      loops::serial::apply_symbol(f.coeffs(), std::span<const cplx>(sym));
    benchmark::DoNotOptimize(f.coeffs().data());
  }
}

template <bool Parallel>
void BM_multiply(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0)) * static_cast<std::size_t>(st.range(0));
  std::vector<double> a(n, 1.5), b(n, 0.5), o(n);
  for (auto _ : st) {
    if constexpr (Parallel)
      loops::omp::multiply(a, b, o);
    else
      loops::serial::multiply(a, b, o);
    benchmark::DoNotOptimize(o.data());
  }
}

template <bool Parallel>
void BM_propagate_rows(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  auto f = field(n);
  const auto& g = f.grid();
  const auto u = ShearProfile::named("cos");
  std::vector<Eigen::MatrixXcd> props(g.nx());
  for (std::size_t i = 0; i < g.nx(); ++i)
    if (std::abs(g.kx(i)) <= g.kx_cut())
      props[i] = propagator(mode_operator_unchecked(u, g.kx(i), 1e-3, 1.5, g.ky_cut()), 1e-3);
  for (auto _ : st) {
    if constexpr (Parallel)
      loops::omp::propagate_rows(f, props, g.ky_cut());
    else
      loops::serial::propagate_rows(f, props, g.ky_cut());
    benchmark::DoNotOptimize(f.coeffs().data());
  }
}

template <bool Parallel>
void BM_sigma_min_scan(benchmark::State& st) {
  const auto op = build_mode_operator(ShearProfile::named("cos"), 1, 1e-3, 1.5, static_cast<int>(st.range(0)));
  std::vector<double> lambdas(16);
  for (std::size_t i = 0; i < lambdas.size(); ++i) lambdas[i] = -1.0 + 2.0 * i / 15.0;
  for (auto _ : st) {
    auto s = Parallel ? sigma_min_scan(op, lambdas) : sigma_min_scan_serial(op, lambdas);
    benchmark::DoNotOptimize(s.data());
  }
}

}  // namespace

BENCHMARK(BM_apply_symbol<false>)->Arg(128)->Arg(256);
BENCHMARK(BM_apply_symbol<true>)->Arg(128)->Arg(256);
BENCHMARK(BM_multiply<false>)->Arg(128)->Arg(256);
BENCHMARK(BM_multiply<true>)->Arg(128)->Arg(256);
BENCHMARK(BM_propagate_rows<false>)->Arg(128);
BENCHMARK(BM_propagate_rows<true>)->Arg(128);
BENCHMARK(BM_sigma_min_scan<false>)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sigma_min_scan<true>)->Arg(32)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
