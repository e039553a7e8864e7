// Serial reference vs OpenMP kernels. Run with --benchmark_filter=Loewner etc.
#include <benchmark/benchmark.h>

#include <random>

#include "nhfs/kernels.hpp"
#include "nhfs/recovery.hpp"

using namespace nhfs;

namespace {

std::vector<Coefficient> random_entries(int lo, int hi, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<Coefficient> out;
  for (int n = lo; n <= hi; ++n) out.push_back({n, {g(rng), g(rng)}});
  return out;
}

SignalModel model(int K) {
  std::vector<CosineTerm> terms;
  for (int k = 0; k < K; ++k) {
    terms.push_back({1.0 + 0.1 * k, 0.37 + 1.13 * k, 0.3 * k, k % 4 == 3 ? TermKind::Hyperbolic : TermKind::Trig});
  }
  return canonicalize(terms, 0.5);
}

template <bool Parallel>
void Loewner(benchmark::State& state) {
  const auto rows = random_entries(1, static_cast<int>(state.range(0)), 1);
  const auto support = random_entries(100000, 100031, 2);
  for (auto _ : state) {
    auto a = Parallel ? kernels::loewner(rows, support) : kernels::loewner_serial(rows, support);
    benchmark::DoNotOptimize(a.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 32);
}

template <bool Parallel>
void Barycentric(benchmark::State& state) {
  const auto support = random_entries(1, 40, 3);
  std::vector<Complex> w(support.size(), Complex(0.3, 0.1));
  std::vector<Complex> z(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = Complex(0.5 + i, 0.25);
  for (auto _ : state) {
    auto v = Parallel ? kernels::barycentric(support, w, z) : kernels::barycentric_serial(support, w, z);
    benchmark::DoNotOptimize(v.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void Synthesize(benchmark::State& state) {
  const SignalModel m = model(16);
  std::vector<int> idx(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i) + 1;
  for (auto _ : state) {
    auto v = Parallel ? kernels::synthesize(m, 1.7, idx) : kernels::synthesize_serial(m, 1.7, idx);
    benchmark::DoNotOptimize(v.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void ReconstructMany(benchmark::State& state) {
  std::vector<FourierData> sets;
  for (int k = 0; k < state.range(0); ++k) {
    const int K = 1 + k % 6;
    std::vector<int> idx;
    for (int n = 1; n <= 2 * K + 2; ++n) idx.push_back(n);
    sets.push_back(coefficients(model(K), 1.0 + 0.01 * k, idx));
  }
  for (auto _ : state) {
    auto r = Parallel ? reconstruct_many(sets) : reconstruct_many_serial(sets);
    benchmark::DoNotOptimize(r.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(Loewner<false>)->Arg(1 << 10)->Arg(1 << 14);
BENCHMARK(Loewner<true>)->Arg(1 << 10)->Arg(1 << 14)->UseRealTime();
BENCHMARK(Barycentric<false>)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(Barycentric<true>)->Arg(1 << 12)->Arg(1 << 16)->UseRealTime();
BENCHMARK(Synthesize<false>)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(Synthesize<true>)->Arg(1 << 12)->Arg(1 << 16)->UseRealTime();
BENCHMARK(ReconstructMany<false>)->Arg(64)->Arg(512);
BENCHMARK(ReconstructMany<true>)->Arg(64)->Arg(512)->UseRealTime();
BENCHMARK_MAIN();
