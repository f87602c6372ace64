// Serial reference vs OpenMP driver for each kernel, plus the two LCS
// length implementations. Thread count follows OMP_NUM_THREADS.

#include <algorithm>
#include <random>

#include <benchmark/benchmark.h>

#include "taeg/kernels.hpp"

using namespace taeg;

namespace {

std::vector<SparseVector> random_vectors(std::size_t n, std::uint32_t dims, std::size_t per_row) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> w(0.1, 4.0);
  std::vector<SparseVector> out(n);
  for (auto& v : out) {
    std::vector<std::uint32_t> picked;
    while (picked.size() < per_row) {
      const auto d = static_cast<std::uint32_t>(rng() % dims);
      if (std::find(picked.begin(), picked.end(), d) == picked.end()) picked.push_back(d);
    }
    std::sort(picked.begin(), picked.end());
    for (const auto d : picked) v.entries.emplace_back(d, w(rng));
  }
  return out;
}

CsrMatrix random_csr(std::size_t n, std::size_t per_row) {
  std::mt19937_64 rng(2);
  CsrMatrix m;
  m.n = n;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < per_row; ++k) {
      m.col.push_back(rng() % n);
      m.val.push_back(1.0 / static_cast<double>(per_row));
    }
    m.row_ptr.push_back(m.col.size());
  }
  return m;
}

std::vector<TokenIds> random_sentences(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<TokenIds> out(count);
  for (auto& s : out) {
    s.resize(8 + rng() % 20);
    for (auto& t : s) t = static_cast<std::uint32_t>(rng() % 500);
  }
  return out;
}

TokenIds random_stream(std::size_t len, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  TokenIds out(len);
  for (auto& t : out) t = static_cast<std::uint32_t>(rng() % 3000);
  return out;
}

template <auto Kernel>
void BM_PairwiseCosine(benchmark::State& state) {
  const auto vectors = random_vectors(static_cast<std::size_t>(state.range(0)), 5000, 12);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(vectors, 0.1));
  state.SetComplexityN(state.range(0));
}

template <auto Kernel>
void BM_Matvec(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto m = random_csr(n, 16);
  std::vector<double> x(n, 1.0 / static_cast<double>(n)), y(n);
  for (auto _ : state) {
    Kernel(m, x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(m.nnz()));
}

template <auto Kernel>
void BM_UnionLcs(benchmark::State& state) {
  const auto ref = random_sentences(static_cast<std::size_t>(state.range(0)), 3);
  const auto cand = random_sentences(static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(ref, cand));
}

template <auto Kernel>
void BM_LcsLength(benchmark::State& state) {
  const auto a = random_stream(static_cast<std::size_t>(state.range(0)), 5);
  const auto b = random_stream(static_cast<std::size_t>(state.range(0)), 6);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(a, b));
}

}  // namespace

BENCHMARK(BM_PairwiseCosine<kernels::serial::pairwise_cosine_edges>)->Name("pairwise_cosine/serial")->Arg(500)->Arg(2000);
BENCHMARK(BM_PairwiseCosine<kernels::omp::pairwise_cosine_edges>)->Name("pairwise_cosine/omp")->Arg(500)->Arg(2000);

BENCHMARK(BM_Matvec<kernels::serial::matvec>)->Name("matvec/serial")->Arg(10000)->Arg(200000);
BENCHMARK(BM_Matvec<kernels::omp::matvec>)->Name("matvec/omp")->Arg(10000)->Arg(200000);

BENCHMARK(BM_UnionLcs<kernels::serial::union_lcs_positions>)->Name("union_lcs/serial")->Arg(100)->Arg(400);
BENCHMARK(BM_UnionLcs<kernels::omp::union_lcs_positions>)->Name("union_lcs/omp")->Arg(100)->Arg(400);

BENCHMARK(BM_LcsLength<kernels::serial::lcs_length>)->Name("lcs_length/two_row")->Arg(2000)->Arg(15000);
BENCHMARK(BM_LcsLength<kernels::lcs_length_bitparallel>)->Name("lcs_length/bit_parallel")->Arg(2000)->Arg(15000);

BENCHMARK_MAIN();
