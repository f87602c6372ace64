#pragma once

// Data-parallel inner loops. Each kernel has a serial reference in
// kernels::serial and an OpenMP version in kernels::omp with identical
// results: work is split by output row and every reduction runs in a fixed
// order, so the two agree bit for bit regardless of thread count.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "taeg/textproc.hpp"

namespace taeg {

struct WeightedEdge {
  std::size_t a = 0;
  std::size_t b = 0;
  double weight = 0.0;

  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

// Compressed sparse rows of an n x n matrix.
struct CsrMatrix {
  std::size_t n = 0;
  std::vector<std::size_t> row_ptr{0};
  std::vector<std::size_t> col;
  std::vector<double> val;

  std::size_t nnz() const { return val.size(); }
};

using TokenIds = std::vector<std::uint32_t>;

// Which driver runs the data-parallel kernels inside the pipeline.
enum class Backend { Serial, OpenMP };

namespace kernels {

namespace serial {

// All pairs i < j with cosine(i, j) >= threshold and > 0, ordered by (i, j).
std::vector<WeightedEdge> pairwise_cosine_edges(std::span<const SparseVector> vectors, double threshold);

// y = A x.
void matvec(const CsrMatrix& a, std::span<const double> x, std::span<double> y);

// For every reference sentence, the sorted positions covered by the union of
// its LCS with each candidate sentence.
std::vector<std::vector<std::size_t>> union_lcs_positions(std::span<const TokenIds> reference,
                                                          std::span<const TokenIds> candidate);

// Two-row dynamic program, O(|a||b|) time and O(min(|a|,|b|)) memory.
std::size_t lcs_length(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);

}  // namespace serial

namespace omp {

std::vector<WeightedEdge> pairwise_cosine_edges(std::span<const SparseVector> vectors, double threshold);
void matvec(const CsrMatrix& a, std::span<const double> x, std::span<double> y);
std::vector<std::vector<std::size_t>> union_lcs_positions(std::span<const TokenIds> reference,
                                                          std::span<const TokenIds> candidate);

}  // namespace omp

// Bit-parallel LCS length (Hyyro's row recurrence over 64-bit words),
// O(|a||b|/64) time and O(|b|/64 + alphabet) memory. Matches
// serial::lcs_length exactly.
std::size_t lcs_length_bitparallel(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);

}  // namespace kernels

}  // namespace taeg
