#include <omp.h>

#include "kernels_detail.hpp"

namespace taeg::kernels::omp {

std::vector<WeightedEdge> pairwise_cosine_edges(std::span<const SparseVector> vectors, double threshold) {
  const auto norms = detail::norms_of(vectors);
  const auto n = static_cast<std::ptrdiff_t>(vectors.size());
  std::vector<std::vector<WeightedEdge>> rows(vectors.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    detail::cosine_row(vectors, norms, static_cast<std::size_t>(i), threshold, rows[static_cast<std::size_t>(i)]);
  }
  std::vector<WeightedEdge> edges;
  for (auto& row : rows) edges.insert(edges.end(), row.begin(), row.end());
  return edges;
}

void matvec(const CsrMatrix& a, std::span<const double> x, std::span<double> y) {
  const auto n = static_cast<std::ptrdiff_t>(a.n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    y[static_cast<std::size_t>(i)] = detail::matvec_row(a, x, static_cast<std::size_t>(i));
  }
}

std::vector<std::vector<std::size_t>> union_lcs_positions(std::span<const TokenIds> reference,
                                                          std::span<const TokenIds> candidate) {
  const auto cand_sets = detail::sets_of(candidate);
  std::vector<std::vector<std::size_t>> out(reference.size());
  const auto n = static_cast<std::ptrdiff_t>(reference.size());
#pragma omp parallel
  {
    std::vector<std::uint32_t> table;
#pragma omp for schedule(dynamic, 4)
    for (std::ptrdiff_t r = 0; r < n; ++r) {
      const auto& ref = reference[static_cast<std::size_t>(r)];
      out[static_cast<std::size_t>(r)] =
          detail::union_lcs_row(ref, detail::sorted_unique(ref), candidate, cand_sets, table);
    }
  }
  return out;
}

}  // namespace taeg::kernels::omp
