#include <algorithm>
#include <bit>
#include <unordered_map>

#include "kernels_detail.hpp"

namespace taeg::kernels {

namespace serial {

std::vector<WeightedEdge> pairwise_cosine_edges(std::span<const SparseVector> vectors, double threshold) {
  const auto norms = detail::norms_of(vectors);
  std::vector<WeightedEdge> edges;
  for (std::size_t i = 0; i < vectors.size(); ++i) detail::cosine_row(vectors, norms, i, threshold, edges);
  return edges;
}

void matvec(const CsrMatrix& a, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < a.n; ++i) y[i] = detail::matvec_row(a, x, i);
}

std::vector<std::vector<std::size_t>> union_lcs_positions(std::span<const TokenIds> reference,
                                                          std::span<const TokenIds> candidate) {
  const auto cand_sets = detail::sets_of(candidate);
  std::vector<std::vector<std::size_t>> out(reference.size());
  std::vector<std::uint32_t> table;
  for (std::size_t r = 0; r < reference.size(); ++r) {
    out[r] = detail::union_lcs_row(reference[r], detail::sorted_unique(reference[r]), candidate, cand_sets,
                                   table);
  }
  return out;
}

std::size_t lcs_length(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> prev(b.size() + 1, 0);
  std::vector<std::size_t> cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

}  // namespace serial

std::size_t lcs_length_bitparallel(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  if (a.empty() || b.empty()) return 0;
  const std::size_t words = (b.size() + 63) / 64;
  std::unordered_map<std::uint32_t, std::vector<std::uint64_t>> match;
  for (std::size_t j = 0; j < b.size(); ++j) {
    auto& mask = match[b[j]];
    if (mask.empty()) mask.assign(words, 0);
    mask[j / 64] |= std::uint64_t{1} << (j % 64);
  }

  // Zero bits of v mark columns of b that are matched in the current LCS row.
  std::vector<std::uint64_t> v(words, ~std::uint64_t{0});
  for (const auto symbol : a) {
    const auto it = match.find(symbol);
    if (it == match.end()) continue;
    const auto& m = it->second;
    std::uint64_t carry = 0;
    for (std::size_t k = 0; k < words; ++k) {
      const std::uint64_t u = v[k] & m[k];
      const std::uint64_t sum = v[k] + u;
      const std::uint64_t c1 = sum < v[k];
      const std::uint64_t total = sum + carry;
      const std::uint64_t c2 = total < sum;
      v[k] = total | (v[k] & ~m[k]);
      carry = c1 | c2;
    }
  }

  std::size_t ones = 0;
  for (std::size_t k = 0; k < words; ++k) {
    std::uint64_t word = v[k];
    const std::size_t used = std::min<std::size_t>(64, b.size() - k * 64);
    if (used < 64) word &= (std::uint64_t{1} << used) - 1;
    ones += static_cast<std::size_t>(std::popcount(word));
  }
  return b.size() - ones;
}

}  // namespace taeg::kernels
