#pragma once

// Per-row bodies shared by the serial and OpenMP kernel drivers.

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "taeg/kernels.hpp"

namespace taeg::kernels::detail {

inline void cosine_row(std::span<const SparseVector> vectors, std::span<const double> norms, std::size_t i,
                       double threshold, std::vector<WeightedEdge>& out) {
  if (norms[i] == 0.0) return;
  for (std::size_t j = i + 1; j < vectors.size(); ++j) {
    if (norms[j] == 0.0) continue;
    const double c = std::min(1.0, dot(vectors[i], vectors[j]) / (norms[i] * norms[j]));
    if (c > 0.0 && c >= threshold) out.push_back({i, j, c});
  }
}

inline double matvec_row(const CsrMatrix& a, std::span<const double> x, std::size_t i) {
  double sum = 0.0;
  for (std::size_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) sum += a.val[k] * x[a.col[k]];
  return sum;
}

inline std::vector<std::uint32_t> sorted_unique(const TokenIds& ids) {
  std::vector<std::uint32_t> out(ids.begin(), ids.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline bool intersects(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i; else ++j;
  }
  return false;
}

// Union of the reference positions of one LCS per candidate sentence. The
// backtrack prefers a diagonal match, then moving left when that keeps a
// strictly longer prefix, else moving up.
inline std::vector<std::size_t> union_lcs_row(const TokenIds& ref, const std::vector<std::uint32_t>& ref_set,
                                              std::span<const TokenIds> candidate,
                                              std::span<const std::vector<std::uint32_t>> cand_sets,
                                              std::vector<std::uint32_t>& table) {
  std::vector<char> hit(ref.size(), 0);
  for (std::size_t c = 0; c < candidate.size(); ++c) {
    const auto& can = candidate[c];
    if (ref.empty() || can.empty() || !intersects(ref_set, cand_sets[c])) continue;
    const std::size_t cols = can.size() + 1;
    table.assign((ref.size() + 1) * cols, 0);
    for (std::size_t i = 1; i <= ref.size(); ++i) {
      for (std::size_t j = 1; j <= can.size(); ++j) {
        table[i * cols + j] = ref[i - 1] == can[j - 1]
                                  ? table[(i - 1) * cols + j - 1] + 1
                                  : std::max(table[(i - 1) * cols + j], table[i * cols + j - 1]);
      }
    }
    std::size_t i = ref.size();
    std::size_t j = can.size();
    while (i > 0 && j > 0) {
      if (ref[i - 1] == can[j - 1]) {
        hit[i - 1] = 1;
        --i;
        --j;
      } else if (table[i * cols + j - 1] > table[(i - 1) * cols + j]) {
        --j;
      } else {
        --i;
      }
    }
  }
  std::vector<std::size_t> positions;
  for (std::size_t p = 0; p < hit.size(); ++p) {
    if (hit[p]) positions.push_back(p);
  }
  return positions;
}

inline std::vector<double> norms_of(std::span<const SparseVector> vectors) {
  std::vector<double> norms(vectors.size());
  for (std::size_t i = 0; i < vectors.size(); ++i) norms[i] = vectors[i].norm();
  return norms;
}

inline std::vector<std::vector<std::uint32_t>> sets_of(std::span<const TokenIds> sentences) {
  std::vector<std::vector<std::uint32_t>> sets;
  sets.reserve(sentences.size());
  for (const auto& s : sentences) sets.push_back(sorted_unique(s));
  return sets;
}

}  // namespace taeg::kernels::detail
