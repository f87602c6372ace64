#include <cmath>
#include <cstdint>

#include <spdlog/spdlog.h>

#include "taeg/eval.hpp"

namespace taeg {

namespace {

// Counts pairs i < j with v[i] > v[j] while merge-sorting v.
std::uint64_t strict_inversions(std::vector<EventIndex>& v, std::vector<EventIndex>& scratch, std::size_t lo,
                                std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::uint64_t count = strict_inversions(v, scratch, lo, mid) + strict_inversions(v, scratch, mid, hi);
  std::size_t i = lo;
  std::size_t j = mid;
  std::size_t k = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      count += mid - i;
      scratch[k++] = v[j++];
    } else {
      scratch[k++] = v[i++];
    }
  }
  while (i < mid) scratch[k++] = v[i++];
  while (j < hi) scratch[k++] = v[j++];
  std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo), scratch.begin() + static_cast<std::ptrdiff_t>(hi),
            v.begin() + static_cast<std::ptrdiff_t>(lo));
  return count;
}

}  // namespace

double kendall_tau(std::span<const EventIndex> observed) {
  const std::uint64_t n = observed.size();
  if (n < 2) {
    spdlog::warn("Kendall's tau over {} ordered segment(s) is defined as 1.0", n);
    return 1.0;
  }
  std::vector<EventIndex> v(observed.begin(), observed.end());
  std::vector<EventIndex> scratch(v.size());
  const std::uint64_t discordant = strict_inversions(v, scratch, 0, v.size());

  // v is sorted now; count pairs tied on event index.
  std::uint64_t tied = 0;
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    const std::uint64_t t = j - i;
    tied += t * (t - 1) / 2;
    i = j;
  }
  const std::uint64_t pairs = n * (n - 1) / 2;
  if (tied == pairs) {
    spdlog::warn("Kendall's tau: all {} segments share one event; defined as 1.0", n);
    return 1.0;
  }
  const std::uint64_t concordant = pairs - tied - discordant;
  // Output positions never tie, so the second tie term is zero.
  const double denom = std::sqrt(static_cast<double>(pairs - tied) * static_cast<double>(pairs));
  return (static_cast<double>(concordant) - static_cast<double>(discordant)) / denom;
}

std::vector<EventIndex> order_sequence(const Narrative& narrative) {
  std::vector<EventIndex> out;
  for (const auto& s : narrative.segments) {
    if (s.event_index) out.push_back(*s.event_index);
  }
  return out;
}

}  // namespace taeg
