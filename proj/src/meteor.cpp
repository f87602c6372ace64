#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <unordered_map>

#include "taeg/eval.hpp"

namespace taeg {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);
constexpr std::size_t kLookahead = 32;

struct AlignmentState {
  std::vector<std::size_t> cand_to_ref;
  std::vector<std::size_t> ref_to_cand;
};

// One matching stage over the still-unaligned tokens. Every candidate token
// with an unaligned equal-key reference token gets one, so the stage reaches
// the maximum number of matches. Among the options, continuing the chunk of
// the previous candidate token wins, then the longest run of equal unaligned
// keys ahead, then proximity to the last aligned reference position.
void match_stage(const std::vector<std::string>& cand_keys, const std::vector<std::string>& ref_keys,
                 AlignmentState& st) {
  std::unordered_map<std::string_view, std::vector<std::size_t>> positions;
  for (std::size_t j = 0; j < ref_keys.size(); ++j) {
    if (st.ref_to_cand[j] == kNone) positions[ref_keys[j]].push_back(j);
  }

  const auto run_length = [&](std::size_t i, std::size_t j) {
    std::size_t len = 0;
    while (len < kLookahead && i + len < cand_keys.size() && j + len < ref_keys.size() &&
           st.cand_to_ref[i + len] == kNone && st.ref_to_cand[j + len] == kNone &&
           cand_keys[i + len] == ref_keys[j + len]) {
      ++len;
    }
    return len;
  };

  std::size_t last_ref = kNone;
  for (std::size_t i = 0; i < cand_keys.size(); ++i) {
    if (st.cand_to_ref[i] != kNone) {
      last_ref = st.cand_to_ref[i];
      continue;
    }
    const auto it = positions.find(cand_keys[i]);
    if (it == positions.end()) continue;

    std::size_t best = kNone;
    if (i > 0 && st.cand_to_ref[i - 1] != kNone) {
      const auto next = st.cand_to_ref[i - 1] + 1;
      if (next < ref_keys.size() && st.ref_to_cand[next] == kNone && ref_keys[next] == cand_keys[i]) best = next;
    }
    if (best == kNone) {
      std::size_t best_run = 0;
      std::size_t best_dist = kNone;
      const std::size_t anchor = last_ref == kNone ? 0 : last_ref + 1;
      for (const auto j : it->second) {
        if (st.ref_to_cand[j] != kNone) continue;
        const auto run = run_length(i, j);
        const auto dist = j > anchor ? j - anchor : anchor - j;
        if (run > best_run || (run == best_run && dist < best_dist)) {
          best = j;
          best_run = run;
          best_dist = dist;
        }
      }
    }
    if (best == kNone) continue;
    st.cand_to_ref[i] = best;
    st.ref_to_cand[best] = i;
    last_ref = best;
  }
}

}  // namespace

MeteorResult meteor_detail(const TokenList& candidate, const TokenList& reference, const MeteorParams& params) {
  MeteorResult out;
  if (candidate.empty() || reference.empty()) return out;

  AlignmentState st{std::vector<std::size_t>(candidate.size(), kNone),
                    std::vector<std::size_t>(reference.size(), kNone)};
  match_stage(candidate, reference, st);

  std::unordered_map<std::string, std::string> stems;
  const auto stems_of = [&](const TokenList& tokens) {
    std::vector<std::string> keys;
    keys.reserve(tokens.size());
    for (const auto& t : tokens) {
      auto it = stems.find(t);
      if (it == stems.end()) it = stems.emplace(t, stem(t)).first;
      keys.push_back(it->second);
    }
    return keys;
  };
  match_stage(stems_of(candidate), stems_of(reference), st);

  std::size_t prev_ref = kNone;
  bool prev_matched = false;
  for (std::size_t i = 0; i < candidate.size(); ++i) {
    const auto j = st.cand_to_ref[i];
    if (j == kNone) {
      prev_matched = false;
      continue;
    }
    ++out.matches;
    if (!prev_matched || j != prev_ref + 1) ++out.chunks;
    prev_matched = true;
    prev_ref = j;
  }
  if (out.matches == 0) return out;

  const double m = static_cast<double>(out.matches);
  out.precision = m / static_cast<double>(candidate.size());
  out.recall = m / static_cast<double>(reference.size());
  out.fmean = out.precision * out.recall / (params.alpha * out.precision + (1.0 - params.alpha) * out.recall);
  out.penalty = params.gamma * std::pow(static_cast<double>(out.chunks) / m, params.beta);
  out.score = out.fmean * (1.0 - out.penalty);
  return out;
}

double meteor(const TokenList& candidate, const TokenList& reference, const MeteorParams& params) {
  return meteor_detail(candidate, reference, params).score;
}

}  // namespace taeg
