#include <map>
#include <unordered_map>

#include "taeg/error.hpp"
#include "taeg/eval.hpp"

namespace taeg {

namespace {

std::map<std::vector<std::string_view>, std::size_t> ngram_counts(const TokenList& tokens, std::size_t n) {
  std::map<std::vector<std::string_view>, std::size_t> counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[std::vector<std::string_view>(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                           tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
  }
  return counts;
}

class Interner {
 public:
  std::uint32_t id(const std::string& token) {
    return ids_.try_emplace(token, static_cast<std::uint32_t>(ids_.size())).first->second;
  }
  TokenIds ids(const TokenList& tokens) {
    TokenIds out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) out.push_back(id(t));
    return out;
  }

 private:
  std::unordered_map<std::string, std::uint32_t> ids_;
};

}  // namespace

PrfScore PrfScore::from(double precision, double recall) {
  PrfScore s{precision, recall, 0.0};
  if (precision + recall > 0.0) s.f1 = 2.0 * precision * recall / (precision + recall);
  return s;
}

std::string_view to_string(RougeLMode mode) { return mode == RougeLMode::Summary ? "summary" : "corpus"; }

RougeLMode parse_rouge_l_mode(std::string_view s) {
  if (s == "summary") return RougeLMode::Summary;
  if (s == "corpus") return RougeLMode::Corpus;
  throw ConfigError("unknown ROUGE-L mode '" + std::string(s) + "' (expected summary or corpus)");
}

PrfScore rouge_n(const TokenList& candidate, const TokenList& reference, std::size_t n) {
  if (n == 0) throw ConfigError("ROUGE-N needs n >= 1");
  const auto cand = ngram_counts(candidate, n);
  const auto ref = ngram_counts(reference, n);
  std::size_t cand_total = 0;
  std::size_t ref_total = 0;
  for (const auto& [g, c] : cand) cand_total += c;
  for (const auto& [g, c] : ref) ref_total += c;
  if (cand_total == 0 || ref_total == 0) return {};

  std::size_t overlap = 0;
  for (const auto& [gram, c] : cand) {
    const auto it = ref.find(gram);
    if (it != ref.end()) overlap += std::min(c, it->second);
  }
  return PrfScore::from(static_cast<double>(overlap) / static_cast<double>(cand_total),
                        static_cast<double>(overlap) / static_cast<double>(ref_total));
}

PrfScore rouge_l(std::span<const TokenList> candidate, std::span<const TokenList> reference, RougeLMode mode,
                 Backend backend) {
  Interner interner;
  std::vector<TokenIds> cand;
  std::vector<TokenIds> ref;
  std::size_t cand_total = 0;
  std::size_t ref_total = 0;
  for (const auto& s : candidate) {
    cand.push_back(interner.ids(s));
    cand_total += s.size();
  }
  for (const auto& s : reference) {
    ref.push_back(interner.ids(s));
    ref_total += s.size();
  }
  if (cand_total == 0 || ref_total == 0) return {};

  std::size_t hits = 0;
  if (mode == RougeLMode::Corpus) {
    TokenIds flat_c;
    TokenIds flat_r;
    flat_c.reserve(cand_total);
    flat_r.reserve(ref_total);
    for (const auto& s : cand) flat_c.insert(flat_c.end(), s.begin(), s.end());
    for (const auto& s : ref) flat_r.insert(flat_r.end(), s.begin(), s.end());
    hits = kernels::lcs_length_bitparallel(flat_c, flat_r);
  } else {
    const auto unions = backend == Backend::Serial ? kernels::serial::union_lcs_positions(ref, cand)
                                                   : kernels::omp::union_lcs_positions(ref, cand);
    std::unordered_map<std::uint32_t, std::size_t> cand_left;
    std::unordered_map<std::uint32_t, std::size_t> ref_left;
    for (const auto& s : cand) {
      for (const auto t : s) ++cand_left[t];
    }
    for (const auto& s : ref) {
      for (const auto t : s) ++ref_left[t];
    }
    for (std::size_t r = 0; r < ref.size(); ++r) {
      for (const auto pos : unions[r]) {
        const auto t = ref[r][pos];
        auto& c = cand_left[t];
        auto& rr = ref_left[t];
        if (c > 0 && rr > 0) {
          ++hits;
          --c;
          --rr;
        }
      }
    }
  }
  return PrfScore::from(static_cast<double>(hits) / static_cast<double>(cand_total),
                        static_cast<double>(hits) / static_cast<double>(ref_total));
}

}  // namespace taeg
