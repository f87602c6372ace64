#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include <json.hpp>
#include <gtest/gtest.h>

#include "taeg/error.hpp"
#include "taeg/eval.hpp"

using namespace taeg;

namespace {

TokenList toks(std::string_view s) { return tokenize(s); }

// O(n^2) tau-b by pair counting: x is the output position, y the event index.
double tau_b_oracle(const std::vector<EventIndex>& y) {
  const std::size_t n = y.size();
  if (n < 2) return 1.0;
  long long c = 0, d = 0, ty = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (y[i] < y[j]) ++c;
      else if (y[i] > y[j]) ++d;
      else ++ty;
    }
  }
  const double n0 = static_cast<double>(n * (n - 1) / 2);
  if (n0 - static_cast<double>(ty) == 0.0) return 1.0;
  return static_cast<double>(c - d) / std::sqrt(n0 * (n0 - static_cast<double>(ty)));
}

std::size_t chunks_of(std::vector<std::pair<std::size_t, std::size_t>> pairs) {
  if (pairs.empty()) return 0;
  std::sort(pairs.begin(), pairs.end());
  std::size_t chunks = 1;
  for (std::size_t k = 1; k < pairs.size(); ++k) {
    if (pairs[k].first != pairs[k - 1].first + 1 || pairs[k].second != pairs[k - 1].second + 1) ++chunks;
  }
  return chunks;
}

// Every maximum exact matching, by exhaustive search; returns (matches,
// fewest chunks among maximum matchings).
std::pair<std::size_t, std::size_t> meteor_exact_oracle(const TokenList& cand, const TokenList& ref) {
  std::size_t best_m = 0, best_chunks = 0;
  std::vector<bool> used(ref.size(), false);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == cand.size()) {
      const auto c = chunks_of(pairs);
      if (pairs.size() > best_m || (pairs.size() == best_m && c < best_chunks)) {
        best_m = pairs.size();
        best_chunks = c;
      }
      return;
    }
    rec(i + 1);
    for (std::size_t j = 0; j < ref.size(); ++j) {
      if (!used[j] && cand[i] == ref[j]) {
        used[j] = true;
        pairs.emplace_back(i, j);
        rec(i + 1);
        pairs.pop_back();
        used[j] = false;
      }
    }
  };
  rec(0);
  return {best_m, best_chunks};
}

// Full-table LCS with backtracking, returning matched reference positions.
std::set<std::size_t> lcs_ref_positions(const TokenList& ref, const TokenList& cand) {
  const std::size_t n = ref.size(), m = cand.size();
  std::vector<std::vector<std::size_t>> t(n + 1, std::vector<std::size_t>(m + 1, 0));
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      t[i][j] = ref[i - 1] == cand[j - 1] ? t[i - 1][j - 1] + 1 : std::max(t[i - 1][j], t[i][j - 1]);
    }
  }
  std::set<std::size_t> out;
  std::size_t i = n, j = m;
  while (i > 0 && j > 0) {
    if (ref[i - 1] == cand[j - 1]) {
      out.insert(i - 1);
      --i;
      --j;
    } else if (t[i][j - 1] > t[i - 1][j]) {
      --j;
    } else {
      --i;
    }
  }
  return out;
}

// Lin (2004) summary-level ROUGE-L with per-token hit clipping.
PrfScore rouge_l_summary_oracle(const std::vector<TokenList>& cand, const std::vector<TokenList>& ref) {
  std::map<std::string, long> cand_count, ref_count;
  std::size_t cand_len = 0, ref_len = 0;
  for (const auto& s : cand) {
    for (const auto& t : s) ++cand_count[t];
    cand_len += s.size();
  }
  for (const auto& s : ref) {
    for (const auto& t : s) ++ref_count[t];
    ref_len += s.size();
  }
  std::size_t hits = 0;
  for (const auto& r : ref) {
    std::set<std::size_t> u;
    for (const auto& c : cand) {
      const auto p = lcs_ref_positions(r, c);
      u.insert(p.begin(), p.end());
    }
    for (const auto pos : u) {
      const auto& t = r[pos];
      if (cand_count[t] > 0 && ref_count[t] > 0) {
        ++hits;
        --cand_count[t];
        --ref_count[t];
      }
    }
  }
  if (cand_len == 0 || ref_len == 0) return {};
  return PrfScore::from(static_cast<double>(hits) / static_cast<double>(cand_len),
                        static_cast<double>(hits) / static_cast<double>(ref_len));
}

TokenList random_tokens(std::mt19937_64& rng, std::size_t len, std::size_t alphabet) {
  static const std::vector<std::string> words{"ab", "cd", "ef", "gh", "ij", "kl", "mn", "op", "qr", "st"};
  TokenList out(len);
  for (auto& t : out) t = words[rng() % std::min(alphabet, words.size())];
  return out;
}

void expect_prf_range(const PrfScore& s) {
  EXPECT_GE(s.precision, 0.0);
  EXPECT_LE(s.precision, 1.0);
  EXPECT_GE(s.recall, 0.0);
  EXPECT_LE(s.recall, 1.0);
  EXPECT_GE(s.f1, 0.0);
  EXPECT_LE(s.f1, 1.0);
}

Narrative narrative_of(const std::vector<std::pair<std::string, std::optional<EventIndex>>>& segs) {
  Narrative n;
  for (const auto& [text, ev] : segs) n.segments.push_back({text, ev, "A", {}, 0.0});
  return n;
}

}  // namespace

TEST(PrfScore, HarmonicMean) {
  const auto s = PrfScore::from(0.5, 1.0);
  EXPECT_DOUBLE_EQ(s.f1, 2.0 * 0.5 / 1.5);
  EXPECT_EQ(PrfScore::from(0.0, 0.0).f1, 0.0);
}

TEST(RougeN, Examples) {
  const auto same = rouge_n(toks("a b c d"), toks("a b c d"), 1);
  EXPECT_EQ(same.f1, 1.0);
  EXPECT_EQ(rouge_n(toks("a b c d"), toks("a b c d"), 2).f1, 1.0);

  const auto partial = rouge_n(toks("a b c"), toks("a x c"), 1);
  EXPECT_DOUBLE_EQ(partial.precision, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(partial.recall, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(partial.f1, 2.0 / 3.0);

  EXPECT_EQ(rouge_n(toks("a b"), toks("c d"), 2).f1, 0.0);
  EXPECT_EQ(rouge_n({}, toks("c d"), 1).f1, 0.0);
  EXPECT_EQ(rouge_n(toks("a"), toks("a"), 2).f1, 0.0);  // no bigrams on either side
  EXPECT_THROW(rouge_n(toks("a"), toks("a"), 0), ConfigError);
}

TEST(RougeN, ClipsRepeatedNgrams) {
  const auto s = rouge_n(toks("the the the"), toks("the cat"), 1);
  EXPECT_DOUBLE_EQ(s.precision, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(s.recall, 1.0 / 2.0);
  // Bigrams: cand {a b, b a, a b}, ref {a b, b c} -> one clipped match.
  const auto b = rouge_n(toks("a b a b"), toks("a b c"), 2);
  EXPECT_DOUBLE_EQ(b.precision, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(b.recall, 1.0 / 2.0);
}

TEST(RougeL, SpecExampleBothModes) {
  const std::vector<TokenList> cand{toks("a b c d")};
  const std::vector<TokenList> ref{toks("a c b d")};
  for (const auto mode : {RougeLMode::Summary, RougeLMode::Corpus}) {
    const auto s = rouge_l(cand, ref, mode);
    EXPECT_DOUBLE_EQ(s.precision, 0.75);
    EXPECT_DOUBLE_EQ(s.recall, 0.75);
    EXPECT_EQ(rouge_l(ref, ref, mode).f1, 1.0);
    EXPECT_EQ(rouge_l(std::vector<TokenList>{toks("x y")}, ref, mode).f1, 0.0);
    EXPECT_EQ(rouge_l(std::vector<TokenList>{}, ref, mode).f1, 0.0);
  }
}

TEST(RougeL, LinUnionExample) {
  const std::vector<TokenList> ref{toks("w1 w2 w3 w4 w5")};
  const std::vector<TokenList> cand{toks("w1 w2 w6 w7 w8"), toks("w1 w3 w8 w9 w5")};
  const auto s = rouge_l(cand, ref, RougeLMode::Summary);
  EXPECT_DOUBLE_EQ(s.recall, 4.0 / 5.0);
  EXPECT_DOUBLE_EQ(s.precision, 4.0 / 10.0);
}

TEST(RougeL, SummaryModeMatchesOracle) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<TokenList> cand(1 + rng() % 4), ref(1 + rng() % 4);
    const std::size_t alphabet = 2 + rng() % 8;
    for (auto& s : cand) s = random_tokens(rng, rng() % 9, alphabet);
    for (auto& s : ref) s = random_tokens(rng, rng() % 9, alphabet);
    const auto expected = rouge_l_summary_oracle(cand, ref);
    const auto got = rouge_l(cand, ref, RougeLMode::Summary);
    ASSERT_DOUBLE_EQ(got.precision, expected.precision) << "trial " << trial;
    ASSERT_DOUBLE_EQ(got.recall, expected.recall) << "trial " << trial;
    EXPECT_EQ(got.f1, rouge_l(cand, ref, RougeLMode::Summary, Backend::Serial).f1);
  }
}

TEST(RougeL, CorpusModeIsFlatLcs) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<TokenList> cand(1 + rng() % 4), ref(1 + rng() % 4);
    TokenList flat_c, flat_r;
    for (auto& s : cand) {
      s = random_tokens(rng, rng() % 30, 5);
      flat_c.insert(flat_c.end(), s.begin(), s.end());
    }
    for (auto& s : ref) {
      s = random_tokens(rng, rng() % 30, 5);
      flat_r.insert(flat_r.end(), s.begin(), s.end());
    }
    const auto lcs = static_cast<double>(lcs_ref_positions(flat_r, flat_c).size());
    const auto got = rouge_l(cand, ref, RougeLMode::Corpus);
    if (flat_c.empty() || flat_r.empty()) {
      EXPECT_EQ(got.f1, 0.0);
      continue;
    }
    ASSERT_DOUBLE_EQ(got.precision, lcs / static_cast<double>(flat_c.size()));
    ASSERT_DOUBLE_EQ(got.recall, lcs / static_cast<double>(flat_r.size()));
  }
}

TEST(RougeL, ModeNames) {
  EXPECT_EQ(parse_rouge_l_mode(to_string(RougeLMode::Summary)), RougeLMode::Summary);
  EXPECT_EQ(parse_rouge_l_mode(to_string(RougeLMode::Corpus)), RougeLMode::Corpus);
  EXPECT_THROW(parse_rouge_l_mode("sentence"), ConfigError);
}

TEST(Meteor, HandArithmetic) {
  const auto ten = toks("one two three four five six seven eight nine ten");
  const auto r = meteor_detail(ten, ten);
  EXPECT_EQ(r.matches, 10u);
  EXPECT_EQ(r.chunks, 1u);
  EXPECT_NEAR(r.penalty, 5e-4, 1e-15);
  EXPECT_NEAR(r.score, 0.9995, 1e-12);

  const auto cat = meteor_detail(toks("the cat sat"), toks("the cat sat"));
  EXPECT_EQ(cat.matches, 3u);
  EXPECT_EQ(cat.chunks, 1u);
  EXPECT_NEAR(cat.score, 1.0 - 0.5 / 27.0, 1e-12);

  EXPECT_EQ(meteor(toks("alpha beta"), toks("gamma delta")), 0.0);
  EXPECT_EQ(meteor({}, toks("gamma delta")), 0.0);
}

TEST(Meteor, SwappedHalvesAndStemStage) {
  // Two chunks, four matches.
  const auto r = meteor_detail(toks("a b c d"), toks("c d a b"));
  EXPECT_EQ(r.matches, 4u);
  EXPECT_EQ(r.chunks, 2u);
  EXPECT_NEAR(r.score, 1.0 - 0.5 * std::pow(0.5, 3), 1e-12);

  // "running" and "runs" only meet at the stem stage.
  const auto s = meteor_detail(toks("he was running home"), toks("he runs home"));
  EXPECT_EQ(s.matches, 3u);
  const double p = 3.0 / 4.0, rc = 1.0;
  const double fmean = p * rc / (0.9 * p + 0.1 * rc);
  EXPECT_EQ(s.chunks, 2u);  // "he" then "running home"
  EXPECT_NEAR(s.score, fmean * (1.0 - 0.5 * std::pow(2.0 / 3.0, 3)), 1e-12);
}

TEST(Meteor, MaximumMatchesAndChunkQuality) {
  std::mt19937_64 rng(41);
  int optimal = 0;
  const int trials = 400;
  for (int trial = 0; trial < trials; ++trial) {
    const auto cand = random_tokens(rng, 1 + rng() % 6, 3 + rng() % 3);
    const auto ref = random_tokens(rng, 1 + rng() % 6, 3 + rng() % 3);
    const auto [m, min_chunks] = meteor_exact_oracle(cand, ref);
    const auto r = meteor_detail(cand, ref);
    ASSERT_EQ(r.matches, m) << "trial " << trial;
    ASSERT_GE(r.chunks, min_chunks);
    optimal += r.chunks == min_chunks;
    EXPECT_EQ(r.score == 0.0, m == 0);
  }
  // The chunk choice is greedy; it should be optimal in the vast majority of
  // small cases.
  EXPECT_GE(optimal, trials * 9 / 10);
}

TEST(Meteor, DistinctTokensGiveOptimalChunks) {
  std::mt19937_64 rng(43);
  std::vector<std::string> words{"ab", "cd", "ef", "gh", "ij", "kl", "mn"};
  for (int trial = 0; trial < 200; ++trial) {
    std::shuffle(words.begin(), words.end(), rng);
    TokenList cand(words.begin(), words.begin() + 5);
    std::shuffle(words.begin(), words.end(), rng);
    TokenList ref(words.begin(), words.begin() + 5);
    const auto [m, min_chunks] = meteor_exact_oracle(cand, ref);
    const auto r = meteor_detail(cand, ref);
    EXPECT_EQ(r.matches, m);
    EXPECT_EQ(r.chunks, min_chunks);
  }
}

TEST(KendallTau, Examples) {
  const std::vector<EventIndex> sorted{1, 2, 3, 4}, reversed{4, 3, 2, 1}, swap{1, 3, 2};
  EXPECT_EQ(kendall_tau(sorted), 1.0);
  EXPECT_EQ(kendall_tau(reversed), -1.0);
  EXPECT_NEAR(kendall_tau(swap), 1.0 / 3.0, 1e-15);
  EXPECT_EQ(kendall_tau(std::vector<EventIndex>{5}), 1.0);
  EXPECT_EQ(kendall_tau(std::vector<EventIndex>{}), 1.0);
  EXPECT_EQ(kendall_tau(std::vector<EventIndex>{2, 2, 2}), 1.0);
}

TEST(KendallTau, ExhaustivePermutations) {
  for (std::size_t n = 2; n <= 6; ++n) {
    std::vector<EventIndex> p(n);
    std::iota(p.begin(), p.end(), 1);
    do {
      ASSERT_NEAR(kendall_tau(p), tau_b_oracle(p), 1e-12);
    } while (std::next_permutation(p.begin(), p.end()));
  }
}

TEST(KendallTau, RandomTiedSequences) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 10000; ++trial) {
    std::vector<EventIndex> y(2 + rng() % 9);
    const auto range = 1 + rng() % 6;
    for (auto& v : y) v = static_cast<EventIndex>(1 + rng() % range);
    const double t = kendall_tau(y);
    ASSERT_NEAR(t, tau_b_oracle(y), 1e-12);
    ASSERT_GE(t, -1.0 - 1e-12);
    ASSERT_LE(t, 1.0 + 1e-12);
  }
  // Longer sequences against the oracle too.
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<EventIndex> y(200 + rng() % 300);
    for (auto& v : y) v = static_cast<EventIndex>(1 + rng() % 50);
    ASSERT_NEAR(kendall_tau(y), tau_b_oracle(y), 1e-12);
  }
}

TEST(OrderSequence, SkipsUnalignedSegments) {
  const auto n = narrative_of({{"a", 3}, {"b", std::nullopt}, {"c", 1}});
  EXPECT_EQ(order_sequence(n), (std::vector<EventIndex>{3, 1}));
}

TEST(Metrics, RangesUnderFuzzing) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 500; ++trial) {
    const auto a = random_tokens(rng, rng() % 25, 2 + rng() % 9);
    const auto b = random_tokens(rng, rng() % 25, 2 + rng() % 9);
    expect_prf_range(rouge_n(a, b, 1));
    expect_prf_range(rouge_n(a, b, 2));
    const std::vector<TokenList> ca{a}, cb{b};
    expect_prf_range(rouge_l(ca, cb, RougeLMode::Summary));
    expect_prf_range(rouge_l(ca, cb, RougeLMode::Corpus));
    const double m = meteor(a, b);
    EXPECT_GE(m, 0.0);
    EXPECT_LE(m, 1.0);
    if (!a.empty()) {
      EXPECT_EQ(rouge_n(a, a, 1).f1, 1.0);
      EXPECT_EQ(rouge_l(ca, ca, RougeLMode::Summary).f1, 1.0);
      EXPECT_EQ(rouge_l(ca, ca, RougeLMode::Corpus).f1, 1.0);
    }
  }
}

TEST(Evaluate, IdentityAndCounts) {
  const auto n = narrative_of({{"The king rode in.", 1}, {"The crowd sang!", 2}, {"An aside.", std::nullopt}});
  const std::string reference = "The king rode in.\nThe crowd sang!\nAn aside.";
  const auto r = evaluate(n, reference, {});
  EXPECT_EQ(r.rouge1.f1, 1.0);
  EXPECT_EQ(r.rouge2.f1, 1.0);
  EXPECT_EQ(r.rougeL.f1, 1.0);
  EXPECT_EQ(r.rougeL_corpus.f1, 1.0);
  EXPECT_EQ(r.kendall_tau, 1.0);
  EXPECT_EQ(r.ordered_segments, 2u);
  EXPECT_EQ(r.unaligned_segments, 1u);
  EXPECT_EQ(r.candidate_chars, reference.size());
  EXPECT_EQ(r.reference_chars, reference.size());
  EXPECT_NEAR(r.meteor, 1.0 - 0.5 * std::pow(1.0 / 9.0, 3), 1e-12);  // 9 tokens, one chunk

  EXPECT_THROW(evaluate(n, " ... ", {}), EmptyReference);

  const std::vector<std::string> sentences{"The crowd sang!", "The king rode in."};
  const auto swapped = evaluate(n, "The crowd sang! The king rode in.", sentences,
                                {RougeLMode::Corpus, Backend::Serial});
  EXPECT_EQ(swapped.rouge_l_mode, RougeLMode::Corpus);
  EXPECT_EQ(swapped.rougeL.f1, swapped.rougeL_corpus.f1);
  EXPECT_LT(swapped.rougeL_corpus.f1, 1.0);
}

TEST(Evaluate, CharCountIsCodePoints) {
  EXPECT_EQ(char_count(""), 0u);
  EXPECT_EQ(char_count("abc"), 3u);
  EXPECT_EQ(char_count("\xC3\xA9t\xC3\xA9"), 3u);
  EXPECT_EQ(char_count("\xE2\x80\x94"), 1u);
}

TEST(Report, JsonRoundTripAndFormats) {
  const auto n = narrative_of({{"Bread was broken.", 1}, {"Fish were shared.", 2}});
  auto r = evaluate(n, "Bread was broken. The fish were shared.", {});
  r.label = "taeg";
  const auto text = report_to_json(r);
  const auto j = nlohmann::json::parse(text);
  EXPECT_EQ(j["tau_variant"], "tau-b");
  EXPECT_TRUE(j["bertscore_f1"].is_null());
  const auto back = report_from_json(text);
  EXPECT_EQ(report_to_json(back), text);
  EXPECT_THROW(report_from_json("{}"), SchemaError);

  auto other = r;
  other.label = "baseline";
  other.kendall_tau = 0.32;
  other.candidate_chars = 15234;
  other.bertscore_f1 = 0.835;
  const std::vector<EvalReport> reports{other, r};
  const auto table = format_table(reports);
  for (const char* row : {"ROUGE-1 F1", "ROUGE-2 F1", "ROUGE-L F1", "METEOR", "Kendall's Tau", "Length (chars)",
                          "BERTScore F1", "0.320", "1.000", "15,234", "baseline", "taeg"}) {
    EXPECT_NE(table.find(row), std::string::npos) << row << "\n" << table;
  }
  const auto csv = format_csv(reports);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
  EXPECT_EQ(csv.rfind("label,rouge1_f1", 0), 0u);
  EXPECT_NE(csv.find("baseline,"), std::string::npos);
}
