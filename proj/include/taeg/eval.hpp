#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "taeg/consolidate.hpp"
#include "taeg/kernels.hpp"
#include "taeg/textproc.hpp"

namespace taeg {

struct PrfScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  static PrfScore from(double precision, double recall);
};

// Clipped n-gram overlap. An empty side scores 0. Throws ConfigError for n == 0.
PrfScore rouge_n(const TokenList& candidate, const TokenList& reference, std::size_t n);

enum class RougeLMode { Summary, Corpus };
std::string_view to_string(RougeLMode mode);
RougeLMode parse_rouge_l_mode(std::string_view s);

// Summary mode: union LCS of each reference sentence against all candidate
// sentences, hits clipped by token counts on both sides. Corpus mode: one
// LCS over the flattened token streams, computed in linear space.
PrfScore rouge_l(std::span<const TokenList> candidate, std::span<const TokenList> reference, RougeLMode mode,
                 Backend backend = Backend::OpenMP);

struct MeteorParams {
  double alpha = 0.9;
  double beta = 3.0;
  double gamma = 0.5;
};

struct MeteorResult {
  std::size_t matches = 0;
  std::size_t chunks = 0;
  double precision = 0.0;
  double recall = 0.0;
  double fmean = 0.0;
  double penalty = 0.0;
  double score = 0.0;
};

// Exact-match stage, then a Porter-stem stage over the leftovers. Each stage
// matches as many tokens as possible; which occurrences pair up is chosen
// greedily to extend existing chunks.
MeteorResult meteor_detail(const TokenList& candidate, const TokenList& reference, const MeteorParams& params = {});
double meteor(const TokenList& candidate, const TokenList& reference, const MeteorParams& params = {});

// Tau-b of the observed event indices against their sorted order, in
// O(n log n). Sequences shorter than 2, and sequences with every element
// tied, have no discordance to measure and score 1.0.
double kendall_tau(std::span<const EventIndex> observed);

// Event indices of the segments that carry one, in output order.
std::vector<EventIndex> order_sequence(const Narrative& narrative);

struct EvalReport {
  std::string label;
  PrfScore rouge1;
  PrfScore rouge2;
  PrfScore rougeL;  // in rouge_l_mode
  PrfScore rougeL_summary;
  PrfScore rougeL_corpus;
  RougeLMode rouge_l_mode = RougeLMode::Summary;
  double meteor = 0.0;
  double kendall_tau = 1.0;
  std::size_t ordered_segments = 0;
  std::size_t unaligned_segments = 0;
  std::size_t candidate_chars = 0;
  std::size_t reference_chars = 0;
  std::optional<double> bertscore_f1;  // never computed here; carried through when supplied
};

struct EvalOptions {
  RougeLMode rouge_l_mode = RougeLMode::Summary;
  Backend backend = Backend::OpenMP;
};

// reference_sentences may be empty, in which case reference_text is split
// into sentences. Throws EmptyReference when the reference has no tokens.
EvalReport evaluate(const Narrative& candidate, std::string_view reference_text,
                    std::span<const std::string> reference_sentences, const EvalOptions& options = {});

// Unicode code points in a UTF-8 string.
std::size_t char_count(std::string_view utf8);

std::string report_to_json(const EvalReport& report);
EvalReport report_from_json(std::string_view json_text);  // throws SchemaError

// Metric rows by run columns, labelled like the published comparison tables.
std::string format_table(std::span<const EvalReport> reports);
std::string format_csv(std::span<const EvalReport> reports);

}  // namespace taeg
