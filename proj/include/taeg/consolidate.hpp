#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "taeg/centrality.hpp"
#include "taeg/corpus.hpp"
#include "taeg/graph.hpp"

namespace taeg {

inline constexpr std::size_t kDefaultBaselineSentences = 750;

enum class Method { Taeg, Baseline };
enum class Ordering { ByScore, BySource };

std::string_view to_string(Method m);
std::string_view to_string(Ordering o);
Method parse_method(std::string_view s);
Ordering parse_ordering(std::string_view s);  // "by-score" | "by-source"; throws ConfigError

struct Segment {
  std::string text;
  std::optional<EventIndex> event_index;
  DocId doc_id;
  std::vector<SentenceId> sentence_ids;
  double score = 0.0;

  friend bool operator==(const Segment&, const Segment&) = default;
};

struct Narrative {
  Method method = Method::Taeg;
  std::vector<Segment> segments;
  std::map<std::string, std::string> parameters;

  friend bool operator==(const Narrative&, const Narrative&) = default;
};

// Walks the timeline and, for every event with at least one version, emits
// the version with the highest score. Ties go to the lexicographically
// smallest doc id, then the smallest node id. Throws MissingScore when the
// score vector does not cover every node.
Narrative consolidate_taeg(const Taeg& taeg, const Timeline& timeline, const CentralityScores& scores);

// Top-k sentences by score (ties by sentence id). ByScore keeps descending
// score order; BySource restores corpus order. Event indices are filled from
// the alignment when one is given. Throws KTooLarge when k exceeds the
// sentence count and ConfigError when k is 0.
Narrative summarize_baseline(const std::vector<Document>& docs, const SemanticGraph& graph,
                             const CentralityScores& scores, std::size_t k, Ordering ordering,
                             const Alignment* alignment = nullptr);

// Segment texts joined by '\n'.
std::string render(const Narrative& narrative);

// Provenance sidecar.
std::string narrative_to_json(const Narrative& narrative);
Narrative narrative_from_json(std::string_view json_text);  // throws SchemaError

}  // namespace taeg
