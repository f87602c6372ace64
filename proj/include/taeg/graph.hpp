#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "taeg/corpus.hpp"
#include "taeg/kernels.hpp"
#include "taeg/textproc.hpp"

namespace taeg {

inline constexpr double kDefaultThreshold = 0.1;
inline constexpr double kSameEventFloor = 0.05;
inline constexpr double kBeforeWeight = 1.0;

// Undirected sentence-similarity graph. Node i is sentence id i.
struct SemanticGraph {
  std::size_t node_count = 0;
  double threshold = kDefaultThreshold;
  std::vector<WeightedEdge> edges;  // a < b, sorted by (a, b)

  std::vector<std::size_t> degrees() const;
};

struct EventVersionNode {
  std::size_t id = 0;
  EventIndex event_index = 0;
  DocId doc_id;
  std::vector<SentenceId> sentence_ids;
  std::string text;
  SparseVector vector;
};

struct BeforeEdge {
  std::size_t from = 0;
  std::size_t to = 0;

  friend bool operator==(const BeforeEdge&, const BeforeEdge&) = default;
};

// Temporal Alignment Event Graph: one node per (event, document) version,
// BEFORE chains per document and SAME_EVENT cliques per event.
struct Taeg {
  std::vector<EventVersionNode> nodes;
  std::vector<BeforeEdge> before_edges;
  std::vector<WeightedEdge> same_event_edges;
  std::map<EventIndex, std::vector<std::size_t>> event_nodes;

  const std::vector<std::size_t>& nodes_of(EventIndex event) const;
};

std::vector<TokenList> sentence_units(const std::vector<Document>& docs);

// Baseline graph over every sentence of the corpus. Throws EmptyCorpus.
SemanticGraph build_semantic_graph(const std::vector<Document>& docs, const VectorSpace& space,
                                   double threshold = kDefaultThreshold, Backend backend = Backend::OpenMP);

struct VersionText {
  EventIndex event_index = 0;
  DocId doc_id;
  std::vector<SentenceId> sentence_ids;
  std::string text;
};

// Non-empty event versions in timeline order, documents in declaration
// order within an event. Text is the sentences joined by single spaces.
std::vector<VersionText> collect_versions(const std::vector<Document>& docs, const Timeline& timeline,
                                          const Alignment& alignment);

// Throws EmptyTimeline or NoVersions.
Taeg build_taeg(const std::vector<Document>& docs, const Timeline& timeline, const Alignment& alignment,
                const VectorSpace& space);
// Fits the vector space over the event versions first.
Taeg build_taeg(const std::vector<Document>& docs, const Timeline& timeline, const Alignment& alignment);

std::string graph_to_json(const SemanticGraph& graph);
std::string graph_to_json(const Taeg& taeg);

}  // namespace taeg
