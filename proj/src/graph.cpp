#include "taeg/graph.hpp"

#include <algorithm>

#include <json.hpp>

#include "taeg/error.hpp"

namespace taeg {

using nlohmann::json;

std::vector<std::size_t> SemanticGraph::degrees() const {
  std::vector<std::size_t> deg(node_count, 0);
  for (const auto& e : edges) {
    ++deg[e.a];
    ++deg[e.b];
  }
  return deg;
}

const std::vector<std::size_t>& Taeg::nodes_of(EventIndex event) const {
  static const std::vector<std::size_t> none;
  const auto it = event_nodes.find(event);
  return it == event_nodes.end() ? none : it->second;
}

std::vector<TokenList> sentence_units(const std::vector<Document>& docs) {
  std::vector<TokenList> units;
  units.reserve(sentence_count(docs));
  for (const auto& doc : docs) {
    for (const auto& s : doc.sentences) units.push_back(tokenize(s.text));
  }
  return units;
}

SemanticGraph build_semantic_graph(const std::vector<Document>& docs, const VectorSpace& space, double threshold,
                                   Backend backend) {
  if (threshold < 0.0 || threshold >= 1.0) throw ConfigError("similarity threshold must lie in [0, 1)");
  const auto units = sentence_units(docs);
  if (units.empty()) throw EmptyCorpus("corpus has no sentences");

  std::vector<SparseVector> vectors;
  vectors.reserve(units.size());
  for (const auto& u : units) vectors.push_back(vectorize(u, space));

  SemanticGraph graph;
  graph.node_count = units.size();
  graph.threshold = threshold;
  graph.edges = backend == Backend::Serial ? kernels::serial::pairwise_cosine_edges(vectors, threshold)
                                           : kernels::omp::pairwise_cosine_edges(vectors, threshold);
  return graph;
}

std::vector<VersionText> collect_versions(const std::vector<Document>& docs, const Timeline& timeline,
                                          const Alignment& alignment) {
  std::vector<VersionText> versions;
  for (const auto& ev : timeline.events) {
    for (const auto& doc : docs) {
      const auto it = alignment.event_versions.find({ev.index, doc.id});
      if (it == alignment.event_versions.end() || it->second.empty()) continue;
      VersionText v{ev.index, doc.id, it->second, {}};
      for (const auto id : v.sentence_ids) {
        if (!v.text.empty()) v.text += ' ';
        v.text += sentence_by_id(docs, id).text;
      }
      versions.push_back(std::move(v));
    }
  }
  return versions;
}

Taeg build_taeg(const std::vector<Document>& docs, const Timeline& timeline, const Alignment& alignment,
                const VectorSpace& space) {
  if (timeline.events.empty()) throw EmptyTimeline("timeline has no events");
  auto versions = collect_versions(docs, timeline, alignment);
  if (versions.empty()) throw NoVersions("no canonical event has a version in any document");

  Taeg g;
  g.nodes.reserve(versions.size());
  for (auto& v : versions) {
    EventVersionNode node;
    node.id = g.nodes.size();
    node.event_index = v.event_index;
    node.doc_id = std::move(v.doc_id);
    node.sentence_ids = std::move(v.sentence_ids);
    node.text = std::move(v.text);
    node.vector = vectorize(tokenize(node.text), space);
    g.event_nodes[node.event_index].push_back(node.id);
    g.nodes.push_back(std::move(node));
  }

  // Nodes are already in timeline order, so each document's chain is its
  // nodes in node-id order.
  std::map<DocId, std::size_t> last_of_doc;
  for (const auto& node : g.nodes) {
    const auto [it, first] = last_of_doc.try_emplace(node.doc_id, node.id);
    if (!first) {
      g.before_edges.push_back({it->second, node.id});
      it->second = node.id;
    }
  }

  for (const auto& [event, ids] : g.event_nodes) {
    for (std::size_t i = 0; i < ids.size(); ++i) {
      for (std::size_t j = i + 1; j < ids.size(); ++j) {
        const double sim = cosine(g.nodes[ids[i]].vector, g.nodes[ids[j]].vector);
        g.same_event_edges.push_back({ids[i], ids[j], std::max(sim, kSameEventFloor)});
      }
    }
  }
  return g;
}

Taeg build_taeg(const std::vector<Document>& docs, const Timeline& timeline, const Alignment& alignment) {
  const auto versions = collect_versions(docs, timeline, alignment);
  std::vector<TokenList> units;
  units.reserve(versions.size());
  for (const auto& v : versions) units.push_back(tokenize(v.text));
  if (units.empty()) {
    if (timeline.events.empty()) throw EmptyTimeline("timeline has no events");
    throw NoVersions("no canonical event has a version in any document");
  }
  return build_taeg(docs, timeline, alignment, fit_space(units));
}

std::string graph_to_json(const SemanticGraph& graph) {
  json edges = json::array();
  for (const auto& e : graph.edges) edges.push_back({{"a", e.a}, {"b", e.b}, {"weight", e.weight}});
  json out{{"kind", "semantic"},
           {"node_count", graph.node_count},
           {"threshold", graph.threshold},
           {"edges", std::move(edges)}};
  return out.dump(2) + "\n";
}

std::string graph_to_json(const Taeg& taeg) {
  json nodes = json::array();
  for (const auto& n : taeg.nodes) {
    nodes.push_back({{"id", n.id},
                     {"event_index", n.event_index},
                     {"doc_id", n.doc_id},
                     {"sentence_ids", n.sentence_ids},
                     {"text", n.text}});
  }
  json edges = json::array();
  for (const auto& e : taeg.before_edges) {
    edges.push_back({{"type", "BEFORE"}, {"from", e.from}, {"to", e.to}, {"weight", kBeforeWeight}});
  }
  for (const auto& e : taeg.same_event_edges) {
    edges.push_back({{"type", "SAME_EVENT"}, {"a", e.a}, {"b", e.b}, {"weight", e.weight}});
  }
  json out{{"kind", "taeg"}, {"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
  return out.dump(2) + "\n";
}

}  // namespace taeg
