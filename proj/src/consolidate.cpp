#include "taeg/consolidate.hpp"

#include <algorithm>
#include <numeric>

#include <json.hpp>

#include "taeg/error.hpp"

namespace taeg {

using nlohmann::json;

std::string_view to_string(Method m) { return m == Method::Taeg ? "taeg" : "baseline"; }
std::string_view to_string(Ordering o) { return o == Ordering::ByScore ? "by-score" : "by-source"; }

Method parse_method(std::string_view s) {
  if (s == "taeg") return Method::Taeg;
  if (s == "baseline") return Method::Baseline;
  throw ConfigError("unknown method '" + std::string(s) + "'");
}

Ordering parse_ordering(std::string_view s) {
  if (s == "by-score") return Ordering::ByScore;
  if (s == "by-source") return Ordering::BySource;
  throw ConfigError("unknown ordering '" + std::string(s) + "' (expected by-score or by-source)");
}

Narrative consolidate_taeg(const Taeg& taeg, const Timeline& timeline, const CentralityScores& scores) {
  if (scores.size() < taeg.nodes.size()) {
    throw MissingScore("scores cover " + std::to_string(scores.size()) + " of " +
                       std::to_string(taeg.nodes.size()) + " TAEG nodes");
  }
  Narrative out;
  out.method = Method::Taeg;
  for (const auto& ev : timeline.events) {
    const auto& candidates = taeg.nodes_of(ev.index);
    if (candidates.empty()) continue;
    const auto best = *std::min_element(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
      if (scores[a] != scores[b]) return scores[a] > scores[b];
      if (taeg.nodes[a].doc_id != taeg.nodes[b].doc_id) return taeg.nodes[a].doc_id < taeg.nodes[b].doc_id;
      return a < b;
    });
    const auto& node = taeg.nodes[best];
    out.segments.push_back({node.text, node.event_index, node.doc_id, node.sentence_ids, scores[best]});
  }
  return out;
}

Narrative summarize_baseline(const std::vector<Document>& docs, const SemanticGraph& graph,
                             const CentralityScores& scores, std::size_t k, Ordering ordering,
                             const Alignment* alignment) {
  const std::size_t n = graph.node_count;
  if (k == 0) throw ConfigError("summary length must be at least one sentence");
  if (k > n) {
    throw KTooLarge("requested " + std::to_string(k) + " sentences but the corpus has " + std::to_string(n));
  }
  if (scores.size() < n) throw MissingScore("scores do not cover every sentence");

  std::vector<SentenceId> order(n);
  std::iota(order.begin(), order.end(), SentenceId{0});
  std::stable_sort(order.begin(), order.end(), [&](SentenceId a, SentenceId b) { return scores[a] > scores[b]; });
  order.resize(k);
  if (ordering == Ordering::BySource) std::sort(order.begin(), order.end());

  Narrative out;
  out.method = Method::Baseline;
  out.segments.reserve(k);
  for (const auto id : order) {
    const auto& s = sentence_by_id(docs, id);
    Segment seg{s.text, std::nullopt, s.doc_id, {id}, scores[id]};
    if (alignment) seg.event_index = alignment->event_of(id);
    out.segments.push_back(std::move(seg));
  }
  return out;
}

std::string render(const Narrative& narrative) {
  std::string out;
  for (std::size_t i = 0; i < narrative.segments.size(); ++i) {
    if (i) out += '\n';
    out += narrative.segments[i].text;
  }
  return out;
}

std::string narrative_to_json(const Narrative& narrative) {
  json segments = json::array();
  for (const auto& s : narrative.segments) {
    segments.push_back({{"event_index", s.event_index ? json(*s.event_index) : json(nullptr)},
                        {"doc_id", s.doc_id},
                        {"sentence_ids", s.sentence_ids},
                        {"score", s.score},
                        {"text", s.text}});
  }
  json out{{"format_version", kFormatVersion},
           {"method", to_string(narrative.method)},
           {"parameters", narrative.parameters},
           {"segments", std::move(segments)}};
  return out.dump(2) + "\n";
}

Narrative narrative_from_json(std::string_view json_text) {
  try {
    const auto root = json::parse(json_text);
    Narrative out;
    out.method = parse_method(root.at("method").get<std::string>());
    if (root.contains("parameters")) out.parameters = root["parameters"].get<std::map<std::string, std::string>>();
    for (const auto& js : root.at("segments")) {
      Segment s;
      s.text = js.at("text").get<std::string>();
      if (js.contains("event_index") && !js["event_index"].is_null()) s.event_index = js["event_index"].get<int>();
      s.doc_id = js.value("doc_id", std::string{});
      s.sentence_ids = js.value("sentence_ids", std::vector<SentenceId>{});
      s.score = js.value("score", 0.0);
      out.segments.push_back(std::move(s));
    }
    return out;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("narrative provenance: ") + e.what());
  } catch (const ConfigError& e) {
    throw SchemaError(std::string("narrative provenance: ") + e.what());
  }
}

}  // namespace taeg
