#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "taeg/consolidate.hpp"
#include "taeg/error.hpp"
#include "taeg/eval.hpp"
#include "taeg/synth.hpp"

using namespace taeg;

namespace {

struct Fixture {
  SynthBundle bundle;
  Alignment alignment;
  Taeg taeg;
};

Fixture make_fixture(std::uint64_t seed, std::size_t events = 12, std::size_t docs = 4) {
  SynthConfig config;
  config.seed = seed;
  config.num_events = events;
  config.num_docs = docs;
  Fixture f;
  f.bundle = generate(config);
  f.alignment = align(f.bundle.documents, f.bundle.timeline);
  f.taeg = build_taeg(f.bundle.documents, f.bundle.timeline, f.alignment);
  return f;
}

CentralityScores scores_of(std::vector<double> values) {
  CentralityScores s;
  s.values = std::move(values);
  s.converged = true;
  return s;
}

}  // namespace

TEST(ConsolidateTaeg, ChronologyHoldsForArbitraryScores) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto f = make_fixture(seed, 5 + seed % 20, 1 + seed % 5);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<double> values(f.taeg.nodes.size());
      // Coarse scores so ties happen often.
      for (auto& v : values) v = trial % 2 ? u(rng) : static_cast<double>(rng() % 3);
      const auto scores = scores_of(values);
      const auto n = consolidate_taeg(f.taeg, f.bundle.timeline, scores);

      ASSERT_EQ(n.segments.size(), f.taeg.event_nodes.size());
      for (std::size_t i = 0; i < n.segments.size(); ++i) {
        ASSERT_TRUE(n.segments[i].event_index.has_value());
        if (i) ASSERT_LT(*n.segments[i - 1].event_index, *n.segments[i].event_index);
      }
      EXPECT_EQ(kendall_tau(order_sequence(n)), 1.0);

      // The chosen version scores at least as high as every sibling.
      for (const auto& seg : n.segments) {
        for (const auto id : f.taeg.nodes_of(*seg.event_index)) EXPECT_GE(seg.score, scores[id]);
      }
    }
  }
}

TEST(ConsolidateTaeg, SingleVersionEventsInterleaveAll) {
  // One document: every event has a single version, so the narrative is the
  // whole timeline in order.
  const auto f = make_fixture(5, 10, 1);
  const auto n = consolidate_taeg(f.taeg, f.bundle.timeline, taeg_scores(f.taeg));
  ASSERT_EQ(n.segments.size(), 10u);
  for (std::size_t i = 0; i < n.segments.size(); ++i) {
    EXPECT_EQ(n.segments[i].event_index, static_cast<EventIndex>(i + 1));
    EXPECT_EQ(n.segments[i].text, f.bundle.golden_reference[i]);
  }
  EXPECT_EQ(kendall_tau(order_sequence(n)), 1.0);
}

TEST(ConsolidateTaeg, TieBreakPrefersSmallestDocId) {
  const auto docs = parse_corpus(R"({"format_version": 1, "documents": [
    {"id": "Mark", "title": "", "sentences": [{"text": "Mark's telling.", "start": "Mark:1:1", "end": "Mark:1:1"}]},
    {"id": "John", "title": "", "sentences": [{"text": "John's telling.", "start": "John:1:1", "end": "John:1:1"}]},
    {"id": "Luke", "title": "", "sentences": [{"text": "Luke's telling.", "start": "Luke:1:1", "end": "Luke:1:1"}]}]})");
  const auto timeline = parse_timeline(R"({"format_version": 1, "events": [
    {"index": 1, "title": "e", "spans": {
      "Mark": {"start": "Mark:1:1", "end": "Mark:1:1"},
      "John": {"start": "John:1:1", "end": "John:1:1"},
      "Luke": {"start": "Luke:1:1", "end": "Luke:1:1"}}}]})");
  const auto g = build_taeg(docs, timeline, align(docs, timeline));
  const auto tied = consolidate_taeg(g, timeline, scores_of({0.3, 0.3, 0.3}));
  ASSERT_EQ(tied.segments.size(), 1u);
  EXPECT_EQ(tied.segments[0].doc_id, "John");
  const auto luke_first = consolidate_taeg(g, timeline, scores_of({0.3, 0.2, 0.3}));
  EXPECT_EQ(luke_first.segments[0].doc_id, "Luke");
  const auto mark_best = consolidate_taeg(g, timeline, scores_of({0.5, 0.2, 0.3}));
  EXPECT_EQ(mark_best.segments[0].doc_id, "Mark");
  EXPECT_EQ(mark_best.segments[0].text, "Mark's telling.");
  EXPECT_EQ(mark_best.segments[0].score, 0.5);
}

TEST(ConsolidateTaeg, SkipsUncoveredEventsAndChecksScores) {
  auto f = make_fixture(2, 6, 3);
  auto timeline = f.bundle.timeline;
  timeline.events.push_back(CanonicalEvent{100, "nowhere", {}});
  const auto n = consolidate_taeg(f.taeg, timeline, taeg_scores(f.taeg));
  EXPECT_EQ(n.segments.size(), 6u);
  EXPECT_THROW(consolidate_taeg(f.taeg, f.bundle.timeline, scores_of({0.1})), MissingScore);
}

TEST(SummarizeBaseline, TopKAndOrderings) {
  const auto f = make_fixture(7, 8, 3);
  const auto& docs = f.bundle.documents;
  const auto graph = build_semantic_graph(docs, fit_space(sentence_units(docs)));
  const auto scores = semantic_scores(graph);
  const std::size_t total = graph.node_count;

  // k = all, by-source: the corpus in order.
  const auto all = summarize_baseline(docs, graph, scores, total, Ordering::BySource);
  std::string concatenated;
  for (const auto& d : docs) {
    for (const auto& s : d.sentences) concatenated += (concatenated.empty() ? "" : "\n") + s.text;
  }
  EXPECT_EQ(render(all), concatenated);

  const auto top = summarize_baseline(docs, graph, scores, 5, Ordering::ByScore, &f.alignment);
  ASSERT_EQ(top.segments.size(), 5u);
  for (std::size_t i = 1; i < top.segments.size(); ++i) EXPECT_GE(top.segments[i - 1].score, top.segments[i].score);
  // Nothing left out scores above the last selected sentence.
  std::vector<double> sorted = scores.values;
  std::sort(sorted.rbegin(), sorted.rend());
  EXPECT_EQ(top.segments.back().score, sorted[4]);
  for (const auto& seg : top.segments) {
    ASSERT_EQ(seg.sentence_ids.size(), 1u);
    EXPECT_EQ(seg.event_index, f.alignment.event_of(seg.sentence_ids[0]));
    EXPECT_EQ(seg.text, sentence_by_id(docs, seg.sentence_ids[0]).text);
  }

  const auto source = summarize_baseline(docs, graph, scores, 5, Ordering::BySource);
  for (std::size_t i = 1; i < source.segments.size(); ++i) {
    EXPECT_LT(source.segments[i - 1].sentence_ids[0], source.segments[i].sentence_ids[0]);
  }
  EXPECT_FALSE(source.segments[0].event_index.has_value());

  EXPECT_THROW(summarize_baseline(docs, graph, scores, 0, Ordering::ByScore), ConfigError);
  EXPECT_THROW(summarize_baseline(docs, graph, scores, total + 1, Ordering::ByScore), KTooLarge);
}

TEST(SummarizeBaseline, ByScoreTauMatchesInducedPermutation) {
  const auto f = make_fixture(11, 15, 4);
  const auto& docs = f.bundle.documents;
  const auto graph = build_semantic_graph(docs, fit_space(sentence_units(docs)));
  const auto scores = semantic_scores(graph);
  const auto n = summarize_baseline(docs, graph, scores, graph.node_count, Ordering::ByScore, &f.alignment);

  std::vector<EventIndex> expected;
  for (const auto& seg : n.segments) {
    if (seg.event_index) expected.push_back(*seg.event_index);
  }
  EXPECT_EQ(order_sequence(n), expected);
  if (!std::is_sorted(expected.begin(), expected.end())) EXPECT_LT(kendall_tau(expected), 1.0);
  EXPECT_FALSE(std::is_sorted(expected.begin(), expected.end()));
}

TEST(Render, JoinsWithNewlines) {
  Narrative n;
  EXPECT_EQ(render(n), "");
  n.segments.push_back({"a b.", std::nullopt, "A", {0}, 0.0});
  EXPECT_EQ(render(n), "a b.");
  n.segments.push_back({"s2", std::nullopt, "A", {1}, 0.0});
  EXPECT_EQ(render(n), "a b.\ns2");
}

TEST(NarrativeJson, RoundTrip) {
  const auto f = make_fixture(3);
  auto n = consolidate_taeg(f.taeg, f.bundle.timeline, taeg_scores(f.taeg));
  n.parameters = {{"damping", "0.85"}, {"scope", "global"}};
  const auto text = narrative_to_json(n);
  const auto back = narrative_from_json(text);
  EXPECT_EQ(back, n);
  EXPECT_EQ(narrative_to_json(back), text);

  Narrative baseline;
  baseline.method = Method::Baseline;
  baseline.segments.push_back({"x", std::nullopt, "A", {4}, 0.25});
  EXPECT_EQ(narrative_from_json(narrative_to_json(baseline)), baseline);

  EXPECT_THROW(narrative_from_json("[1, 2]"), SchemaError);
  EXPECT_THROW(narrative_from_json(R"({"method": "other", "segments": []})"), SchemaError);
}

TEST(Parsing, MethodAndOrdering) {
  EXPECT_EQ(parse_ordering("by-score"), Ordering::ByScore);
  EXPECT_EQ(parse_ordering("by-source"), Ordering::BySource);
  EXPECT_THROW(parse_ordering("random"), ConfigError);
  EXPECT_EQ(parse_method(to_string(Method::Baseline)), Method::Baseline);
}
