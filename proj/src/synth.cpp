#include "taeg/synth.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include <json.hpp>

#include "taeg/error.hpp"
#include "taeg/textproc.hpp"

namespace taeg {

using nlohmann::json;

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - (max % bound + 1) % bound;  // largest multiple of bound, minus one
  std::uint64_t r = rng();
  while (r > limit) r = rng();
  return r % bound;
}

std::size_t uniform_between(Rng& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(uniform_below(rng, hi - lo + 1));
}

double uniform_unit(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void SynthConfig::validate() const {
  if (num_events < 1) throw ConfigError("synth: at least one event is required");
  if (num_docs < 1 || num_docs > 99) throw ConfigError("synth: document count must lie in [1, 99]");
  if (!(coverage_prob > 0.0 && coverage_prob <= 1.0)) throw ConfigError("synth: coverage probability must lie in (0, 1]");
  if (vocab_size < 2) throw ConfigError("synth: vocabulary needs at least two words");
  if (tokens_min < 1 || tokens_min > tokens_max) throw ConfigError("synth: invalid tokens-per-sentence range");
  if (sentences_min < 1 || sentences_min > sentences_max) throw ConfigError("synth: invalid sentences-per-version range");
  if (!(paraphrase_noise >= 0.0 && paraphrase_noise < 1.0)) throw ConfigError("synth: paraphrase noise must lie in [0, 1)");
}

std::string synth_word(std::size_t index) {
  static constexpr std::string_view consonants = "bcdfghklmnprstvz";
  static constexpr std::string_view vowels = "aeiou";
  constexpr std::size_t syllables = 16 * 5;
  std::string word;
  std::size_t digits = 0;
  do {
    const auto s = index % syllables;
    word += consonants[s / 5];
    word += vowels[s % 5];
    index /= syllables;
    ++digits;
  } while (index > 0 || digits < 2);
  return word;
}

SynthBundle generate(const SynthConfig& config) {
  config.validate();
  Rng rng(config.seed);
  SynthBundle bundle;
  bundle.config = config;

  const std::size_t m = config.num_events;
  const std::size_t n = config.num_docs;

  bundle.coverage.assign(m, std::vector<bool>(n, false));
  for (auto& row : bundle.coverage) {
    do {
      for (std::size_t d = 0; d < n; ++d) row[d] = uniform_unit(rng) < config.coverage_prob;
    } while (std::none_of(row.begin(), row.end(), [](bool b) { return b; }));
  }

  std::vector<std::string> vocab(config.vocab_size);
  for (std::size_t i = 0; i < vocab.size(); ++i) vocab[i] = synth_word(i);

  const std::size_t core_len = config.tokens_max * config.sentences_max;
  std::vector<std::vector<std::size_t>> cores(m, std::vector<std::size_t>(core_len));
  for (auto& core : cores) {
    for (auto& w : core) w = uniform_below(rng, vocab.size());
  }

  std::vector<DocId> doc_ids(n);
  for (std::size_t d = 0; d < n; ++d) {
    doc_ids[d] = (d + 1 < 10 ? "doc0" : "doc") + std::to_string(d + 1);
    bundle.documents.push_back({doc_ids[d], "Synthetic document " + std::to_string(d + 1), {}});
  }

  bundle.timeline.events.resize(m);
  std::vector<std::vector<std::size_t>> version_tokens(m, std::vector<std::size_t>(n, 0));
  std::vector<std::vector<std::string>> version_text(m, std::vector<std::string>(n));
  SentenceId next_id = 0;
  // Documents are generated one after another so sentence ids follow
  // (document, position) order.
  for (std::size_t d = 0; d < n; ++d) {
    auto& doc = bundle.documents[d];
    for (std::size_t e = 0; e < m; ++e) {
      auto& ev = bundle.timeline.events[e];
      ev.index = static_cast<EventIndex>(e + 1);
      ev.title = "Event " + std::to_string(e + 1);
      if (!bundle.coverage[e][d]) continue;

      const auto sentences = uniform_between(rng, config.sentences_min, config.sentences_max);
      std::vector<SentenceId> ids;
      for (std::size_t k = 0; k < sentences; ++k) {
        const auto length = uniform_between(rng, config.tokens_min, config.tokens_max);
        const auto offset = uniform_below(rng, core_len);
        std::string text;
        for (std::size_t t = 0; t < length; ++t) {
          std::size_t w = cores[e][(offset + t) % core_len];
          if (uniform_unit(rng) < config.paraphrase_noise) w = uniform_below(rng, vocab.size());
          if (!text.empty()) text += ' ';
          text += vocab[w];
        }
        text[0] = static_cast<char>(text[0] - 'a' + 'A');
        text += '.';
        version_tokens[e][d] += length;

        const int verse = static_cast<int>(doc.sentences.size()) + 1;
        const VerseRef ref{doc.id, 1, verse};
        if (!version_text[e][d].empty()) version_text[e][d] += ' ';
        version_text[e][d] += text;
        ids.push_back(next_id);
        doc.sentences.push_back({next_id++, doc.id, doc.sentences.size(), std::move(text), {ref, ref}});
      }
      ev.spans.emplace(doc.id, VerseRange{doc.sentences[doc.sentences.size() - sentences].span.start,
                                          doc.sentences.back().span.end});
      bundle.versions.emplace(std::make_pair(ev.index, doc.id), std::move(ids));
    }
  }

  for (std::size_t e = 0; e < m; ++e) {
    std::size_t best = n;
    for (std::size_t d = 0; d < n; ++d) {
      if (bundle.coverage[e][d] && (best == n || version_tokens[e][d] > version_tokens[e][best])) best = d;
    }
    bundle.golden_reference.push_back(version_text[e][best]);
  }
  return bundle;
}

std::string bundle_metadata_json(const SynthBundle& bundle) {
  const auto& c = bundle.config;
  json coverage = json::array();
  for (const auto& row : bundle.coverage) {
    json jrow = json::array();
    for (const bool b : row) jrow.push_back(b ? 1 : 0);
    coverage.push_back(std::move(jrow));
  }
  json out{{"format_version", kFormatVersion},
           {"rng", kRngName},
           {"config",
            {{"seed", c.seed},
             {"num_events", c.num_events},
             {"num_docs", c.num_docs},
             {"coverage_prob", c.coverage_prob},
             {"vocab_size", c.vocab_size},
             {"tokens_min", c.tokens_min},
             {"tokens_max", c.tokens_max},
             {"sentences_min", c.sentences_min},
             {"sentences_max", c.sentences_max},
             {"paraphrase_noise", c.paraphrase_noise}}},
           {"coverage", std::move(coverage)}};
  return out.dump(2) + "\n";
}

void write_bundle(const SynthBundle& bundle, const std::filesystem::path& dir) {
  save_corpus(bundle.documents, dir / "corpus.json");
  save_timeline(bundle.timeline, dir / "timeline.json");
  std::string golden;
  for (const auto& line : bundle.golden_reference) golden += line + "\n";
  write_file(dir / "golden.txt", golden);
  write_file(dir / "bundle.json", bundle_metadata_json(bundle));
}

Timeline degrade_timeline(const Timeline& timeline, double fraction, std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction < 1.0)) throw ConfigError("degradation fraction must lie in [0, 1)");
  const std::size_t m = timeline.events.size();
  const auto remove = static_cast<std::size_t>(fraction * static_cast<double>(m));

  // A full Fisher-Yates shuffle whose prefix names the removed events, so the
  // draw sequence does not depend on the fraction.
  Rng rng(seed);
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const auto j = i + static_cast<std::size_t>(uniform_below(rng, m - i));
    std::swap(order[i], order[j]);
  }
  std::vector<bool> dropped(m, false);
  for (std::size_t i = 0; i < remove; ++i) dropped[order[i]] = true;

  Timeline out;
  for (std::size_t i = 0; i < m; ++i) {
    if (!dropped[i]) out.events.push_back(timeline.events[i]);
  }
  return out;
}

}  // namespace taeg
