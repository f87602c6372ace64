#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "taeg/corpus.hpp"

namespace taeg {

// Name of the random engine recorded in bundle metadata. The engine's output
// sequence is fixed by the C++ standard; integer and real draws are derived
// from it with the portable helpers below, never with std distributions.
inline constexpr const char* kRngName = "mt19937_64";

using Rng = std::mt19937_64;

// Uniform integer in [0, bound) by rejection; bound > 0.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);
// Uniform integer in [lo, hi].
std::size_t uniform_between(Rng& rng, std::size_t lo, std::size_t hi);
// Uniform real in [0, 1) with 53 random bits.
double uniform_unit(Rng& rng);

struct SynthConfig {
  std::uint64_t seed = 1;
  std::size_t num_events = 20;
  std::size_t num_docs = 4;
  double coverage_prob = 0.6;
  std::size_t vocab_size = 2000;
  std::size_t tokens_min = 6;
  std::size_t tokens_max = 14;
  std::size_t sentences_min = 1;
  std::size_t sentences_max = 3;
  double paraphrase_noise = 0.2;

  void validate() const;  // throws ConfigError
};

struct SynthBundle {
  SynthConfig config;
  std::vector<Document> documents;
  Timeline timeline;
  std::vector<std::string> golden_reference;  // one version text per event, timeline order
  std::vector<std::vector<bool>> coverage;    // [event][doc]
  // Ground-truth sentence ids of each covered (event, doc) version.
  std::map<std::pair<EventIndex, DocId>, std::vector<SentenceId>> versions;
};

// Synthetic word for a vocabulary index (consonant-vowel syllables).
std::string synth_word(std::size_t index);

SynthBundle generate(const SynthConfig& config);

// Writes corpus.json, timeline.json, golden.txt and bundle.json into dir.
void write_bundle(const SynthBundle& bundle, const std::filesystem::path& dir);
std::string bundle_metadata_json(const SynthBundle& bundle);

// Drops floor(fraction * M) events chosen uniformly without replacement and
// keeps the survivors in order. For one seed the removed sets are nested as
// the fraction grows. Throws ConfigError unless 0 <= fraction < 1.
Timeline degrade_timeline(const Timeline& timeline, double fraction, std::uint64_t seed);

}  // namespace taeg
