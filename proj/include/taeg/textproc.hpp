#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace taeg {

using TokenList = std::vector<std::string>;

// Lowercased maximal runs of letters and digits. Input is UTF-8; Latin,
// Greek and Cyrillic letters are case-folded, other non-ASCII code points
// above U+00BF count as letters and pass through unchanged. Everything
// else (ASCII punctuation, U+0080..U+00BF, general punctuation) separates.
TokenList tokenize(std::string_view text);

// Splits raw text into sentence units at newlines and at '.', '!' or '?'
// followed by whitespace (closing quotes/brackets stay with the sentence).
// Units are trimmed; empty units are dropped.
std::vector<std::string> split_sentences(std::string_view text);

// Porter (1980) suffix stripper. Tokens of length <= 2 are returned as is.
std::string stem(std::string_view token);

struct SparseVector {
  std::vector<std::pair<std::uint32_t, double>> entries;  // strictly increasing dimensions

  bool empty() const { return entries.empty(); }
  std::size_t size() const { return entries.size(); }
  double norm() const;
  friend bool operator==(const SparseVector&, const SparseVector&) = default;
};

class VectorSpace {
 public:
  const std::unordered_map<std::string, std::uint32_t>& vocabulary() const { return vocabulary_; }
  const std::vector<double>& idf() const { return idf_; }
  std::size_t n_units() const { return n_units_; }
  std::size_t dimension() const { return idf_.size(); }

  // Dimension of a token, or -1 when out of vocabulary.
  std::int64_t index_of(std::string_view token) const;

 private:
  friend VectorSpace fit_space(std::span<const TokenList> units);
  std::unordered_map<std::string, std::uint32_t> vocabulary_;
  std::vector<double> idf_;
  std::size_t n_units_ = 0;
};

// idf(t) = ln(n_units / df(t)). Dimensions follow first occurrence order.
// Throws EmptyCorpus when units is empty.
VectorSpace fit_space(std::span<const TokenList> units);

// Raw term frequency times idf; out-of-vocabulary tokens and zero weights
// are dropped.
SparseVector vectorize(const TokenList& unit, const VectorSpace& space);

double dot(const SparseVector& u, const SparseVector& v);

// 0 when either vector has zero norm.
double cosine(const SparseVector& u, const SparseVector& v);

}  // namespace taeg
