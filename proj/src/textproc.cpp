#include "taeg/textproc.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "taeg/error.hpp"

namespace taeg {

namespace {

struct Decoded {
  char32_t cp;
  std::size_t len;
};

// Lenient UTF-8 decode; invalid bytes come back as U+FFFD with length 1.
Decoded decode(std::string_view s, std::size_t i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) return {b0, 1};
  std::size_t len = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    return {0xFFFD, 1};
  }
  if (i + len > s.size()) return {0xFFFD, 1};
  for (std::size_t k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) return {0xFFFD, 1};
    cp = (cp << 6) | (b & 0x3F);
  }
  return {cp, len};
}

void encode(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool is_word_char(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') || (cp >= '0' && cp <= '9');
  }
  if (cp <= 0xBF) return false;               // Latin-1 controls, symbols, punctuation
  if (cp == 0xD7 || cp == 0xF7) return false;  // multiplication and division signs
  if (cp >= 0x2000 && cp <= 0x2BFF) return false;  // punctuation, symbols, arrows
  if (cp >= 0x3000 && cp <= 0x303F) return false;  // CJK punctuation
  if (cp == 0xFEFF || cp == 0xFFFD) return false;
  return true;
}

char32_t to_lower(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 32;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 32;
  if (cp == 0x178) return 0xFF;
  if (cp >= 0x100 && cp <= 0x17F && cp != 0x130 && cp != 0x131 && cp != 0x138 && cp != 0x149 &&
      cp != 0x17F) {
    // Latin Extended-A alternates upper/lower, with a parity flip in 0x139..0x148 and 0x179..0x17E.
    const bool odd_upper = (cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17E);
    const bool is_upper = odd_upper ? (cp % 2 == 1) : (cp % 2 == 0);
    return is_upper ? cp + 1 : cp;
  }
  if (cp >= 0x391 && cp <= 0x3AB && cp != 0x3A2) return cp + 32;  // Greek
  if (cp >= 0x410 && cp <= 0x42F) return cp + 32;                  // Cyrillic basic
  if (cp >= 0x400 && cp <= 0x40F) return cp + 80;                  // Cyrillic extensions
  return cp;
}

bool is_closer(char c) { return c == '"' || c == '\'' || c == ')' || c == ']'; }

}  // namespace

TokenList tokenize(std::string_view text) {
  TokenList tokens;
  std::string current;
  for (std::size_t i = 0; i < text.size();) {
    const auto [cp, len] = decode(text, i);
    i += len;
    if (is_word_char(cp)) {
      encode(to_lower(cp), current);
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> units;
  auto flush = [&](std::size_t from, std::size_t to) {
    auto piece = text.substr(from, to - from);
    const auto first = piece.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return;
    const auto last = piece.find_last_not_of(" \t\r\n");
    units.emplace_back(piece.substr(first, last - first + 1));
  };
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\n') {
      flush(start, i);
      start = i + 1;
    } else if (c == '.' || c == '!' || c == '?') {
      std::size_t j = i + 1;
      while (j < text.size() && (is_closer(text[j]) || text[j] == '.' || text[j] == '!' || text[j] == '?')) ++j;
      if (j == text.size() || text[j] == ' ' || text[j] == '\t' || text[j] == '\r' || text[j] == '\n') {
        flush(start, j);
        start = j;
        i = j - 1;
      }
    }
  }
  flush(start, text.size());
  return units;
}

double SparseVector::norm() const {
  double sum = 0.0;
  for (const auto& [dim, w] : entries) sum += w * w;
  return std::sqrt(sum);
}

std::int64_t VectorSpace::index_of(std::string_view token) const {
  const auto it = vocabulary_.find(std::string(token));
  return it == vocabulary_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

VectorSpace fit_space(std::span<const TokenList> units) {
  if (units.empty()) throw EmptyCorpus("cannot fit a vector space on zero text units");
  VectorSpace space;
  std::vector<std::size_t> df;
  std::vector<std::uint32_t> seen_in;  // last unit index + 1 that counted the dimension
  for (std::size_t u = 0; u < units.size(); ++u) {
    for (const auto& token : units[u]) {
      auto [it, inserted] = space.vocabulary_.try_emplace(token, static_cast<std::uint32_t>(df.size()));
      if (inserted) {
        df.push_back(0);
        seen_in.push_back(0);
      }
      if (seen_in[it->second] != u + 1) {
        seen_in[it->second] = static_cast<std::uint32_t>(u + 1);
        ++df[it->second];
      }
    }
  }
  space.n_units_ = units.size();
  space.idf_.resize(df.size());
  const double n = static_cast<double>(units.size());
  for (std::size_t d = 0; d < df.size(); ++d) {
    space.idf_[d] = std::log(n / static_cast<double>(df[d]));
  }
  return space;
}

SparseVector vectorize(const TokenList& unit, const VectorSpace& space) {
  std::map<std::uint32_t, double> counts;
  for (const auto& token : unit) {
    const auto dim = space.index_of(token);
    if (dim >= 0) counts[static_cast<std::uint32_t>(dim)] += 1.0;
  }
  SparseVector v;
  v.entries.reserve(counts.size());
  for (const auto& [dim, tf] : counts) {
    const double w = tf * space.idf()[dim];
    if (w != 0.0) v.entries.emplace_back(dim, w);
  }
  return v;
}

double dot(const SparseVector& u, const SparseVector& v) {
  double sum = 0.0;
  auto a = u.entries.begin();
  auto b = v.entries.begin();
  while (a != u.entries.end() && b != v.entries.end()) {
    if (a->first == b->first) {
      sum += a->second * b->second;
      ++a;
      ++b;
    } else if (a->first < b->first) {
      ++a;
    } else {
      ++b;
    }
  }
  return sum;
}

double cosine(const SparseVector& u, const SparseVector& v) {
  const double nu = u.norm();
  const double nv = v.norm();
  if (nu == 0.0 || nv == 0.0) return 0.0;
  return std::min(1.0, dot(u, v) / (nu * nv));
}

}  // namespace taeg
