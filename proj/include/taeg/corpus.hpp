#pragma once

#include <compare>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace taeg {

using DocId = std::string;
using SentenceId = std::size_t;
using EventIndex = int;

inline constexpr int kFormatVersion = 1;

// A "book:chapter:verse" address. Ordering is (chapter, verse) within a book;
// comparing refs from different books is meaningless and callers avoid it.
struct VerseRef {
  DocId book;
  int chapter = 1;
  int verse = 1;

  friend bool operator==(const VerseRef&, const VerseRef&) = default;
  std::strong_ordering position_cmp(const VerseRef& other) const {
    if (auto c = chapter <=> other.chapter; c != 0) return c;
    return verse <=> other.verse;
  }
  std::string str() const;
};

// Inclusive range of verses inside one book.
struct VerseRange {
  VerseRef start;
  VerseRef end;

  friend bool operator==(const VerseRange&, const VerseRange&) = default;
  bool contains(const VerseRange& inner) const;
  bool overlaps(const VerseRange& other) const;
};

struct Sentence {
  SentenceId id = 0;
  DocId doc_id;
  std::size_t position = 0;
  std::string text;
  VerseRange span;

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

struct Document {
  DocId id;
  std::string title;
  std::vector<Sentence> sentences;

  friend bool operator==(const Document&, const Document&) = default;
};

struct CanonicalEvent {
  EventIndex index = 0;
  std::string title;
  std::map<DocId, VerseRange> spans;

  bool covered() const { return !spans.empty(); }
  friend bool operator==(const CanonicalEvent&, const CanonicalEvent&) = default;
};

struct Timeline {
  std::vector<CanonicalEvent> events;

  friend bool operator==(const Timeline&, const Timeline&) = default;
};

struct Alignment {
  std::vector<std::optional<EventIndex>> sentence_to_event;  // indexed by sentence id
  std::map<std::pair<EventIndex, DocId>, std::vector<SentenceId>> event_versions;

  std::optional<EventIndex> event_of(SentenceId id) const {
    return id < sentence_to_event.size() ? sentence_to_event[id] : std::nullopt;
  }
};

VerseRef parse_verse_ref(std::string_view s);

// Loading validates the schema and the document/timeline invariants and
// throws IoError, SchemaError, MalformedRef or InvariantError.
std::vector<Document> load_corpus(const std::filesystem::path& path);
std::vector<Document> parse_corpus(std::string_view json_text);
Timeline load_timeline(const std::filesystem::path& path);
Timeline parse_timeline(std::string_view json_text);

// Serialized with two-space indentation and a trailing newline, so a
// save/load/save cycle is byte-stable.
std::string corpus_to_json(const std::vector<Document>& docs);
std::string timeline_to_json(const Timeline& timeline);
void save_corpus(const std::vector<Document>& docs, const std::filesystem::path& path);
void save_timeline(const Timeline& timeline, const std::filesystem::path& path);

// Assigns each sentence to the event whose span (for the sentence's document)
// fully contains the sentence span. Partial overlaps stay unassigned and are
// logged; containment in two events throws OverlapError.
Alignment align(const std::vector<Document>& docs, const Timeline& timeline);

std::size_t sentence_count(const std::vector<Document>& docs);
const Sentence& sentence_by_id(const std::vector<Document>& docs, SentenceId id);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace taeg
