#include "taeg/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>
#include <spdlog/spdlog.h>

#include "taeg/error.hpp"

namespace taeg {

using nlohmann::json;

namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

int parse_positive(std::string_view field, std::string_view whole) {
  field = trim(field);
  int value = 0;
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc{} || ptr != end) {
    throw MalformedRef("non-numeric field in verse reference '" + std::string(whole) + "'");
  }
  if (value < 1) {
    throw MalformedRef("chapter and verse must be >= 1 in '" + std::string(whole) + "'");
  }
  return value;
}

template <typename T>
T require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw SchemaError(where + ": missing field '" + key + "'");
  }
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw SchemaError(where + ": field '" + key + "' has the wrong type");
  }
}

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string(what) + " is not valid JSON: " + e.what());
  }
}

void check_format_version(const json& root, const char* what) {
  const auto version = require<int>(root, "format_version", what);
  if (version != kFormatVersion) {
    throw SchemaError(std::string(what) + ": unsupported format_version " + std::to_string(version));
  }
}

VerseRange parse_range(const json& obj, const std::string& where) {
  VerseRange range{parse_verse_ref(require<std::string>(obj, "start", where)),
                   parse_verse_ref(require<std::string>(obj, "end", where))};
  if (range.start.book != range.end.book) {
    throw InvariantError(where + ": range crosses books (" + range.start.str() + " .. " +
                         range.end.str() + ")");
  }
  if (range.start.position_cmp(range.end) > 0) {
    throw InvariantError(where + ": range start after end (" + range.start.str() + " .. " +
                         range.end.str() + ")");
  }
  return range;
}

json range_to_json(const VerseRange& r) { return json{{"start", r.start.str()}, {"end", r.end.str()}}; }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string VerseRef::str() const {
  return book + ":" + std::to_string(chapter) + ":" + std::to_string(verse);
}

bool VerseRange::contains(const VerseRange& inner) const {
  return start.book == inner.start.book && start.position_cmp(inner.start) <= 0 &&
         inner.end.position_cmp(end) <= 0;
}

bool VerseRange::overlaps(const VerseRange& other) const {
  return start.book == other.start.book && start.position_cmp(other.end) <= 0 &&
         other.start.position_cmp(end) <= 0;
}

VerseRef parse_verse_ref(std::string_view s) {
  std::vector<std::string_view> fields;
  std::size_t from = 0;
  for (;;) {
    const auto colon = s.find(':', from);
    fields.push_back(s.substr(from, colon == std::string_view::npos ? s.npos : colon - from));
    if (colon == std::string_view::npos) break;
    from = colon + 1;
  }
  if (fields.size() != 3) {
    throw MalformedRef("expected book:chapter:verse, got '" + std::string(s) + "'");
  }
  const auto book = trim(fields[0]);
  if (book.empty() || book.find_first_of(" \t") != std::string_view::npos) {
    throw MalformedRef("empty or malformed book in '" + std::string(s) + "'");
  }
  return VerseRef{std::string(book), parse_positive(fields[1], s), parse_positive(fields[2], s)};
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

std::vector<Document> parse_corpus(std::string_view json_text) {
  const json root = parse_json(json_text, "corpus");
  check_format_version(root, "corpus");
  if (!root.contains("documents") || !root["documents"].is_array()) {
    throw SchemaError("corpus: 'documents' must be an array");
  }

  std::vector<Document> docs;
  std::set<DocId> seen;
  SentenceId next_id = 0;
  for (const auto& jdoc : root["documents"]) {
    Document doc;
    doc.id = require<std::string>(jdoc, "id", "corpus document");
    if (doc.id.empty() || doc.id.find(':') != std::string::npos) {
      throw SchemaError("corpus: invalid document id '" + doc.id + "'");
    }
    if (!seen.insert(doc.id).second) throw SchemaError("corpus: duplicate document id '" + doc.id + "'");
    const std::string where = "document " + doc.id;
    doc.title = require<std::string>(jdoc, "title", where);
    if (!jdoc.contains("sentences") || !jdoc["sentences"].is_array()) {
      throw SchemaError(where + ": 'sentences' must be an array");
    }
    for (const auto& js : jdoc["sentences"]) {
      Sentence sent;
      sent.id = next_id++;
      sent.doc_id = doc.id;
      sent.position = doc.sentences.size();
      const std::string swhere = where + " sentence " + std::to_string(sent.position);
      sent.text = require<std::string>(js, "text", swhere);
      if (sent.text.empty()) throw InvariantError(swhere + ": empty text");
      if (sent.text.find_first_of("\r\n") != std::string::npos) {
        throw InvariantError(swhere + ": text contains a newline");
      }
      sent.span = parse_range(js, swhere);
      if (sent.span.start.book != doc.id) {
        throw InvariantError(swhere + ": span book '" + sent.span.start.book +
                             "' does not match its document");
      }
      if (!doc.sentences.empty()) {
        const auto& prev = doc.sentences.back().span;
        if (sent.span.start.position_cmp(prev.start) < 0 || sent.span.end.position_cmp(prev.end) < 0) {
          throw InvariantError(swhere + ": verse spans decrease (" + prev.start.str() + " then " +
                               sent.span.start.str() + ")");
        }
      }
      doc.sentences.push_back(std::move(sent));
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::vector<Document> load_corpus(const std::filesystem::path& path) {
  return parse_corpus(read_file(path));
}

Timeline parse_timeline(std::string_view json_text) {
  const json root = parse_json(json_text, "timeline");
  check_format_version(root, "timeline");
  if (!root.contains("events") || !root["events"].is_array()) {
    throw SchemaError("timeline: 'events' must be an array");
  }
  Timeline timeline;
  for (const auto& jev : root["events"]) {
    CanonicalEvent ev;
    ev.index = require<int>(jev, "index", "timeline event");
    const std::string where = "event " + std::to_string(ev.index);
    ev.title = require<std::string>(jev, "title", where);
    if (!timeline.events.empty() && ev.index <= timeline.events.back().index) {
      throw InvariantError("timeline: event indices must be strictly increasing (" +
                           std::to_string(timeline.events.back().index) + " then " +
                           std::to_string(ev.index) + ")");
    }
    if (jev.contains("spans")) {
      if (!jev["spans"].is_object()) throw SchemaError(where + ": 'spans' must be an object");
      for (const auto& [doc, jrange] : jev["spans"].items()) {
        auto range = parse_range(jrange, where + " span " + doc);
        if (range.start.book != doc) {
          throw InvariantError(where + ": span for '" + doc + "' addresses book '" +
                               range.start.book + "'");
        }
        ev.spans.emplace(doc, std::move(range));
      }
    }
    if (!ev.covered()) spdlog::warn("timeline: event {} ('{}') is covered by no document", ev.index, ev.title);
    timeline.events.push_back(std::move(ev));
  }
  return timeline;
}

Timeline load_timeline(const std::filesystem::path& path) { return parse_timeline(read_file(path)); }

std::string corpus_to_json(const std::vector<Document>& docs) {
  json jdocs = json::array();
  for (const auto& doc : docs) {
    json sentences = json::array();
    for (const auto& s : doc.sentences) {
      sentences.push_back({{"text", s.text}, {"start", s.span.start.str()}, {"end", s.span.end.str()}});
    }
    jdocs.push_back({{"id", doc.id}, {"title", doc.title}, {"sentences", std::move(sentences)}});
  }
  return dump(json{{"format_version", kFormatVersion}, {"documents", std::move(jdocs)}});
}

std::string timeline_to_json(const Timeline& timeline) {
  json events = json::array();
  for (const auto& ev : timeline.events) {
    json spans = json::object();
    for (const auto& [doc, range] : ev.spans) spans[doc] = range_to_json(range);
    events.push_back({{"index", ev.index}, {"title", ev.title}, {"spans", std::move(spans)}});
  }
  return dump(json{{"format_version", kFormatVersion}, {"events", std::move(events)}});
}

void save_corpus(const std::vector<Document>& docs, const std::filesystem::path& path) {
  write_file(path, corpus_to_json(docs));
}

void save_timeline(const Timeline& timeline, const std::filesystem::path& path) {
  write_file(path, timeline_to_json(timeline));
}

Alignment align(const std::vector<Document>& docs, const Timeline& timeline) {
  std::map<DocId, const Document*> by_id;
  for (const auto& doc : docs) by_id.emplace(doc.id, &doc);

  Alignment out;
  out.sentence_to_event.assign(sentence_count(docs), std::nullopt);

  for (const auto& ev : timeline.events) {
    for (const auto& [doc_id, span] : ev.spans) {
      const auto it = by_id.find(doc_id);
      if (it == by_id.end()) {
        throw InvariantError("timeline event " + std::to_string(ev.index) +
                             " refers to undeclared document '" + doc_id + "'");
      }
      const auto& sentences = it->second->sentences;
      // Sentence starts are non-decreasing, so candidates begin at the first
      // sentence whose end reaches the span start.
      auto first = std::partition_point(sentences.begin(), sentences.end(), [&](const Sentence& s) {
        return s.span.end.position_cmp(span.start) < 0;
      });
      std::vector<SentenceId> members;
      for (auto s = first; s != sentences.end() && s->span.start.position_cmp(span.end) <= 0; ++s) {
        if (!span.contains(s->span)) {
          spdlog::debug("sentence {} ({}..{}) only partially overlaps event {}", s->id,
                        s->span.start.str(), s->span.end.str(), ev.index);
          continue;
        }
        auto& slot = out.sentence_to_event[s->id];
        if (slot && *slot != ev.index) {
          throw OverlapError("sentence " + std::to_string(s->id) + " (" + s->span.start.str() +
                             ") lies inside events " + std::to_string(*slot) + " and " +
                             std::to_string(ev.index));
        }
        slot = ev.index;
        members.push_back(s->id);
      }
      if (members.empty()) {
        spdlog::warn("event {} declares span {}..{} but contains no sentence of '{}'", ev.index,
                     span.start.str(), span.end.str(), doc_id);
        continue;
      }
      out.event_versions.emplace(std::make_pair(ev.index, doc_id), std::move(members));
    }
  }
  return out;
}

std::size_t sentence_count(const std::vector<Document>& docs) {
  std::size_t n = 0;
  for (const auto& d : docs) n += d.sentences.size();
  return n;
}

const Sentence& sentence_by_id(const std::vector<Document>& docs, SentenceId id) {
  SentenceId offset = 0;
  for (const auto& d : docs) {
    if (id < offset + d.sentences.size()) return d.sentences[id - offset];
    offset += d.sentences.size();
  }
  throw InvariantError("unknown sentence id " + std::to_string(id));
}

}  // namespace taeg
