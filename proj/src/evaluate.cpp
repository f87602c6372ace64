#include <algorithm>
#include <functional>

#include <fmt/format.h>

#include <json.hpp>

#include "taeg/error.hpp"
#include "taeg/eval.hpp"

namespace taeg {

using nlohmann::json;

namespace {

json prf_json(const PrfScore& s) { return {{"precision", s.precision}, {"recall", s.recall}, {"f1", s.f1}}; }

PrfScore prf_from(const json& j) {
  return {j.at("precision").get<double>(), j.at("recall").get<double>(), j.at("f1").get<double>()};
}

std::string thousands(std::size_t v) {
  auto digits = std::to_string(v);
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i && (digits.size() - i) % 3 == 0) out += ',';
    out += digits[i];
  }
  return out;
}

std::vector<TokenList> tokenize_all(const std::vector<std::string>& units) {
  std::vector<TokenList> out;
  out.reserve(units.size());
  for (const auto& u : units) out.push_back(tokenize(u));
  return out;
}

}  // namespace

std::size_t char_count(std::string_view utf8) {
  std::size_t n = 0;
  for (const char c : utf8) {
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
  }
  return n;
}

EvalReport evaluate(const Narrative& candidate, std::string_view reference_text,
                    std::span<const std::string> reference_sentences, const EvalOptions& options) {
  const auto ref_tokens = tokenize(reference_text);
  if (ref_tokens.empty()) throw EmptyReference("reference text has no tokens");

  const auto cand_text = render(candidate);
  const auto cand_tokens = tokenize(cand_text);

  const auto ref_units = tokenize_all(reference_sentences.empty()
                                          ? split_sentences(reference_text)
                                          : std::vector<std::string>(reference_sentences.begin(),
                                                                     reference_sentences.end()));
  const auto cand_units = tokenize_all(split_sentences(cand_text));

  EvalReport report;
  report.rouge1 = rouge_n(cand_tokens, ref_tokens, 1);
  report.rouge2 = rouge_n(cand_tokens, ref_tokens, 2);
  report.rougeL_summary = rouge_l(cand_units, ref_units, RougeLMode::Summary, options.backend);
  report.rougeL_corpus = rouge_l(cand_units, ref_units, RougeLMode::Corpus, options.backend);
  report.rouge_l_mode = options.rouge_l_mode;
  report.rougeL = options.rouge_l_mode == RougeLMode::Summary ? report.rougeL_summary : report.rougeL_corpus;
  report.meteor = meteor(cand_tokens, ref_tokens);

  const auto order = order_sequence(candidate);
  report.ordered_segments = order.size();
  report.unaligned_segments = candidate.segments.size() - order.size();
  report.kendall_tau = kendall_tau(order);

  report.candidate_chars = char_count(cand_text);
  report.reference_chars = char_count(reference_text);
  return report;
}

std::string report_to_json(const EvalReport& r) {
  json out{{"format_version", kFormatVersion},
           {"label", r.label},
           {"rouge1", prf_json(r.rouge1)},
           {"rouge2", prf_json(r.rouge2)},
           {"rougeL", prf_json(r.rougeL)},
           {"rougeL_summary", prf_json(r.rougeL_summary)},
           {"rougeL_corpus", prf_json(r.rougeL_corpus)},
           {"rouge_l_mode", to_string(r.rouge_l_mode)},
           {"meteor", r.meteor},
           {"kendall_tau", r.kendall_tau},
           {"tau_variant", "tau-b"},
           {"ordered_segments", r.ordered_segments},
           {"unaligned_segments", r.unaligned_segments},
           {"candidate_chars", r.candidate_chars},
           {"reference_chars", r.reference_chars},
           {"bertscore_f1", r.bertscore_f1 ? json(*r.bertscore_f1) : json(nullptr)}};
  return out.dump(2) + "\n";
}

EvalReport report_from_json(std::string_view json_text) {
  try {
    const auto j = json::parse(json_text);
    EvalReport r;
    r.label = j.value("label", std::string{});
    r.rouge1 = prf_from(j.at("rouge1"));
    r.rouge2 = prf_from(j.at("rouge2"));
    r.rougeL = prf_from(j.at("rougeL"));
    r.rougeL_summary = prf_from(j.at("rougeL_summary"));
    r.rougeL_corpus = prf_from(j.at("rougeL_corpus"));
    r.rouge_l_mode = parse_rouge_l_mode(j.at("rouge_l_mode").get<std::string>());
    r.meteor = j.at("meteor").get<double>();
    r.kendall_tau = j.at("kendall_tau").get<double>();
    r.ordered_segments = j.value("ordered_segments", std::size_t{0});
    r.unaligned_segments = j.value("unaligned_segments", std::size_t{0});
    r.candidate_chars = j.at("candidate_chars").get<std::size_t>();
    r.reference_chars = j.at("reference_chars").get<std::size_t>();
    if (j.contains("bertscore_f1") && !j["bertscore_f1"].is_null()) r.bertscore_f1 = j["bertscore_f1"].get<double>();
    return r;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("evaluation report: ") + e.what());
  } catch (const ConfigError& e) {
    throw SchemaError(std::string("evaluation report: ") + e.what());
  }
}

std::string format_table(std::span<const EvalReport> reports) {
  struct Row {
    std::string label;
    std::function<std::string(const EvalReport&)> cell;
  };
  const auto num = [](double v) { return fmt::format("{:.3f}", v); };

  std::vector<Row> rows{
      {"ROUGE-1 F1", [&](const EvalReport& r) { return num(r.rouge1.f1); }},
      {"ROUGE-2 F1", [&](const EvalReport& r) { return num(r.rouge2.f1); }},
      {"ROUGE-L F1", [&](const EvalReport& r) { return num(r.rougeL.f1); }},
  };
  const bool mixed_modes = std::any_of(reports.begin(), reports.end(), [&](const EvalReport& r) {
    return r.rouge_l_mode != reports.front().rouge_l_mode;
  });
  if (!reports.empty() && !mixed_modes) {
    if (reports.front().rouge_l_mode == RougeLMode::Summary) {
      rows.push_back({"ROUGE-L F1 (corpus)", [&](const EvalReport& r) { return num(r.rougeL_corpus.f1); }});
    } else {
      rows.push_back({"ROUGE-L F1 (summary)", [&](const EvalReport& r) { return num(r.rougeL_summary.f1); }});
    }
  } else {
    rows.push_back({"ROUGE-L F1 (summary)", [&](const EvalReport& r) { return num(r.rougeL_summary.f1); }});
    rows.push_back({"ROUGE-L F1 (corpus)", [&](const EvalReport& r) { return num(r.rougeL_corpus.f1); }});
  }
  if (std::any_of(reports.begin(), reports.end(), [](const EvalReport& r) { return r.bertscore_f1.has_value(); })) {
    rows.push_back({"BERTScore F1", [&](const EvalReport& r) {
                      return r.bertscore_f1 ? num(*r.bertscore_f1) : std::string("-");
                    }});
  }
  rows.push_back({"METEOR", [&](const EvalReport& r) { return num(r.meteor); }});
  rows.push_back({"Kendall's Tau", [&](const EvalReport& r) { return num(r.kendall_tau); }});
  rows.push_back({"Length (chars)", [](const EvalReport& r) { return thousands(r.candidate_chars); }});

  std::size_t label_width = std::string("Metric").size();
  for (const auto& row : rows) label_width = std::max(label_width, row.label.size());
  std::vector<std::size_t> widths;
  for (std::size_t c = 0; c < reports.size(); ++c) {
    std::size_t w = std::max<std::size_t>(reports[c].label.empty() ? 5 : reports[c].label.size(), 7);
    for (const auto& row : rows) w = std::max(w, row.cell(reports[c]).size());
    widths.push_back(w);
  }

  std::string out = fmt::format("{:<{}}", "Metric", label_width);
  for (std::size_t c = 0; c < reports.size(); ++c) {
    const auto& label = reports[c].label.empty() ? fmt::format("run{}", c + 1) : reports[c].label;
    out += fmt::format("  {:>{}}", label, widths[c]);
  }
  out += '\n';
  for (const auto& row : rows) {
    out += fmt::format("{:<{}}", row.label, label_width);
    for (std::size_t c = 0; c < reports.size(); ++c) out += fmt::format("  {:>{}}", row.cell(reports[c]), widths[c]);
    out += '\n';
  }
  return out;
}

std::string format_csv(std::span<const EvalReport> reports) {
  std::string out =
      "label,rouge1_f1,rouge2_f1,rougeL_f1,rougeL_summary_f1,rougeL_corpus_f1,meteor,kendall_tau,"
      "candidate_chars,reference_chars\n";
  for (const auto& r : reports) {
    std::string label = r.label;
    if (label.find_first_of(",\"") != std::string::npos) {
      std::string quoted = "\"";
      for (const char c : label) {
        if (c == '"') quoted += '"';
        quoted += c;
      }
      label = quoted + "\"";
    }
    out += fmt::format("{},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{},{}\n", label, r.rouge1.f1,
                       r.rouge2.f1, r.rougeL.f1, r.rougeL_summary.f1, r.rougeL_corpus.f1, r.meteor, r.kendall_tau,
                       r.candidate_chars, r.reference_chars);
  }
  return out;
}

}  // namespace taeg
