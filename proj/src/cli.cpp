#include "taeg/cli.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/spdlog.h>

#include "taeg/centrality.hpp"
#include "taeg/consolidate.hpp"
#include "taeg/corpus.hpp"
#include "taeg/error.hpp"
#include "taeg/eval.hpp"
#include "taeg/graph.hpp"
#include "taeg/synth.hpp"

namespace taeg {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct GlobalFlags {
  std::string format = "table";
  std::uint64_t seed = 1;
  double threshold = kDefaultThreshold;
  PowerIterationConfig power;
  std::size_t sentences = kDefaultBaselineSentences;
  std::string ordering = "by-score";
  std::string rouge_l_mode = "summary";
  std::string lexrank_scope = "global";
  std::string backend = "omp";
  std::string log_level = "warn";
};

std::string timestamp_utc() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream ss;
  ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return ss.str();
}

Backend parse_backend(const std::string& s) {
  if (s == "omp") return Backend::OpenMP;
  if (s == "serial") return Backend::Serial;
  throw ConfigError("unknown backend '" + s + "' (expected omp or serial)");
}

LexRankScope parse_scope(const std::string& s) {
  if (s == "global") return LexRankScope::Global;
  if (s == "per-event") return LexRankScope::PerEvent;
  throw ConfigError("unknown LexRank scope '" + s + "' (expected global or per-event)");
}

std::string fmt_double(double v) {
  std::ostringstream ss;
  ss << std::setprecision(17) << v;
  return ss.str();
}

std::map<std::string, std::string> power_params(const GlobalFlags& g) {
  return {{"damping", fmt_double(g.power.damping)},
          {"epsilon", fmt_double(g.power.epsilon)},
          {"max_iter", std::to_string(g.power.max_iter)}};
}

void write_manifest(const fs::path& path, const std::string& command, const std::vector<std::string>& argv,
                    const json& inputs, const std::map<std::string, std::string>& parameters) {
  json manifest{{"command", command},
                {"argv", argv},
                {"inputs", inputs},
                {"parameters", parameters},
                {"tool_version", kToolVersion},
                {"timestamp", timestamp_utc()}};
  write_file(path, manifest.dump(2) + "\n");
}

int cmd_consolidate(const GlobalFlags& g, const std::vector<std::string>& argv, const std::string& corpus_path,
                    const std::string& timeline_path, const fs::path& out_dir, const std::string& dump_graph,
                    std::ostream& out) {
  const auto docs = load_corpus(corpus_path);
  const auto timeline = load_timeline(timeline_path);
  const auto alignment = align(docs, timeline);
  const auto graph = build_taeg(docs, timeline, alignment);
  const auto scope = parse_scope(g.lexrank_scope);
  const auto scores = taeg_scores(graph, g.power, scope, parse_backend(g.backend));
  if (!scores.converged) spdlog::warn("LexRank did not converge within {} iterations", g.power.max_iter);

  auto narrative = consolidate_taeg(graph, timeline, scores);
  narrative.parameters = power_params(g);
  narrative.parameters["lexrank_scope"] = g.lexrank_scope;
  narrative.parameters["same_event_floor"] = fmt_double(kSameEventFloor);
  narrative.parameters["before_weight"] = fmt_double(kBeforeWeight);

  write_file(out_dir / "narrative.txt", render(narrative) + "\n");
  write_file(out_dir / "narrative.json", narrative_to_json(narrative));
  if (!dump_graph.empty()) write_file(dump_graph, graph_to_json(graph));
  write_manifest(out_dir / "manifest.json", "consolidate", argv,
                 {{"corpus", corpus_path}, {"timeline", timeline_path}}, narrative.parameters);
  out << "consolidated " << narrative.segments.size() << " events from " << graph.nodes.size()
      << " versions into " << (out_dir / "narrative.txt").string() << "\n";
  return kExitOk;
}

int cmd_baseline(const GlobalFlags& g, const std::vector<std::string>& argv, const std::string& corpus_path,
                 const std::string& timeline_path, const fs::path& out_dir, const std::string& dump_graph,
                 std::ostream& out) {
  if (g.sentences == 0) throw ConfigError("--sentences must be at least 1");
  const auto ordering = parse_ordering(g.ordering);
  const auto docs = load_corpus(corpus_path);
  std::optional<Alignment> alignment;
  if (!timeline_path.empty()) alignment = align(docs, load_timeline(timeline_path));

  const auto units = sentence_units(docs);
  if (units.empty()) throw EmptyCorpus("corpus has no sentences");
  const auto backend = parse_backend(g.backend);
  const auto graph = build_semantic_graph(docs, fit_space(units), g.threshold, backend);
  const auto scores = semantic_scores(graph, g.power, backend);
  if (!scores.converged) spdlog::warn("LexRank did not converge within {} iterations", g.power.max_iter);

  auto narrative = summarize_baseline(docs, graph, scores, g.sentences, ordering, alignment ? &*alignment : nullptr);
  narrative.parameters = power_params(g);
  narrative.parameters["threshold"] = fmt_double(g.threshold);
  narrative.parameters["sentences"] = std::to_string(g.sentences);
  narrative.parameters["ordering"] = g.ordering;

  write_file(out_dir / "narrative.txt", render(narrative) + "\n");
  write_file(out_dir / "narrative.json", narrative_to_json(narrative));
  if (!dump_graph.empty()) write_file(dump_graph, graph_to_json(graph));
  json inputs{{"corpus", corpus_path}};
  if (!timeline_path.empty()) inputs["timeline"] = timeline_path;
  write_manifest(out_dir / "manifest.json", "baseline", argv, inputs, narrative.parameters);
  out << "selected " << narrative.segments.size() << " of " << graph.node_count << " sentences into "
      << (out_dir / "narrative.txt").string() << "\n";
  return kExitOk;
}

// Candidate narrative: the provenance sidecar when present, otherwise one
// segment per line without event information.
Narrative load_candidate(const fs::path& candidate_path, std::string provenance_path) {
  if (provenance_path.empty()) {
    auto sibling = candidate_path;
    sibling.replace_extension(".json");
    if (sibling != candidate_path && fs::exists(sibling)) provenance_path = sibling.string();
  }
  const auto text = read_file(candidate_path);
  if (!provenance_path.empty()) {
    auto narrative = narrative_from_json(read_file(provenance_path));
    auto rendered = render(narrative);
    std::string_view trimmed = text;
    while (!trimmed.empty() && (trimmed.back() == '\n' || trimmed.back() == '\r')) trimmed.remove_suffix(1);
    if (rendered != trimmed) {
      spdlog::warn("{} differs from the text recorded in {}; scoring the recorded segments",
                   candidate_path.string(), provenance_path);
    }
    return narrative;
  }
  spdlog::info("no provenance for {}; Kendall's tau has no event indices to order", candidate_path.string());
  Narrative narrative;
  narrative.method = Method::Baseline;
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) narrative.segments.push_back({line, std::nullopt, {}, {}, 0.0});
  }
  return narrative;
}

void print_reports(std::ostream& out, const std::vector<EvalReport>& reports, const std::string& format) {
  if (format == "table") {
    out << format_table(reports);
  } else if (format == "csv") {
    out << format_csv(reports);
  } else if (format == "json") {
    if (reports.size() == 1) {
      out << report_to_json(reports.front());
    } else {
      json arr = json::array();
      for (const auto& r : reports) arr.push_back(json::parse(report_to_json(r)));
      out << arr.dump(2) << "\n";
    }
  } else {
    throw ConfigError("unknown format '" + format + "' (expected table, json or csv)");
  }
}

int cmd_evaluate(const GlobalFlags& g, const std::string& candidate_path, const std::string& reference_path,
                 const std::string& provenance_path, const std::string& label, const std::string& save_path,
                 std::ostream& out) {
  if (g.format != "table" && g.format != "json" && g.format != "csv") {
    throw ConfigError("unknown format '" + g.format + "' (expected table, json or csv)");
  }
  const auto narrative = load_candidate(candidate_path, provenance_path);
  const auto reference = read_file(reference_path);
  EvalOptions options{parse_rouge_l_mode(g.rouge_l_mode), parse_backend(g.backend)};
  auto report = evaluate(narrative, reference, {}, options);
  report.label = label.empty() ? fs::path(candidate_path).parent_path().filename().string() : label;
  if (report.label.empty()) report.label = fs::path(candidate_path).stem().string();
  if (!save_path.empty()) write_file(save_path, report_to_json(report));
  print_reports(out, {report}, g.format);
  return kExitOk;
}

int cmd_synth(const GlobalFlags& g, const std::vector<std::string>& argv, SynthConfig config, const fs::path& out_dir,
              std::ostream& out) {
  config.seed = g.seed;
  const auto bundle = generate(config);
  write_bundle(bundle, out_dir);
  write_manifest(out_dir / "manifest.json", "synth", argv, json::object(),
                 {{"seed", std::to_string(config.seed)},
                  {"events", std::to_string(config.num_events)},
                  {"docs", std::to_string(config.num_docs)},
                  {"coverage", fmt_double(config.coverage_prob)},
                  {"vocab", std::to_string(config.vocab_size)},
                  {"tokens_min", std::to_string(config.tokens_min)},
                  {"tokens_max", std::to_string(config.tokens_max)},
                  {"sentences_min", std::to_string(config.sentences_min)},
                  {"sentences_max", std::to_string(config.sentences_max)},
                  {"noise", fmt_double(config.paraphrase_noise)},
                  {"rng", kRngName}});
  out << "wrote " << sentence_count(bundle.documents) << " sentences in " << bundle.documents.size()
      << " documents to " << out_dir.string() << "\n";
  return kExitOk;
}

int cmd_degrade(const GlobalFlags& g, const std::vector<std::string>& argv, const std::string& timeline_path,
                double fraction, const fs::path& out_path, std::ostream& out) {
  if (!(fraction >= 0.0 && fraction < 1.0)) throw ConfigError("--fraction must lie in [0, 1)");
  const auto timeline = load_timeline(timeline_path);
  const auto degraded = degrade_timeline(timeline, fraction, g.seed);
  save_timeline(degraded, out_path);
  write_manifest(fs::path(out_path.string() + ".manifest.json"), "degrade", argv, {{"timeline", timeline_path}},
                 {{"fraction", fmt_double(fraction)}, {"seed", std::to_string(g.seed)}, {"rng", kRngName}});
  out << "kept " << degraded.events.size() << " of " << timeline.events.size() << " events in "
      << out_path.string() << "\n";
  return kExitOk;
}

int cmd_report(const GlobalFlags& g, const std::vector<std::string>& runs, std::ostream& out) {
  if (runs.empty()) throw ConfigError("report needs at least one evaluation run");
  std::vector<EvalReport> reports;
  for (const auto& run : runs) {
    fs::path path = run;
    if (fs::is_directory(path)) path /= "eval.json";
    auto report = report_from_json(read_file(path));
    if (report.label.empty()) {
      report.label = fs::is_directory(run) ? fs::path(run).filename().string() : fs::path(run).stem().string();
    }
    reports.push_back(std::move(report));
  }
  print_reports(out, reports, g.format);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Narrative consolidation over temporal alignment event graphs", "taeg"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  GlobalFlags g;
  app.add_option("--format", g.format, "Output format: table, json or csv")->capture_default_str();
  app.add_option("--seed", g.seed, "Seed for every random draw")->capture_default_str();
  app.add_option("--threshold", g.threshold, "Baseline cosine threshold in [0, 1)")->capture_default_str();
  app.add_option("--damping", g.power.damping, "LexRank damping in (0, 1]")->capture_default_str();
  app.add_option("--epsilon", g.power.epsilon, "Power-iteration L1 tolerance")->capture_default_str();
  app.add_option("--max-iter", g.power.max_iter, "Power-iteration cap")->capture_default_str();
  app.add_option("--sentences", g.sentences, "Baseline summary length in sentences")->capture_default_str();
  app.add_option("--ordering", g.ordering, "Baseline ordering: by-score or by-source")->capture_default_str();
  app.add_option("--rouge-l-mode", g.rouge_l_mode, "ROUGE-L mode: summary or corpus")->capture_default_str();
  app.add_option("--lexrank-scope", g.lexrank_scope, "TAEG LexRank scope: global or per-event")
      ->capture_default_str();
  app.add_option("--backend", g.backend, "Kernel driver: omp or serial")->capture_default_str();
  app.add_option("--log-level", g.log_level, "trace, debug, info, warn, error or off")->capture_default_str();

  std::string corpus, timeline, out_dir, dump_graph;
  auto* consolidate = app.add_subcommand("consolidate", "Consolidate the corpus along the timeline");
  consolidate->fallthrough();
  consolidate->add_option("corpus", corpus, "Corpus JSON")->required();
  consolidate->add_option("timeline", timeline, "Timeline JSON")->required();
  consolidate->add_option("out", out_dir, "Output directory")->required();
  consolidate->add_option("--dump-graph", dump_graph, "Write the TAEG as JSON");

  std::string baseline_timeline;
  auto* baseline = app.add_subcommand("baseline", "LexRank top-k summary over the sentence graph");
  baseline->fallthrough();
  baseline->add_option("corpus", corpus, "Corpus JSON")->required();
  baseline->add_option("out", out_dir, "Output directory")->required();
  baseline->add_option("--timeline", baseline_timeline, "Timeline JSON, to tag sentences with events");
  baseline->add_option("--dump-graph", dump_graph, "Write the sentence graph as JSON");

  std::string candidate, reference, provenance, label, save;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score a narrative against a reference");
  evaluate_cmd->fallthrough();
  evaluate_cmd->add_option("candidate", candidate, "Narrative text")->required();
  evaluate_cmd->add_option("reference", reference, "Reference text")->required();
  evaluate_cmd->add_option("--provenance", provenance, "Narrative sidecar JSON (default: sibling .json)");
  evaluate_cmd->add_option("--label", label, "Column label for tables");
  evaluate_cmd->add_option("--out", save, "Also write the report as JSON");

  SynthConfig synth_config;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus bundle");
  synth->fallthrough();
  synth->add_option("out", out_dir, "Output directory")->required();
  synth->add_option("--events", synth_config.num_events, "Canonical events")->capture_default_str();
  synth->add_option("--docs", synth_config.num_docs, "Documents")->capture_default_str();
  synth->add_option("--coverage", synth_config.coverage_prob, "Per (event, doc) coverage probability")
      ->capture_default_str();
  synth->add_option("--vocab", synth_config.vocab_size, "Vocabulary size")->capture_default_str();
  synth->add_option("--tokens-min", synth_config.tokens_min)->capture_default_str();
  synth->add_option("--tokens-max", synth_config.tokens_max)->capture_default_str();
  synth->add_option("--sentences-min", synth_config.sentences_min)->capture_default_str();
  synth->add_option("--sentences-max", synth_config.sentences_max)->capture_default_str();
  synth->add_option("--noise", synth_config.paraphrase_noise, "Paraphrase noise in [0, 1)")->capture_default_str();

  double fraction = 0.0;
  std::string degrade_out;
  auto* degrade = app.add_subcommand("degrade", "Randomly drop a fraction of timeline events");
  degrade->fallthrough();
  degrade->add_option("timeline", timeline, "Timeline JSON")->required();
  degrade->add_option("--fraction", fraction, "Fraction of events to remove, in [0, 1)")->required();
  degrade->add_option("--out", degrade_out, "Output timeline JSON")->required();

  std::vector<std::string> runs;
  auto* report = app.add_subcommand("report", "Compare evaluation runs side by side");
  report->fallthrough();
  report->add_option("runs", runs, "Evaluation JSON files or directories holding eval.json");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  spdlog::set_level(spdlog::level::from_str(g.log_level));
  try {
    if (*consolidate) return cmd_consolidate(g, args, corpus, timeline, out_dir, dump_graph, out);
    if (*baseline) return cmd_baseline(g, args, corpus, baseline_timeline, out_dir, dump_graph, out);
    if (*evaluate_cmd) return cmd_evaluate(g, candidate, reference, provenance, label, save, out);
    if (*synth) return cmd_synth(g, args, synth_config, out_dir, out);
    if (*degrade) return cmd_degrade(g, args, timeline, fraction, degrade_out, out);
    if (*report) return cmd_report(g, runs, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::Usage:
        return kExitUsage;
      case ErrorKind::Io:
        return kExitIo;
      case ErrorKind::Data:
        return kExitData;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace taeg
