#include "cli.h"

#include <csignal>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <json.hpp>

#include "ambilex/ambiguity/analysis.h"
#include "ambilex/ambiguity/scores_csv.h"
#include "ambilex/corpus/cells.h"
#include "ambilex/corpus/io.h"
#include "ambilex/report/charts.h"
#include "ambilex/report/correlate.h"
#include "ambilex/report/rank.h"
#include "ambilex/study/server.h"
#include "ambilex/study/service.h"
#include "ambilex/study/state.h"
#include "ambilex/textpipe/lexicon.h"
#include "ambilex/textpipe/pipeline.h"

#ifndef AMBILEX_DEFAULT_LEXICON_DIR
#define AMBILEX_DEFAULT_LEXICON_DIR "data/lexicons"
#endif

namespace ambilex::cli {

namespace {

std::string default_lexicon_dir() {
  if (const char* env = std::getenv("AMBILEX_LEXICONS"); env && *env) return env;
  return AMBILEX_DEFAULT_LEXICON_DIR;
}

// "h05=4,h3=4": per-axis region boundaries; either key may be omitted.
ambiguity::RegionThresholds parse_thresholds(const std::string& text) {
  ambiguity::RegionThresholds t;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("--thresholds", "expected key=value, got '" + part + "'");
    const std::string key = part.substr(0, eq);
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(part.substr(eq + 1), &used);
      if (used != part.size() - eq - 1) throw std::invalid_argument(part);
    } catch (const std::logic_error&) {
      throw CLI::ValidationError("--thresholds", "bad number in '" + part + "'");
    }
    if (key == "h05") {
      t.h_short = value;
    } else if (key == "h3") {
      t.h_long = value;
    } else {
      throw CLI::ValidationError("--thresholds", "unknown key '" + key + "' (use h05, h3)");
    }
  }
  return t;
}

std::vector<ambiguity::AmbiguityScore> scores_of(const std::vector<ambiguity::ScoreRow>& rows) {
  std::vector<ambiguity::AmbiguityScore> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.score);
  return out;
}

struct IngestArgs {
  std::string stimuli, responses;
  bool no_filter = false;
};

int cmd_ingest(const IngestArgs& a, std::ostream& out) {
  const auto stimuli = corpus::load_stimuli(a.stimuli);
  const auto all = corpus::load_responses(a.responses);
  const auto kept = a.no_filter ? all : corpus::filter_by_vigilance(all);
  const auto summary = corpus::summarize(kept, stimuli);
  fmt::print(out, "stimuli: {}\n", stimuli.size());
  if (a.no_filter) {
    fmt::print(out, "records: {} (vigilance filter off)\n", summary.records);
  } else {
    fmt::print(out, "records: {} of {} after vigilance filter\n", summary.records, all.size());
  }
  fmt::print(out, "participants: {}\n", summary.participants);
  fmt::print(out, "cells: {}\n", summary.cell_sizes.size());
  fmt::print(out, "mean descriptions per cell: {:.2f}\n", summary.mean_cell_size());
  for (const auto& [cell, n] : summary.cell_sizes) fmt::print(out, "{}\t{}\t{}\n", cell.image_id, cell.duration_ms, n);
  return 0;
}

struct TokensArgs {
  std::string text, lexicons;
};

int cmd_tokens(const TokensArgs& a, std::ostream& out) {
  const auto lex = textpipe::load_lexicons(a.lexicons);
  const auto result = textpipe::process_description(a.text, lex);
  nlohmann::ordered_json j;
  j["tokens"] = result.tokens;
  j["hedge_count"] = result.hedge_count;
  out << j.dump() << '\n';
  return 0;
}

struct AnalyzeArgs {
  std::string stimuli, responses, lexicons, out_path, thresholds;
  std::int64_t min_responses = 5;
  std::int64_t short_ms = 500, long_ms = 3000;
  bool no_filter = false;
};

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out) {
  ambiguity::ScoringConfig scoring;
  scoring.min_responses = a.min_responses;
  scoring.short_ms = a.short_ms;
  scoring.long_ms = a.long_ms;
  if (!a.thresholds.empty()) scoring.thresholds = parse_thresholds(a.thresholds);

  const auto stimuli = corpus::load_stimuli(a.stimuli);
  auto responses = corpus::load_responses(a.responses);
  if (!a.no_filter) responses = corpus::filter_by_vigilance(responses);
  const auto lex = textpipe::load_lexicons(a.lexicons);
  const auto analysis = ambiguity::analyze_corpus(stimuli, responses, lex, {}, scoring);
  ambiguity::save_scores_csv(a.out_path, analysis.scores, stimuli, scoring);

  std::size_t low = 0;
  for (const auto& s : analysis.scores) low += s.low_confidence ? 1 : 0;
  fmt::print(out, "scored {} images ({} low-confidence) from {} descriptions -> {}\n", analysis.scores.size(), low,
             responses.size(), a.out_path);
  return 0;
}

struct RankArgs {
  std::string scores, metric = "h3";
  std::optional<double> h3_above, h3_below;
  std::size_t top = 0, bottom = 0;
};

void print_ranked(std::ostream& out, const std::string& heading, const report::RankedList& list) {
  fmt::print(out, "{}\n", heading);
  if (list.partition_note) fmt::print(out, "  ({})\n", *list.partition_note);
  std::size_t i = 0;
  for (const auto& e : list.entries) fmt::print(out, "  {:>3}. {}  {:.2f}\n", ++i, e.image_id, e.value);
}

int cmd_rank(const RankArgs& a, std::ostream& out, std::ostream& err) {
  const auto metric = report::parse_metric(a.metric);
  if (!metric) throw CLI::ValidationError("--metric", "expected h3, h05 or delta");
  if (a.top == 0 && a.bottom == 0) throw CLI::ValidationError("rank", "give --top and/or --bottom");
  const bool partitioned = a.h3_above || a.h3_below;
  if (partitioned && *metric != report::Metric::DeltaH) {
    throw CLI::ValidationError("rank", "--h3-above/--h3-below apply to --metric delta");
  }
  const auto scores = scores_of(ambiguity::load_scores_csv(a.scores));

  auto run = [&](report::Direction dir, std::size_t k) {
    if (partitioned) {
      const double t = a.h3_above ? *a.h3_above : *a.h3_below;
      const auto side = a.h3_above ? report::Side::Above : report::Side::Below;
      return report::rank_by_delta_partition(scores, t, side, dir, k);
    }
    return report::rank(scores, *metric, dir, k);
  };
  const std::string name(report::to_string(*metric));
  std::vector<std::string> skipped;
  if (a.bottom > 0) {
    const auto list = run(report::Direction::Lowest, a.bottom);
    print_ranked(out, fmt::format("lowest {} by {}", a.bottom, name), list);
    skipped = list.skipped;
  }
  if (a.top > 0) {
    const auto list = run(report::Direction::Highest, a.top);
    print_ranked(out, fmt::format("highest {} by {}", a.top, name), list);
    skipped = list.skipped;
  }
  if (!skipped.empty()) fmt::print(err, "skipped {} images without {}\n", skipped.size(), name);
  return 0;
}

struct PlotArgs {
  std::string type, out_path, scores, stimuli, responses, lexicons, image, thresholds;
  std::int64_t duration = 0;
  bool no_filter = false;
};

int cmd_plot(const PlotArgs& a, std::ostream& out, std::ostream& err) {
  if (a.type == "scatter") {
    if (a.scores.empty() || a.stimuli.empty()) throw CLI::ValidationError("plot", "scatter needs --scores and --stimuli");
    const auto stimuli = corpus::load_stimuli(a.stimuli);
    const auto scores = scores_of(ambiguity::load_scores_csv(a.scores));
    const auto data = report::scatter_points(scores, stimuli);
    report::ScatterOptions options;
    if (!a.thresholds.empty()) options.thresholds = parse_thresholds(a.thresholds);
    report::render_scatter(data.points, a.out_path, options);
    if (!data.skipped.empty()) fmt::print(err, "skipped {} images without both entropies\n", data.skipped.size());
    fmt::print(out, "wrote {} points -> {}\n", data.points.size(), a.out_path);
    return 0;
  }
  if (a.type == "histogram") {
    if (a.stimuli.empty() || a.responses.empty() || a.image.empty() || a.duration <= 0) {
      throw CLI::ValidationError("plot", "histogram needs --stimuli, --responses, --image and --duration");
    }
    const auto stimuli = corpus::load_stimuli(a.stimuli);
    auto responses = corpus::load_responses(a.responses);
    if (!a.no_filter) responses = corpus::filter_by_vigilance(responses);
    const auto lex = textpipe::load_lexicons(a.lexicons);
    const auto analysis = ambiguity::analyze_corpus(stimuli, responses, lex);
    const corpus::CellKey key{a.image, a.duration};
    auto it = analysis.histograms.find(key);
    if (it == analysis.histograms.end()) {
      throw Error(fmt::format("no descriptions for image {} at {} ms", a.image, a.duration));
    }
    const auto display = ambiguity::display_histogram(it->second);
    report::render_histogram(display, a.out_path, fmt::format("{} @ {} ms", a.image, a.duration));
    fmt::print(out, "wrote {} bars -> {}\n", display.bins.size() + (display.other_count > 0 ? 1 : 0), a.out_path);
    return 0;
  }
  throw CLI::ValidationError("--type", "expected scatter or histogram");
}

struct CorrelateArgs {
  std::string scores, ratings, dimension = "interestingness";
};

int cmd_correlate(const CorrelateArgs& a, std::ostream& out) {
  const auto dim = report::parse_dimension(a.dimension);
  if (!dim) throw CLI::ValidationError("--dimension", "expected interestingness, powerfulness or engagement");
  const auto scores = scores_of(ambiguity::load_scores_csv(a.scores));
  const auto ratings = report::load_ratings(a.ratings);
  const auto input = report::correlation_input(scores, ratings, *dim);
  const double r = report::pearson(input.entropy, input.mean_rating);
  fmt::print(out, "r = {:.6f} (H3 vs mean {}, {} images)\n", r, a.dimension, input.image_ids.size());
  return 0;
}

struct ServeArgs {
  std::string config, stimuli, assets, log, host = "127.0.0.1";
  int port = 8080;
  bool no_sync = false;
};

int cmd_serve(const ServeArgs& a, std::ostream& out, std::ostream& err) {
  const auto config = study::load_study_config(a.config);
  auto stimuli = corpus::load_stimuli(a.stimuli);

  // Block the stop signals before any thread starts so only sigwait sees them.
  sigset_t stop_signals;
  sigemptyset(&stop_signals);
  sigaddset(&stop_signals, SIGINT);
  sigaddset(&stop_signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &stop_signals, nullptr);

  study::StudyService::Options options;
  options.log_path = a.log;
  options.sync = !a.no_sync;
  study::StudyService service(config, std::move(stimuli), options);
  for (const auto& w : service.recovery_warnings()) fmt::print(err, "recovery: {}\n", w);

  study::ServerOptions server_options;
  server_options.host = a.host;
  server_options.port = a.port;
  if (!a.assets.empty()) server_options.assets_dir = a.assets;
  study::StudyServer server(service, server_options);
  server.start();
  fmt::print(out, "serving on http://{}:{} ({} sessions recovered)\n", a.host, server.port(), service.sessions().size());
  out.flush();

  int sig = 0;
  sigwait(&stop_signals, &sig);
  server.stop();
  fmt::print(out, "stopped\n");
  return 0;
}

struct ExportArgs {
  std::string log, out_path, config;
};

int cmd_export(const ExportArgs& a, std::ostream& out, std::ostream& err) {
  const auto config = a.config.empty() ? study::StudyConfig{} : study::load_study_config(a.config);
  const auto rec = study::recover(a.log, config.vigilance_pass_min);
  for (const auto& w : rec.warnings) fmt::print(err, "recovery: {}\n", w);
  const auto records = rec.state.export_records(config.exposure_tolerance);
  corpus::save_responses(a.out_path, records);
  fmt::print(out, "exported {} records -> {}\n", records.size(), a.out_path);
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Description-entropy ambiguity toolkit"};
  app.name("ambilex");
  app.require_subcommand(1);

  IngestArgs ingest;
  auto* c_ingest = app.add_subcommand("ingest", "Validate a corpus and report counts per cell");
  c_ingest->add_option("--stimuli", ingest.stimuli, "Stimulus records (JSONL)")->required();
  c_ingest->add_option("--responses", ingest.responses, "Response records (JSONL)")->required();
  c_ingest->add_flag("--no-vigilance-filter", ingest.no_filter, "Keep records of participants who failed vigilance");

  TokensArgs tokens;
  tokens.lexicons = default_lexicon_dir();
  auto* c_tokens = app.add_subcommand("tokens", "Run the text pipeline on one description");
  c_tokens->add_option("--text", tokens.text, "Description text")->required();
  c_tokens->add_option("--lexicons", tokens.lexicons, "Lexicon directory")->capture_default_str();

  AnalyzeArgs analyze;
  analyze.lexicons = default_lexicon_dir();
  auto* c_analyze = app.add_subcommand("analyze", "Score every image and write the scores table");
  c_analyze->add_option("--stimuli", analyze.stimuli, "Stimulus records (JSONL)")->required();
  c_analyze->add_option("--responses", analyze.responses, "Response records (JSONL)")->required();
  c_analyze->add_option("--lexicons", analyze.lexicons, "Lexicon directory")->capture_default_str();
  c_analyze->add_option("--out", analyze.out_path, "Scores CSV to write")->required();
  c_analyze->add_option("--min-responses", analyze.min_responses, "Descriptions per cell below which a score is low-confidence")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  c_analyze->add_option("--thresholds", analyze.thresholds, "Region boundaries in bits, e.g. h05=4,h3=4");
  c_analyze->add_option("--short-ms", analyze.short_ms, "Short reference duration")->capture_default_str();
  c_analyze->add_option("--long-ms", analyze.long_ms, "Long reference duration")->capture_default_str();
  c_analyze->add_flag("--no-vigilance-filter", analyze.no_filter, "Keep records of participants who failed vigilance");

  RankArgs rank;
  auto* c_rank = app.add_subcommand("rank", "List the lowest and highest images by a metric");
  c_rank->add_option("--scores", rank.scores, "Scores CSV from analyze")->required();
  c_rank->add_option("--metric", rank.metric, "h3, h05 or delta")->capture_default_str();
  auto* above = c_rank->add_option("--h3-above", rank.h3_above, "Only images with H3 strictly above X (delta only)");
  auto* below = c_rank->add_option("--h3-below", rank.h3_below, "Only images with H3 at or below X (delta only)");
  above->excludes(below);
  c_rank->add_option("--top", rank.top, "Number of highest entries");
  c_rank->add_option("--bottom", rank.bottom, "Number of lowest entries");

  PlotArgs plot;
  plot.lexicons = default_lexicon_dir();
  auto* c_plot = app.add_subcommand("plot", "Render a scatterplot or a cell histogram as SVG");
  c_plot->add_option("--type", plot.type, "scatter or histogram")->required();
  c_plot->add_option("--out", plot.out_path, "SVG file to write")->required();
  c_plot->add_option("--scores", plot.scores, "Scores CSV (scatter)");
  c_plot->add_option("--stimuli", plot.stimuli, "Stimulus records");
  c_plot->add_option("--responses", plot.responses, "Response records (histogram)");
  c_plot->add_option("--lexicons", plot.lexicons, "Lexicon directory (histogram)")->capture_default_str();
  c_plot->add_option("--image", plot.image, "Image id (histogram)");
  c_plot->add_option("--duration", plot.duration, "Viewing duration in ms (histogram)");
  c_plot->add_option("--thresholds", plot.thresholds, "Guide lines for scatter, e.g. h05=4,h3=4");
  c_plot->add_flag("--no-vigilance-filter", plot.no_filter, "Keep records of participants who failed vigilance");

  CorrelateArgs correlate;
  auto* c_corr = app.add_subcommand("correlate", "Pearson correlation of H3 with mean ratings");
  c_corr->add_option("--scores", correlate.scores, "Scores CSV from analyze")->required();
  c_corr->add_option("--ratings", correlate.ratings, "Rating records (JSONL)")->required();
  c_corr->add_option("--dimension", correlate.dimension, "interestingness, powerfulness or engagement")
      ->capture_default_str();

  ServeArgs serve;
  auto* c_serve = app.add_subcommand("serve", "Run the collection service");
  c_serve->add_option("--config", serve.config, "Study config (JSON)")->required();
  c_serve->add_option("--stimuli", serve.stimuli, "Stimulus records")->required();
  c_serve->add_option("--assets", serve.assets, "Directory served under /assets/");
  c_serve->add_option("--log", serve.log, "Event log (created if missing)")->required();
  c_serve->add_option("--port", serve.port, "TCP port, 0 for any")->capture_default_str();
  c_serve->add_option("--host", serve.host, "Bind address")->capture_default_str();
  c_serve->add_flag("--no-sync", serve.no_sync, "Skip fsync after each event");

  ExportArgs exp;
  auto* c_export = app.add_subcommand("export", "Write completed sessions from an event log as response records");
  c_export->add_option("--log", exp.log, "Event log")->required();
  c_export->add_option("--out", exp.out_path, "Response records to write")->required();
  c_export->add_option("--config", exp.config, "Study config (exposure tolerance, pass threshold for owed completions)");

  try {
    app.parse(argc, argv);
    if (c_ingest->parsed()) return cmd_ingest(ingest, out);
    if (c_tokens->parsed()) return cmd_tokens(tokens, out);
    if (c_analyze->parsed()) return cmd_analyze(analyze, out);
    if (c_rank->parsed()) return cmd_rank(rank, out, err);
    if (c_plot->parsed()) return cmd_plot(plot, out, err);
    if (c_corr->parsed()) return cmd_correlate(correlate, out);
    if (c_serve->parsed()) return cmd_serve(serve, out, err);
    if (c_export->parsed()) return cmd_export(exp, out, err);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return 1;
  }
  return 2;
}

}  // namespace ambilex::cli
