// aisdb: AIS trajectory database builder.
//
//   aisdb run      raw CSV -> screened, cleaned per-MMSI database + stats
//   aisdb ingest   raw CSV -> per-MMSI CSV files
//   aisdb screen   per-MMSI database -> screen_report.json
//   aisdb clean    per-MMSI database -> corrected/interpolated database
//   aisdb stats    per-MMSI database -> summary.json + histogram CSVs
//   aisdb predict  one track -> ELM prediction errors
//   aisdb synth    synthetic tracks in the standard schema
//
// Exit codes: 0 ok, 1 I/O, 2 schema/data, 3 configuration.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "aisdb/artifacts.hpp"
#include "aisdb/errors.hpp"
#include "aisdb/ingest.hpp"
#include "aisdb/kernels.hpp"
#include "aisdb/pipeline.hpp"
#include "aisdb/screen.hpp"
#include "aisdb/synth.hpp"

namespace fs = std::filesystem;
using namespace aisdb;

namespace {

enum ExitCode : int { kOk = 0, kIo = 1, kSchema = 2, kConfig = 3 };

// Flag values that override the config file when given on the command line.
struct Overrides {
  std::optional<std::string> input, output, db, clean_report;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> jobs;
  std::optional<double> earth_radius;

  std::optional<std::size_t> min_run;
  std::optional<double> complexity_threshold, gap_km, loose_km;

  std::optional<double> sog_jump, distance_tolerance, interp_ratio;
  std::optional<std::int64_t> missing_interval;
  std::optional<std::string> interp_cog;

  std::optional<std::size_t> interp_bin_width;

  std::optional<std::size_t> horizon, feature_len, samples, hidden, stride;
  std::optional<double> ridge, bin_width;

  bool clip_region = false, annotated = false, predict = false, train_once = false, with_sog_cog = false;
};

void add_global(CLI::App* app, Overrides& o, std::string& config_path) {
  app->add_option("--config", config_path, "JSON config file (flags override it)");
  app->add_option("--jobs", o.jobs, "worker threads (never changes outputs)");
  app->add_option("--seed", o.seed, "global RNG seed");
  app->add_option("--earth-radius-km", o.earth_radius, "sphere radius for haversine");
}

void add_screen_flags(CLI::App* app, Overrides& o) {
  app->add_option("--min-run", o.min_run, "minimum longest nonzero-SOG run (default 500)");
  app->add_option("--complexity-threshold", o.complexity_threshold, "route complexity must exceed this (0.8)");
  app->add_option("--gap-km", o.gap_km, "consecutive distance marking a discontinuous track (10 km)");
  app->add_option("--loose-km", o.loose_km, "mean spacing marking a loose track (2 km)");
}

void add_clean_flags(CLI::App* app, Overrides& o) {
  app->add_option("--sog-jump", o.sog_jump, "SOG jump in knots that triggers the distance test (15)");
  app->add_option("--distance-tolerance-km", o.distance_tolerance, "implied vs haversine distance tolerance (0.5)");
  app->add_option("--missing-interval", o.missing_interval, "gap in minutes above which a pair is missing (1)");
  app->add_option("--interp-ratio", o.interp_ratio, "distance/speed ratio above which a gap is filled (2)");
  app->add_option("--interp-cog", o.interp_cog, "copy_earlier | chord_bearing");
}

void add_predict_flags(CLI::App* app, Overrides& o) {
  app->add_option("--horizon", o.horizon, "prediction horizon t_p in minutes (20)");
  app->add_option("--feature-len", o.feature_len, "feature window length l in minutes (10)");
  app->add_option("--samples", o.samples, "training samples s per window (200)");
  app->add_option("--hidden", o.hidden, "ELM hidden nodes L (100)");
  app->add_option("--ridge", o.ridge, "ridge lambda (1e-12)");
  app->add_option("--stride", o.stride, "step between evaluation points (1)");
  app->add_option("--bin-width", o.bin_width, "error histogram bin width in NM (0.5)");
  app->add_flag("--train-once", o.train_once, "train once at the first evaluation point");
  app->add_flag("--with-sog-cog", o.with_sog_cog, "append SOG and COG to each window minute");
}

PipelineConfig resolve(const std::string& config_path, const Overrides& o) {
  PipelineConfig c;
  if (!config_path.empty()) c = load_config_file(config_path, c);
  if (o.input) c.input = *o.input;
  if (o.output) c.output = *o.output;
  if (o.seed) c.seed = *o.seed;
  if (o.jobs) c.jobs = *o.jobs;
  if (o.earth_radius) c.units.earth_radius_km = *o.earth_radius;
  if (o.min_run) c.screen.min_run = *o.min_run;
  if (o.complexity_threshold) c.screen.complexity_threshold = *o.complexity_threshold;
  if (o.gap_km) c.screen.gap_km_threshold = *o.gap_km;
  if (o.loose_km) c.screen.loose_mean_spacing_km = *o.loose_km;
  if (o.sog_jump) c.clean.sog_jump_threshold = *o.sog_jump;
  if (o.distance_tolerance) c.clean.distance_tolerance_km = *o.distance_tolerance;
  if (o.interp_ratio) c.clean.interp_ratio_threshold = *o.interp_ratio;
  if (o.missing_interval) c.clean.missing_interval_min = *o.missing_interval;
  if (o.interp_cog) {
    if (*o.interp_cog == "copy_earlier") {
      c.clean.cog_mode = InterpolatedCog::CopyEarlier;
    } else if (*o.interp_cog == "chord_bearing") {
      c.clean.cog_mode = InterpolatedCog::ChordBearing;
    } else {
      throw ConfigError("--interp-cog must be copy_earlier or chord_bearing");
    }
  }
  if (o.interp_bin_width) c.interp_bin_width = *o.interp_bin_width;
  if (o.horizon) c.eval.horizon = *o.horizon;
  if (o.feature_len) c.eval.feature_len = *o.feature_len;
  if (o.samples) c.eval.samples = *o.samples;
  if (o.hidden) c.eval.hidden = *o.hidden;
  if (o.ridge) c.eval.ridge = *o.ridge;
  if (o.stride) c.eval.stride = *o.stride;
  if (o.bin_width) c.eval.bin_width_nm = *o.bin_width;
  if (o.clip_region) c.clip_region = true;
  if (o.annotated) c.annotated = true;
  if (o.predict) c.predict = true;
  if (o.train_once) c.eval.retrain_each_step = false;
  if (o.with_sog_cog) c.eval.features = FeatureMode::PositionSogCog;
  return c;
}

fs::path require(const std::optional<std::string>& v, const char* flag) {
  if (!v || v->empty()) throw ConfigError(std::string(flag) + " is required");
  return fs::path(*v);
}

// Loads a per-MMSI database, logging (not failing on) rejected files.
std::vector<Track> load_db(const fs::path& dir) {
  auto load = read_database(dir);
  for (const auto& e : load.errors) std::cerr << "warning: rejected " << e.path.string() << ": " << e.message << '\n';
  return std::move(load.tracks);
}

int cmd_run(PipelineConfig cfg) {
  cfg.validate();
  std::cerr << "aisdb run: jobs=" << (cfg.jobs ? cfg.jobs : kernels::thread_count()) << " seed=" << cfg.seed << '\n';
  const auto res = run_pipeline(cfg);
  std::size_t accepted = 0;
  for (const auto& r : res.screen) accepted += r.accepted ? 1 : 0;
  std::cerr << "aisdb run: " << res.ingest.rows_read << " rows, " << res.ingest.vessels << " vessels, " << accepted
            << " accepted, " << res.summary.total_records << " records in database\n";
  return kOk;
}

int cmd_ingest(const PipelineConfig& cfg) {
  if (cfg.input.empty()) throw ConfigError("--input is required");
  if (cfg.output.empty()) throw ConfigError("--out is required");
  IngestReport report;
  ParseOptions opts;
  opts.clip_region = cfg.clip_region;
  const auto tracks = ingest_input(cfg.input, opts, report);
  ensure_directory(cfg.output);
  for (const auto& t : tracks) write_track_csv(t, cfg.output, WriteOptions{cfg.annotated});
  write_json_file(cfg.output / "ingest_report.json", to_json(report));
  std::cerr << "aisdb ingest: " << report.rows_accepted << "/" << report.rows_read << " rows accepted, "
            << tracks.size() << " vessels\n";
  return kOk;
}

int cmd_screen(const PipelineConfig& cfg, const fs::path& db, const std::optional<std::string>& accepted_out) {
  cfg.screen.validate();
  if (cfg.output.empty()) throw ConfigError("--out is required");
  const auto tracks = load_db(db);
  const auto reports = kernels::screen_all(tracks, cfg.effective().screen);
  ensure_directory(cfg.output);
  write_json_file(cfg.output / "screen_report.json", to_json(std::span<const ScreenReport>(reports)));
  if (accepted_out) {
    ensure_directory(*accepted_out);
    for (std::size_t i = 0; i < tracks.size(); ++i) {
      if (reports[i].accepted) write_track_csv(tracks[i], *accepted_out, WriteOptions{cfg.annotated});
    }
  }
  return kOk;
}

int cmd_clean(const PipelineConfig& cfg, const fs::path& db) {
  cfg.clean.validate();
  if (cfg.output.empty()) throw ConfigError("--out is required");
  const auto tracks = load_db(db);
  const auto batch = kernels::clean_all(tracks, cfg.effective().clean);
  ensure_directory(cfg.output);
  for (const auto& t : batch.tracks) write_track_csv(t, cfg.output, WriteOptions{cfg.annotated});
  write_json_file(cfg.output / "clean_report.json", to_json(std::span<const CleanReport>(batch.reports)));
  return kOk;
}

std::vector<CleanReport> read_clean_reports(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  std::vector<CleanReport> out;
  try {
    const auto j = json::parse(in);
    for (const auto& r : j.at("reports")) {
      CleanReport rep;
      rep.mmsi = r.at("mmsi").get<Mmsi>();
      rep.records_inserted = r.at("records_inserted").get<std::size_t>();
      rep.pairs_found = r.at("pairs_found").get<std::size_t>();
      rep.pairs_interpolated = r.at("pairs_interpolated").get<std::size_t>();
      rep.sog_corrections = r.at("sog_correction_indices").get<std::vector<std::size_t>>();
      out.push_back(std::move(rep));
    }
  } catch (const json::exception& e) {
    throw SchemaError("malformed clean report " + path.string() + ": " + e.what());
  }
  return out;
}

int cmd_stats(const PipelineConfig& cfg, const fs::path& db, const std::optional<std::string>& clean_report) {
  if (cfg.interp_bin_width == 0) throw ConfigError("--interp-bin-width must be positive");
  if (cfg.output.empty()) throw ConfigError("--out is required");
  const auto tracks = load_db(db);
  std::vector<CleanReport> reports;
  if (clean_report) reports = read_clean_reports(*clean_report);
  const auto summary = kernels::summarize_all(tracks, reports, cfg.interp_bin_width);
  write_summary(cfg.output, summary);
  return kOk;
}

int cmd_predict(const PipelineConfig& cfg, const fs::path& track_path) {
  const auto eff = cfg.effective();
  eff.eval.validate();
  if (cfg.output.empty()) throw ConfigError("--out is required");
  ParseOptions opts;
  opts.keep_provenance = true;
  auto parsed = parse_csv_file(track_path, opts);
  auto tracks = group_by_vessel(std::move(parsed.records));
  if (tracks.size() != 1)
    throw ValidationError("predict expects exactly one vessel in " + track_path.string() + ", found " +
                          std::to_string(tracks.size()));
  const auto result = kernels::evaluate_track(tracks.front(), eff.eval, kernels::Execution::Parallel);
  write_eval_outputs(cfg.output, tracks.front(), result);
  json manifest = eval_config_to_json(eff.eval);
  manifest["track"] = track_path.generic_string();
  manifest["mmsi"] = tracks.front().mmsi;
  manifest["predictions"] = result.predictions.size();
  manifest["skipped"] = result.skipped;
  write_json_file(cfg.output / "manifest.json", manifest);
  double mean = 0.0;
  for (const auto& p : result.predictions) mean += p.error_nm;
  if (!result.predictions.empty()) mean /= static_cast<double>(result.predictions.size());
  std::cerr << "aisdb predict: " << result.predictions.size() << " predictions, mean error " << mean << " NM\n";
  return kOk;
}

struct SynthOptions {
  std::string kind = "linear";
  SynthSpec spec;
  std::size_t count = 1;
  std::optional<std::string> scenario;
  std::optional<std::string> raw;
  std::vector<std::string> spikes;
  std::vector<std::string> gaps;
};

std::pair<std::size_t, double> parse_pair(const std::string& s, const char* what) {
  const auto colon = s.find(':');
  try {
    if (colon == std::string::npos) throw std::invalid_argument(s);
    return {std::stoul(s.substr(0, colon)), std::stod(s.substr(colon + 1))};
  } catch (const std::exception&) {
    throw ConfigError(std::string(what) + " expects INDEX:VALUE, got '" + s + "'");
  }
}

int cmd_synth(const PipelineConfig& cfg, SynthOptions so) {
  if (cfg.output.empty() && !so.raw) throw ConfigError("--out or --raw is required");
  std::vector<ScenarioTrack> scenario;
  if (so.scenario) {
    std::ifstream in(*so.scenario);
    if (!in) throw ConfigError("cannot read scenario " + *so.scenario);
    try {
      scenario = scenario_from_json(json::parse(in));
    } catch (const json::exception& e) {
      throw ConfigError(std::string("malformed scenario: ") + e.what());
    }
  } else {
    so.spec.kind = synth_kind_from_string(so.kind);
    ScenarioTrack base{so.spec, {}, {}};
    for (const auto& s : so.spikes) {
      const auto [at, mag] = parse_pair(s, "--spike");
      base.spikes.push_back({at, mag});
    }
    for (const auto& g : so.gaps) {
      const auto [start, minutes] = parse_pair(g, "--gap");
      base.gaps.push_back({start, static_cast<std::size_t>(minutes)});
    }
    for (std::size_t i = 0; i < so.count; ++i) {
      ScenarioTrack st = base;
      st.spec.mmsi = so.spec.mmsi + static_cast<Mmsi>(i);
      st.spec.seed = i == 0 ? so.spec.seed : derive_seed(so.spec.seed, i);
      scenario.push_back(std::move(st));
    }
  }

  std::vector<Track> tracks;
  try {
    for (const auto& st : scenario) tracks.push_back(build_scenario_track(st));
  } catch (const PreconditionError& e) {
    throw ConfigError(e.what());
  } catch (const ValidationError& e) {
    throw ConfigError(e.what());
  }

  if (!cfg.output.empty()) {
    ensure_directory(cfg.output);
    for (const auto& t : tracks) write_track_csv(t, cfg.output);
  }
  if (so.raw) {
    // All tracks in one raw file, interleaved by time as a receiver would log them.
    std::vector<AisRecord> all;
    for (const auto& t : tracks) all.insert(all.end(), t.records.begin(), t.records.end());
    std::stable_sort(all.begin(), all.end(), [](const AisRecord& a, const AisRecord& b) { return a.t < b.t; });
    Track merged{0, std::move(all)};
    std::ostringstream out;
    write_track_csv(merged, out);
    const fs::path raw_path(*so.raw);
    if (raw_path.has_parent_path()) ensure_directory(raw_path.parent_path());
    write_text_file(raw_path, out.str());
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AIS trajectory database builder"};
  app.require_subcommand(1);

  Overrides o;
  std::string config_path;
  std::optional<std::string> accepted_out;
  SynthOptions so;

  auto* run = app.add_subcommand("run", "ingest -> screen -> clean -> stats [-> predict]");
  add_global(run, o, config_path);
  run->add_option("--input", o.input, "raw CSV file or directory of CSV files");
  run->add_option("--out", o.output, "run directory");
  run->add_flag("--clip-region", o.clip_region, "drop rows outside lon -126..-120, lat 30..50");
  run->add_flag("--annotated", o.annotated, "add a PROVENANCE column to database files");
  run->add_flag("--predict", o.predict, "also run ELM prediction on every database track");
  run->add_option("--interp-bin-width", o.interp_bin_width, "interpolated-length histogram bin width (50)");
  add_screen_flags(run, o);
  add_clean_flags(run, o);
  add_predict_flags(run, o);

  auto* ingest = app.add_subcommand("ingest", "raw CSV -> per-MMSI files");
  add_global(ingest, o, config_path);
  ingest->add_option("--input", o.input, "raw CSV file or directory");
  ingest->add_option("--out", o.output, "database directory");
  ingest->add_flag("--clip-region", o.clip_region, "drop rows outside the study region");
  ingest->add_flag("--annotated", o.annotated, "add a PROVENANCE column");

  auto* screen = app.add_subcommand("screen", "selection metrics and noise classes");
  add_global(screen, o, config_path);
  screen->add_option("--db", o.db, "per-MMSI database directory");
  screen->add_option("--out", o.output, "report directory");
  screen->add_option("--accepted-out", accepted_out, "copy accepted tracks here");
  screen->add_flag("--annotated", o.annotated, "add a PROVENANCE column to copied tracks");
  add_screen_flags(screen, o);

  auto* clean = app.add_subcommand("clean", "SOG correction and gap interpolation");
  add_global(clean, o, config_path);
  clean->add_option("--db", o.db, "per-MMSI database directory");
  clean->add_option("--out", o.output, "cleaned database directory");
  clean->add_flag("--annotated", o.annotated, "add a PROVENANCE column");
  add_clean_flags(clean, o);

  auto* stats = app.add_subcommand("stats", "COG/SOG/route-type/interpolation histograms");
  add_global(stats, o, config_path);
  stats->add_option("--db", o.db, "per-MMSI database directory");
  stats->add_option("--out", o.output, "output directory");
  stats->add_option("--clean-report", o.clean_report, "clean_report.json giving inserted-record counts");
  stats->add_option("--interp-bin-width", o.interp_bin_width, "interpolated-length bin width (50)");

  auto* predict = app.add_subcommand("predict", "sliding-window ELM prediction on one track");
  add_global(predict, o, config_path);
  predict->add_option("--track", o.input, "single-vessel CSV")->required();
  predict->add_option("--out", o.output, "output directory");
  add_predict_flags(predict, o);

  auto* synth = app.add_subcommand("synth", "generate synthetic tracks");
  add_global(synth, o, config_path);
  synth->add_option("--out", o.output, "directory for <MMSI>.csv files");
  synth->add_option("--raw", so.raw, "also write all tracks into one time-interleaved raw CSV");
  synth->add_option("--scenario", so.scenario, "JSON scenario file (overrides the flags below)");
  synth->add_option("--kind", so.kind, "linear | arc | random_walk");
  synth->add_option("--length", so.spec.length_minutes, "minutes");
  synth->add_option("--speed", so.spec.speed_knots, "knots");
  synth->add_option("--lon", so.spec.start.lon, "start longitude");
  synth->add_option("--lat", so.spec.start.lat, "start latitude");
  synth->add_option("--heading", so.spec.heading_deg, "initial heading, degrees");
  synth->add_option("--turn-rate", so.spec.turn_rate_deg, "arc turn, degrees per minute");
  synth->add_option("--mmsi", so.spec.mmsi, "MMSI of the first track");
  synth->add_option("--count", so.count, "number of tracks (consecutive MMSIs, derived seeds)");
  synth->add_option("--spike", so.spikes, "INDEX:KNOTS SOG spike (repeatable)");
  synth->add_option("--gap", so.gaps, "START:MINUTES gap (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    PipelineConfig cfg = resolve(config_path, o);
    if (cfg.jobs) kernels::set_thread_count(cfg.jobs);
    if (o.seed) so.spec.seed = *o.seed;
    if (run->parsed()) return cmd_run(cfg);
    if (ingest->parsed()) return cmd_ingest(cfg);
    if (screen->parsed()) return cmd_screen(cfg, require(o.db, "--db"), accepted_out);
    if (clean->parsed()) return cmd_clean(cfg, require(o.db, "--db"));
    if (stats->parsed()) return cmd_stats(cfg, require(o.db, "--db"), o.clean_report);
    if (predict->parsed()) return cmd_predict(cfg, cfg.input);
    if (synth->parsed()) return cmd_synth(cfg, so);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const SizingError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << '\n';
    return kSchema;
  } catch (const ValidationError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kSchema;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  }
  return kOk;
}
