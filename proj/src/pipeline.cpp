#include "aisdb/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "aisdb/artifacts.hpp"
#include "aisdb/errors.hpp"
#include "aisdb/kernels.hpp"

namespace aisdb {

namespace fs = std::filesystem;

void PipelineConfig::validate() const {
  if (input.empty()) throw ConfigError("no input path given");
  if (output.empty()) throw ConfigError("no output directory given");
  if (!(units.earth_radius_km > 0.0) || !std::isfinite(units.earth_radius_km))
    throw ConfigError("units.earth_radius_km must be positive");
  if (!(units.km_per_nautical_mile > 0.0) || !std::isfinite(units.km_per_nautical_mile))
    throw ConfigError("units.km_per_nautical_mile must be positive");
  if (interp_bin_width == 0) throw ConfigError("stats.interp_bin_width must be positive");
  screen.validate();
  clean.validate();
  effective().eval.validate();
}

PipelineConfig PipelineConfig::effective() const {
  PipelineConfig c = *this;
  c.screen.units = units;
  c.clean.units = units;
  c.eval.units = units;
  c.eval.seed = seed;
  return c;
}

std::vector<Track> ingest_input(const fs::path& input, const ParseOptions& options, IngestReport& report) {
  std::error_code ec;
  std::vector<fs::path> files;
  if (fs::is_directory(input, ec)) {
    for (const auto& entry : fs::directory_iterator(input)) {
      if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
  } else if (fs::is_regular_file(input, ec)) {
    files.push_back(input);
  } else {
    throw IoError("input not found: " + input.string());
  }

  std::vector<ParseResult> parsed(files.size());
  std::exception_ptr error;
  const auto n = static_cast<std::ptrdiff_t>(files.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      parsed[static_cast<std::size_t>(i)] = parse_csv_file(files[static_cast<std::size_t>(i)], options);
    } catch (...) {
#pragma omp critical(aisdb_ingest_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);

  std::vector<AisRecord> records;
  for (auto& p : parsed) {
    report.merge(p.report);
    records.insert(records.end(), std::make_move_iterator(p.records.begin()),
                   std::make_move_iterator(p.records.end()));
  }
  return group_by_vessel(std::move(records), &report);
}

PipelineResult run_pipeline(const PipelineConfig& raw_cfg) {
  raw_cfg.validate();
  const PipelineConfig cfg = raw_cfg.effective();
  kernels::set_thread_count(cfg.jobs);

  PipelineResult res;
  ParseOptions parse_opts;
  parse_opts.clip_region = cfg.clip_region;
  const auto tracks = ingest_input(cfg.input, parse_opts, res.ingest);

  res.screen = kernels::screen_all(tracks, cfg.screen);
  std::vector<Track> accepted;
  for (std::size_t i = 0; i < tracks.size(); ++i) {
    if (res.screen[i].accepted) accepted.push_back(tracks[i]);
  }

  auto cleaned = kernels::clean_all(accepted, cfg.clean);
  res.database = std::move(cleaned.tracks);
  res.clean = std::move(cleaned.reports);
  res.summary = kernels::summarize_all(res.database, res.clean, cfg.interp_bin_width);

  std::vector<std::optional<EvalResult>> evals(res.database.size());
  if (cfg.predict) {
    for (std::size_t i = 0; i < res.database.size(); ++i) {
      try {
        evals[i] = kernels::evaluate_track(res.database[i], cfg.eval, kernels::Execution::Parallel);
      } catch (const SizingError&) {
        // too short for the prediction windows; reported by absence
      }
    }
  }

  // All computation done; now write.
  ensure_directory(cfg.output);
  write_json_file(cfg.output / "manifest.json", config_to_json(cfg));
  write_json_file(cfg.output / "ingest_report.json", to_json(res.ingest));
  write_json_file(cfg.output / "screen_report.json", to_json(std::span<const ScreenReport>(res.screen)));
  write_json_file(cfg.output / "clean_report.json", to_json(std::span<const CleanReport>(res.clean)));
  const fs::path db_dir = cfg.output / "database";
  ensure_directory(db_dir);
  for (const auto& t : res.database) write_track_csv(t, db_dir, WriteOptions{cfg.annotated});
  write_summary(cfg.output / "stats", res.summary);

  if (cfg.predict) {
    json index = json::array();
    for (std::size_t i = 0; i < res.database.size(); ++i) {
      const auto& t = res.database[i];
      if (!evals[i]) {
        index.push_back({{"mmsi", t.mmsi}, {"evaluated", false}});
        continue;
      }
      write_eval_outputs(cfg.output / "predict" / std::to_string(t.mmsi), t, *evals[i]);
      double mean = 0.0;
      for (const auto& p : evals[i]->predictions) mean += p.error_nm;
      if (!evals[i]->predictions.empty()) mean /= static_cast<double>(evals[i]->predictions.size());
      index.push_back({{"mmsi", t.mmsi},
                       {"evaluated", true},
                       {"predictions", evals[i]->predictions.size()},
                       {"skipped", evals[i]->skipped},
                       {"mean_error_nm", mean}});
    }
    ensure_directory(cfg.output / "predict");
    write_json_file(cfg.output / "predict" / "index.json",
                    json{{"config", eval_config_to_json(cfg.eval)}, {"tracks", index}});
  }
  return res;
}

}  // namespace aisdb
