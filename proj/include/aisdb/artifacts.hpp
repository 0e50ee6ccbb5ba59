#pragma once

// JSON and CSV artifacts shared by the pipeline and the CLI subcommands.

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "aisdb/clean.hpp"
#include "aisdb/ingest.hpp"
#include "aisdb/pipeline.hpp"
#include "aisdb/predict.hpp"
#include "aisdb/screen.hpp"
#include "aisdb/stats.hpp"
#include "aisdb/synth.hpp"

namespace aisdb {

using json = nlohmann::json;

json to_json(const IngestReport& r);
json to_json(const ScreenReport& r);
json to_json(const CleanReport& r);
json to_json(const DatabaseSummary& s);
json to_json(std::span<const ScreenReport> reports);
json to_json(std::span<const CleanReport> reports);
json to_json(const ErrorHistogram& h);

/// Full effective configuration; `output` and `jobs` are left out so the
/// manifest is identical for identical results.
json config_to_json(const PipelineConfig& cfg);
/// Overlays `j` onto `base`. Unknown keys or wrong types throw ConfigError.
PipelineConfig config_from_json(const json& j, PipelineConfig base = {});
PipelineConfig load_config_file(const std::filesystem::path& path, PipelineConfig base = {});

json eval_config_to_json(const EvalConfig& cfg);
json synth_spec_to_json(const SynthSpec& spec);

/// {"tracks": [{"kind": ..., "length": ..., "spikes": [...], "gaps": [...]}, ...]}
std::vector<ScenarioTrack> scenario_from_json(const json& j);

/// Writes `text` to `path`, throwing IoError on failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);
void write_json_file(const std::filesystem::path& path, const json& j);
/// Creates `dir` (and parents); IoError if impossible.
void ensure_directory(const std::filesystem::path& dir);

/// summary.json plus fig14_cog.csv, fig15_sog.csv, fig16_len.csv,
/// fig17_len_interp.csv, fig18_interp_hist.csv (and fig13_vessel_type.csv when
/// vessel types are known).
void write_summary(const std::filesystem::path& dir, const DatabaseSummary& summary);

/// errors.csv, histogram.csv and predicted_track.csv for one evaluated track.
void write_eval_outputs(const std::filesystem::path& dir, const Track& track, const EvalResult& result);

}  // namespace aisdb
