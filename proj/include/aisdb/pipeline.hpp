#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "aisdb/clean.hpp"
#include "aisdb/ingest.hpp"
#include "aisdb/predict.hpp"
#include "aisdb/screen.hpp"
#include "aisdb/stats.hpp"

namespace aisdb {

struct PipelineConfig {
  std::filesystem::path input;   // raw CSV file or a directory of CSV files
  std::filesystem::path output;  // run directory
  bool clip_region = false;
  bool annotated = false;
  std::uint64_t seed = 42;
  std::size_t jobs = 0;  // 0: OpenMP default. Never affects outputs.
  UnitConstants units{};
  ScreenConfig screen{};
  CleanConfig clean{};
  std::size_t interp_bin_width = 50;
  bool predict = false;
  EvalConfig eval{};

  /// Throws ConfigError.
  void validate() const;
  /// Copies the shared unit constants and seed into the per-stage configs.
  [[nodiscard]] PipelineConfig effective() const;
};

struct PipelineResult {
  IngestReport ingest;
  std::vector<ScreenReport> screen;
  std::vector<CleanReport> clean;
  std::vector<Track> database;
  DatabaseSummary summary;
};

/// Reads raw CSV from a file, or every *.csv in a directory (in name order),
/// and groups it per vessel.
std::vector<Track> ingest_input(const std::filesystem::path& input, const ParseOptions& options,
                                IngestReport& report);

/// ingest -> screen -> clean (accepted tracks) -> database -> stats [-> predict].
/// Everything is computed before the first byte is written to `cfg.output`.
PipelineResult run_pipeline(const PipelineConfig& cfg);

}  // namespace aisdb
