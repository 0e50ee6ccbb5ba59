#pragma once

// Per-vessel batch kernels. Each has a plain serial loop, kept as the
// reference, and an OpenMP loop that must give identical results: every
// iteration writes only its own output slot and partial results are merged in
// index order.

#include <cstddef>
#include <span>
#include <vector>

#include "aisdb/clean.hpp"
#include "aisdb/predict.hpp"
#include "aisdb/screen.hpp"
#include "aisdb/stats.hpp"

namespace aisdb::kernels {

enum class Execution { Serial, Parallel };

/// Sets the OpenMP team size; n == 0 leaves the runtime default.
void set_thread_count(std::size_t n);
std::size_t thread_count();

std::vector<ScreenReport> screen_all(std::span<const Track> tracks, const ScreenConfig& cfg,
                                     Execution exec = Execution::Parallel);

struct CleanBatch {
  std::vector<Track> tracks;
  std::vector<CleanReport> reports;
};

CleanBatch clean_all(std::span<const Track> tracks, const CleanConfig& cfg,
                     Execution exec = Execution::Parallel);

/// Same result as summarize(); the parallel path folds per-thread partials.
DatabaseSummary summarize_all(std::span<const Track> tracks, std::span<const CleanReport> reports,
                              std::size_t interp_bin_width, Execution exec = Execution::Parallel);

/// Sliding ELM evaluation. Per-window seeds make the parallel and serial
/// error sequences identical.
EvalResult evaluate_track(const Track& track, const EvalConfig& cfg, Execution exec);

}  // namespace aisdb::kernels
