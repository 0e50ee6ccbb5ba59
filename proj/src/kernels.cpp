#include "aisdb/kernels.hpp"

#include <omp.h>

#include <exception>
#include <optional>
#include <unordered_map>

namespace aisdb::kernels {

namespace {

// Runs body(i) for i in [0, n), serially or across the OpenMP team. The first
// exception raised by any iteration is rethrown on the calling thread.
template <typename Body>
void for_each_index(std::size_t n, Execution exec, Body&& body) {
  if (exec == Execution::Serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr error;
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(aisdb_kernel_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace

void set_thread_count(std::size_t n) {
  if (n > 0) omp_set_num_threads(static_cast<int>(n));
}

std::size_t thread_count() { return static_cast<std::size_t>(omp_get_max_threads()); }

std::vector<ScreenReport> screen_all(std::span<const Track> tracks, const ScreenConfig& cfg, Execution exec) {
  std::vector<ScreenReport> out(tracks.size());
  for_each_index(tracks.size(), exec, [&](std::size_t i) { out[i] = screen_track(tracks[i], cfg); });
  return out;
}

CleanBatch clean_all(std::span<const Track> tracks, const CleanConfig& cfg, Execution exec) {
  CleanBatch batch;
  batch.tracks.resize(tracks.size());
  batch.reports.resize(tracks.size());
  for_each_index(tracks.size(), exec, [&](std::size_t i) {
    auto res = clean_track(tracks[i], cfg);
    batch.tracks[i] = std::move(res.track);
    batch.reports[i] = std::move(res.report);
  });
  return batch;
}

DatabaseSummary summarize_all(std::span<const Track> tracks, std::span<const CleanReport> reports,
                              std::size_t interp_bin_width, Execution exec) {
  if (exec == Execution::Serial) return summarize(tracks, reports, interp_bin_width);

  std::unordered_map<Mmsi, std::size_t> inserted;
  for (const auto& rep : reports) inserted[rep.mmsi] += rep.records_inserted;

  std::vector<DatabaseSummary> partials(thread_count());
  for (auto& p : partials) p.interp_bin_width = interp_bin_width;
  const auto count = static_cast<std::ptrdiff_t>(tracks.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto& tr = tracks[static_cast<std::size_t>(i)];
    std::size_t n_inserted = 0;
    if (const auto it = inserted.find(tr.mmsi); it != inserted.end()) {
      n_inserted = it->second;
    } else {
      for (const auto& r : tr.records) n_inserted += r.provenance == Provenance::Interpolated ? 1 : 0;
    }
    accumulate(partials[static_cast<std::size_t>(omp_get_thread_num())], tr, n_inserted);
  }

  DatabaseSummary total;
  total.interp_bin_width = interp_bin_width;
  for (const auto& p : partials) total.merge(p);
  return total;
}

EvalResult evaluate_track(const Track& track, const EvalConfig& cfg, Execution exec) {
  if (exec == Execution::Serial) return aisdb::evaluate_track(track, cfg);

  const auto points = evaluation_points(track, cfg);
  std::optional<ElmModel> shared;
  if (!cfg.retrain_each_step) {
    for (auto tc : points) {
      if (evaluation_ready(track, cfg, tc)) {
        shared = train_at(track, cfg, tc);
        break;
      }
    }
  }

  std::vector<std::optional<Prediction>> slots(points.size());
  if (cfg.retrain_each_step || shared) {
    const ElmModel* model = shared ? &*shared : nullptr;
    for_each_index(points.size(), exec,
                   [&](std::size_t i) { slots[i] = evaluate_at(track, cfg, points[i], model); });
  }

  EvalResult result;
  for (auto& s : slots) {
    if (s) {
      result.predictions.push_back(*s);
    } else {
      ++result.skipped;
    }
  }
  result.histogram = error_histogram(result.predictions, cfg.bin_width_nm);
  return result;
}

}  // namespace aisdb::kernels
