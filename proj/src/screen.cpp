#include "aisdb/screen.hpp"

#include <algorithm>

#include "aisdb/errors.hpp"

namespace aisdb {

std::string_view to_string(NoiseClass c) {
  switch (c) {
    case NoiseClass::Clean:
      return "Clean";
    case NoiseClass::Discontinuous:
      return "Discontinuous";
    case NoiseClass::Loose:
      return "Loose";
    case NoiseClass::Tangled:
      return "Tangled";
  }
  return "Clean";
}

void ScreenConfig::validate() const {
  if (min_run == 0) throw ConfigError("screen.min_run must be positive");
  if (!(complexity_threshold > 0.0)) throw ConfigError("screen.complexity_threshold must be positive");
  if (!(gap_km_threshold > 0.0)) throw ConfigError("screen.gap_km_threshold must be positive");
  if (!(loose_mean_spacing_km > 0.0))
    throw ConfigError("screen.loose_mean_spacing_km must be positive");
}

std::vector<NavigationRun> navigation_runs(const Track& track) {
  std::vector<NavigationRun> runs;
  const auto& r = track.records;
  std::size_t i = 0;
  while (i < r.size()) {
    if (r[i].sog == 0.0) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < r.size() && r[i].sog != 0.0) ++i;
    runs.push_back({start, i - start});
  }
  return runs;
}

std::size_t longest_navigation_run(const Track& track) {
  std::size_t best = 0;
  for (const auto& run : navigation_runs(track)) best = std::max(best, run.length);
  return best;
}

std::optional<double> route_complexity(const Track& track) {
  const auto& r = track.records;
  if (r.size() < 3) throw PreconditionError("route complexity needs at least 3 records");
  double sum = 0.0;
  std::size_t defined = 0;
  for (std::size_t i = 1; i + 1 < r.size(); ++i) {
    if (const auto c = displacement_cos(r[i - 1].pos, r[i].pos, r[i + 1].pos)) {
      sum += *c;
      ++defined;
    }
  }
  if (defined == 0) return std::nullopt;
  return sum / static_cast<double>(defined);
}

NoiseClass classify_noise(const Track& track, const ScreenConfig& cfg) {
  const auto& r = track.records;
  if (r.size() < 3) throw PreconditionError("noise classification needs at least 3 records");

  double total_km = 0.0;
  for (std::size_t i = 1; i < r.size(); ++i) {
    const double d = haversine_km(r[i - 1].pos, r[i].pos, cfg.units);
    if (d > cfg.gap_km_threshold) return NoiseClass::Discontinuous;
    total_km += d;
  }
  if (total_km / static_cast<double>(r.size() - 1) > cfg.loose_mean_spacing_km) return NoiseClass::Loose;

  // A track whose complexity is undefined (no movement at all) cannot be
  // shown to be untangled.
  const auto complexity = route_complexity(track);
  if (!complexity || *complexity <= cfg.complexity_threshold) return NoiseClass::Tangled;
  return NoiseClass::Clean;
}

ScreenReport screen_track(const Track& track, const ScreenConfig& cfg) {
  ScreenReport rep;
  rep.mmsi = track.mmsi;
  rep.records = track.size();
  rep.longest_nav_run = longest_navigation_run(track);
  if (track.size() < 3) return rep;

  rep.complexity = route_complexity(track);
  rep.noise_class = classify_noise(track, cfg);
  rep.accepted = rep.longest_nav_run >= cfg.min_run && rep.complexity &&
                 *rep.complexity > cfg.complexity_threshold && rep.noise_class == NoiseClass::Clean;
  return rep;
}

}  // namespace aisdb
