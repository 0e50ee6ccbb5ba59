#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "aisdb/model.hpp"

namespace aisdb {

enum class NoiseClass : std::uint8_t { Clean, Discontinuous, Loose, Tangled };

std::string_view to_string(NoiseClass c);

struct ScreenConfig {
  std::size_t min_run = 500;
  double complexity_threshold = 0.8;
  double gap_km_threshold = 10.0;
  double loose_mean_spacing_km = 2.0;
  UnitConstants units{};

  /// Throws ConfigError if any threshold is not positive.
  void validate() const;
};

struct NavigationRun {
  std::size_t start = 0;
  std::size_t length = 0;
  friend bool operator==(const NavigationRun&, const NavigationRun&) = default;
};

struct ScreenReport {
  Mmsi mmsi{};
  std::size_t records = 0;
  std::size_t longest_nav_run = 0;
  std::optional<double> complexity;      // empty when no turn angle is defined
  std::optional<NoiseClass> noise_class;  // empty for tracks shorter than 3 records
  bool accepted = false;
};

/// Maximal runs of consecutive records with nonzero SOG.
std::vector<NavigationRun> navigation_runs(const Track& track);
std::size_t longest_navigation_run(const Track& track);

/// Mean turn cosine over interior points where it is defined.
/// Throws PreconditionError for fewer than 3 records.
std::optional<double> route_complexity(const Track& track);

/// Throws PreconditionError for fewer than 3 records.
NoiseClass classify_noise(const Track& track, const ScreenConfig& cfg);

ScreenReport screen_track(const Track& track, const ScreenConfig& cfg);

}  // namespace aisdb
