#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>

#include "aisdb/clean.hpp"
#include "aisdb/model.hpp"

namespace aisdb {

enum class CogStatus : std::uint8_t {
  North, Northeast, East, Southeast, South, Southwest, West, Northwest, Invalid
};
enum class SogStatus : std::uint8_t { Slow, Medium, High, VeryHigh, Exception };
enum class RouteType : std::uint8_t { Short, Medium, Long, Exception, BelowRange };

inline constexpr std::size_t kCogStatusCount = 9;
inline constexpr std::size_t kSogStatusCount = 5;
inline constexpr std::size_t kRouteTypeCount = 5;

std::string_view to_string(CogStatus s);
std::string_view to_string(SogStatus s);
std::string_view to_string(RouteType s);

/// Eight 45-degree compass sectors, lower edge closed. North wraps [337.5, 360] and [0, 22.5).
CogStatus cog_status(double cog_deg);
/// Throws PreconditionError for negative or NaN speed.
SogStatus sog_status(double sog_knots);
RouteType route_type(std::size_t record_count);

struct DatabaseSummary {
  std::array<std::size_t, kCogStatusCount> cog_histogram{};
  std::array<std::size_t, kSogStatusCount> sog_histogram{};
  std::array<std::size_t, kRouteTypeCount> route_type_original{};
  std::array<std::size_t, kRouteTypeCount> route_type_interpolated{};
  std::map<std::string, std::size_t> vessel_type_histogram;
  /// Bin start (multiple of the bin width) -> number of trajectories.
  std::map<std::size_t, std::size_t> interpolated_length_histogram;
  std::size_t interp_bin_width = 50;
  std::size_t total_records = 0;
  std::size_t total_trajectories = 0;

  /// Adds the counts of a partial summary built with the same bin width.
  void merge(const DatabaseSummary& other);
  friend bool operator==(const DatabaseSummary&, const DatabaseSummary&) = default;
};

/// Adds one track to `summary`. `records_inserted` is how many of its records
/// came from interpolation.
void accumulate(DatabaseSummary& summary, const Track& track, std::size_t records_inserted);

/// Histograms over a cleaned database. `clean_reports` is matched to tracks by
/// MMSI; tracks without a report count their Interpolated-provenance records.
DatabaseSummary summarize(std::span<const Track> tracks, std::span<const CleanReport> clean_reports,
                          std::size_t interp_bin_width = 50);

}  // namespace aisdb
