#include "aisdb/stats.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "aisdb/errors.hpp"

namespace aisdb {

std::string_view to_string(CogStatus s) {
  static constexpr std::array<std::string_view, kCogStatusCount> names{
      "North", "Northeast", "East", "Southeast", "South", "Southwest", "West", "Northwest", "Invalid"};
  return names[static_cast<std::size_t>(s)];
}

std::string_view to_string(SogStatus s) {
  static constexpr std::array<std::string_view, kSogStatusCount> names{"Slow", "Medium", "High",
                                                                        "VeryHigh", "Exception"};
  return names[static_cast<std::size_t>(s)];
}

std::string_view to_string(RouteType s) {
  static constexpr std::array<std::string_view, kRouteTypeCount> names{"Short", "Medium", "Long",
                                                                        "Exception", "BelowRange"};
  return names[static_cast<std::size_t>(s)];
}

CogStatus cog_status(double cog) {
  if (!(cog >= 0.0 && cog <= 360.0)) return CogStatus::Invalid;
  if (cog >= 337.5 || cog < 22.5) return CogStatus::North;
  if (cog < 67.5) return CogStatus::Northeast;
  if (cog < 112.5) return CogStatus::East;
  if (cog < 157.5) return CogStatus::Southeast;
  if (cog < 202.5) return CogStatus::South;
  if (cog < 247.5) return CogStatus::Southwest;
  if (cog < 292.5) return CogStatus::West;
  return CogStatus::Northwest;
}

SogStatus sog_status(double sog) {
  if (!(sog >= 0.0)) throw PreconditionError("sog_status needs a non-negative speed");
  if (sog < 3.0) return SogStatus::Slow;
  if (sog < 14.0) return SogStatus::Medium;
  if (sog < 23.0) return SogStatus::High;
  if (sog < 99.0) return SogStatus::VeryHigh;
  return SogStatus::Exception;
}

RouteType route_type(std::size_t n) {
  if (n < 530) return RouteType::BelowRange;
  if (n < 1000) return RouteType::Short;
  if (n < 2000) return RouteType::Medium;
  if (n < 10000) return RouteType::Long;
  return RouteType::Exception;
}

void DatabaseSummary::merge(const DatabaseSummary& other) {
  for (std::size_t i = 0; i < kCogStatusCount; ++i) cog_histogram[i] += other.cog_histogram[i];
  for (std::size_t i = 0; i < kSogStatusCount; ++i) sog_histogram[i] += other.sog_histogram[i];
  for (std::size_t i = 0; i < kRouteTypeCount; ++i) {
    route_type_original[i] += other.route_type_original[i];
    route_type_interpolated[i] += other.route_type_interpolated[i];
  }
  for (const auto& [k, v] : other.vessel_type_histogram) vessel_type_histogram[k] += v;
  for (const auto& [k, v] : other.interpolated_length_histogram) interpolated_length_histogram[k] += v;
  total_records += other.total_records;
  total_trajectories += other.total_trajectories;
}

void accumulate(DatabaseSummary& s, const Track& track, std::size_t records_inserted) {
  for (const auto& r : track.records) {
    ++s.cog_histogram[static_cast<std::size_t>(cog_status(r.cog))];
    ++s.sog_histogram[static_cast<std::size_t>(sog_status(r.sog))];
  }
  const std::size_t n = track.size();
  const std::size_t original = n >= records_inserted ? n - records_inserted : 0;
  ++s.route_type_original[static_cast<std::size_t>(route_type(original))];
  ++s.route_type_interpolated[static_cast<std::size_t>(route_type(n))];

  const auto typed = std::find_if(track.records.begin(), track.records.end(),
                                  [](const AisRecord& r) { return !r.vessel_type.empty(); });
  if (typed != track.records.end()) ++s.vessel_type_histogram[typed->vessel_type];

  const std::size_t width = std::max<std::size_t>(1, s.interp_bin_width);
  ++s.interpolated_length_histogram[records_inserted / width * width];
  s.total_records += n;
  ++s.total_trajectories;
}

DatabaseSummary summarize(std::span<const Track> tracks, std::span<const CleanReport> clean_reports,
                          std::size_t interp_bin_width) {
  std::unordered_map<Mmsi, std::size_t> inserted;
  for (const auto& rep : clean_reports) inserted[rep.mmsi] += rep.records_inserted;

  DatabaseSummary s;
  s.interp_bin_width = interp_bin_width;
  for (const auto& tr : tracks) {
    std::size_t n_inserted = 0;
    if (const auto it = inserted.find(tr.mmsi); it != inserted.end()) {
      n_inserted = it->second;
    } else {
      n_inserted = static_cast<std::size_t>(
          std::count_if(tr.records.begin(), tr.records.end(),
                        [](const AisRecord& r) { return r.provenance == Provenance::Interpolated; }));
    }
    accumulate(s, tr, n_inserted);
  }
  return s;
}

}  // namespace aisdb
