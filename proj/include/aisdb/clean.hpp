#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "aisdb/model.hpp"

namespace aisdb {

/// How inserted records get their COG.
enum class InterpolatedCog : std::uint8_t { CopyEarlier, ChordBearing };

struct CleanConfig {
  double sog_jump_threshold = 15.0;     // knots
  double distance_tolerance_km = 0.5;
  std::int64_t missing_interval_min = 1;
  double interp_ratio_threshold = 2.0;
  InterpolatedCog cog_mode = InterpolatedCog::CopyEarlier;
  UnitConstants units{};

  /// Throws ConfigError on non-positive thresholds.
  void validate() const;
};

struct MissingPair {
  AisRecord earlier;
  AisRecord later;
  std::int64_t gap_minutes = 0;
  std::size_t earlier_index = 0;
};

struct CleanReport {
  Mmsi mmsi{};
  std::vector<std::size_t> sog_corrections;  // indices into the input track
  std::size_t pairs_found = 0;
  std::size_t pairs_interpolated = 0;
  std::size_t records_inserted = 0;

  [[nodiscard]] std::size_t changes() const { return sog_corrections.size() + records_inserted; }
};

struct CleanResult {
  Track track;
  CleanReport report;
};

/// True when the SOG jump from prev to cur is large and the distance implied
/// by cur.sog over the elapsed minutes disagrees with the haversine distance.
/// Throws PreconditionError unless cur.t > prev.t.
bool detect_sog_error(const AisRecord& prev, const AisRecord& cur, const CleanConfig& cfg);

/// Left-to-right sweep; flagged speeds take the (already corrected) previous speed.
CleanResult correct_sog_errors(const Track& track, const CleanConfig& cfg);

std::vector<MissingPair> find_missing_pairs(const Track& track, const CleanConfig& cfg);

/// distance / (earlier speed in km/min) > interp_ratio_threshold.
/// Never true for a stationary earlier record.
bool needs_interpolation(const MissingPair& pair, const CleanConfig& cfg);

/// gap_minutes - 1 records at the missing minutes, linear in lon/lat.
std::vector<AisRecord> interpolate_gap(const MissingPair& pair, const CleanConfig& cfg = {});

/// Speed correction, then gap detection and interpolation on the corrected track.
CleanResult clean_track(const Track& track, const CleanConfig& cfg);

/// Initial great-circle bearing from a to b in [0, 360).
double initial_bearing_deg(const GeoPoint& a, const GeoPoint& b);

}  // namespace aisdb
