#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aisdb {

/// Maritime Mobile Service Identity. One MMSI is one vessel and one track.
using Mmsi = std::uint32_t;

/// Position in degrees. x is longitude, y is latitude.
struct GeoPoint {
  double lon{};
  double lat{};

  [[nodiscard]] bool valid() const;
  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

/// Minute-resolution timestamp, stored as minutes since 1970-01-01 00:00.
///
/// The text form is the 12-digit YYYYMMDDHHMM used by the BASEDATETIME column.
class Timestamp {
 public:
  constexpr Timestamp() = default;
  constexpr explicit Timestamp(std::int64_t minutes) : minutes_(minutes) {}

  /// Throws ValidationError on anything but a valid 12-digit calendar minute.
  static Timestamp parse(std::string_view digits);
  static std::optional<Timestamp> try_parse(std::string_view digits);
  static Timestamp from_civil(int year, unsigned month, unsigned day, unsigned hour,
                              unsigned minute);

  [[nodiscard]] std::string format() const;
  [[nodiscard]] constexpr std::int64_t minutes() const { return minutes_; }

  constexpr Timestamp operator+(std::int64_t m) const { return Timestamp{minutes_ + m}; }
  constexpr std::int64_t operator-(Timestamp other) const { return minutes_ - other.minutes_; }
  friend constexpr auto operator<=>(Timestamp, Timestamp) = default;

 private:
  std::int64_t minutes_{0};
};

/// Which pipeline stage produced a record's current values.
enum class Provenance : std::uint8_t { Raw, SpeedCorrected, Interpolated };

std::string_view to_string(Provenance p);
std::optional<Provenance> provenance_from_string(std::string_view s);

/// One position report. SOG is in knots, COG and ROT in degrees.
struct AisRecord {
  Mmsi mmsi{};
  GeoPoint pos{};
  double sog{};
  double cog{};
  std::optional<double> rot{};
  Timestamp t{};
  Provenance provenance{Provenance::Raw};
  std::string vessel_type{};  // empty when the source has no VesselType column

  friend bool operator==(const AisRecord&, const AisRecord&) = default;
};

/// Time-ordered records of a single vessel.
struct Track {
  Mmsi mmsi{};
  std::vector<AisRecord> records{};

  [[nodiscard]] std::size_t size() const { return records.size(); }
  [[nodiscard]] bool empty() const { return records.empty(); }
  friend bool operator==(const Track&, const Track&) = default;
};

struct UnitConstants {
  double earth_radius_km = 6371.0;
  double km_per_nautical_mile = 1.852;
};

/// Great-circle distance by the haversine formula.
double haversine_km(const GeoPoint& a, const GeoPoint& b, const UnitConstants& units = {});

/// Cosine of the turn angle at p_cur, computed on raw lon/lat differences.
/// Empty when either displacement has zero length.
std::optional<double> displacement_cos(const GeoPoint& p_prev, const GeoPoint& p_cur,
                                       const GeoPoint& p_next);

double knots_to_km_per_min(double sog_knots, const UnitConstants& units = {});

}  // namespace aisdb
