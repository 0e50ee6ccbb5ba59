#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "aisdb/model.hpp"

namespace aisdb {

/// Counters produced while reading raw CSV and grouping it per vessel.
struct IngestReport {
  std::size_t rows_read = 0;
  std::size_t rows_accepted = 0;
  std::size_t rows_rejected = 0;
  std::map<std::string, std::size_t> reject_reasons;
  std::size_t duplicates_dropped = 0;
  std::size_t vessels = 0;
  std::map<Mmsi, std::size_t> records_per_vessel;

  /// Adds another partial report; the operation is associative.
  void merge(const IngestReport& other);
};

struct ParseOptions {
  /// Drop rows outside lon [-126, -120], lat [30, 50].
  bool clip_region = false;
  /// Honour a PROVENANCE column when present. Off for raw input.
  bool keep_provenance = false;
};

struct ParseResult {
  std::vector<AisRecord> records;
  IngestReport report;
};

/// Header-driven CSV parse. Bad rows are counted and skipped.
/// Throws IoError on stream failure and SchemaError when a mandatory column is missing.
ParseResult parse_csv(std::istream& in, const ParseOptions& options = {});
ParseResult parse_csv_file(const std::filesystem::path& path, const ParseOptions& options = {});

/// Groups into one Track per MMSI, ascending MMSI, strictly increasing time.
/// Duplicate (mmsi, minute) rows keep the first occurrence in input order.
std::vector<Track> group_by_vessel(std::vector<AisRecord> records, IngestReport* report = nullptr);

struct WriteOptions {
  /// Append a PROVENANCE column (RAW|CORRECTED|INTERP).
  bool annotated = false;
};

/// Writes `<MMSI>.csv` into `directory` and returns its path.
std::filesystem::path write_track_csv(const Track& track, const std::filesystem::path& directory,
                                      const WriteOptions& options = {});
void write_track_csv(const Track& track, std::ostream& out, const WriteOptions& options = {});

struct FileError {
  std::filesystem::path path;
  std::string message;
};

struct DatabaseLoad {
  std::vector<Track> tracks;
  std::vector<FileError> errors;
};

/// Loads every `<MMSI>.csv` in `directory`. Files whose rows disagree with the
/// file name, or that are not strictly time-ordered, are reported in `errors`.
DatabaseLoad read_database(const std::filesystem::path& directory);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

}  // namespace aisdb
