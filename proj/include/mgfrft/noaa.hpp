#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mgfrft/geo.hpp"
#include "mgfrft/transform.hpp"

namespace mgfrft {

/// Days on the time axis. Day 366 of a leap year (Dec 31) is dropped.
inline constexpr std::size_t kDaysPerYear = 365;
/// GSOD marks a missing mean temperature with this value.
inline constexpr double kGsodMissing = 9999.9;

struct StationRecord {
  std::string station_id;
  StationCoord coord;
  std::vector<double> temps = std::vector<double>(kDaysPerYear, 0.0);
  std::vector<bool> present = std::vector<bool>(kDaysPerYear, false);

  double coverage() const;
};

struct TemperatureDataset {
  /// Gap-filled records sorted by station id; row i of the signal is stations[i].
  std::vector<StationRecord> stations;
  /// dims (stations, 365), real values in the source unit.
  ProductSignal signal;
  double min_coverage = 0.95;

  std::vector<StationCoord> coords() const;
};

/// Parses one GSOD per-station yearly CSV (columns STATION, DATE, LATITUDE,
/// LONGITUDE, TEMP at least). Throws ParseError for malformed input and
/// StationRejectedError when no row carries coordinates.
StationRecord parse_gsod_csv(const std::string& text);

/// Drops records below `min_coverage`, interpolates interior gaps linearly,
/// holds the nearest value at the ends, and stacks rows in station-id order.
TemperatureDataset assemble_dataset(std::vector<StationRecord> records, double min_coverage = 0.95);

struct DirectoryLoad {
  std::vector<StationRecord> records;
  /// "file: reason" for every file that was skipped.
  std::vector<std::string> rejected;
};

/// Parses every *.csv file in `dir` (sorted by file name).
DirectoryLoad load_gsod_directory(const std::string& dir);

/// Random subset of `count` records (all of them when count >= size),
/// returned in station-id order.
std::vector<StationRecord> sample_records(std::vector<StationRecord> records, std::size_t count,
                                          std::uint64_t seed);

/// Writes manifest.json, temps.csv (`station_id` label + 365 day columns) and
/// stations.csv (`id,lat_deg,lon_deg`) into `dir`.
void write_dataset_bundle(const TemperatureDataset& dataset, const std::string& dir);

}  // namespace mgfrft
