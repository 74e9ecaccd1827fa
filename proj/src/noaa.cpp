#include "mgfrft/noaa.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

#include <json.hpp>

#include "mgfrft/csv.hpp"
#include "mgfrft/error.hpp"

namespace mgfrft {
namespace {

namespace fs = std::filesystem;

struct Date {
  int year = 0;
  std::size_t day_of_year = 0;  // 0-based
};

Date parse_date(const std::string& text, std::size_t line) {
  int y = 0;
  unsigned m = 0;
  unsigned d = 0;
  char dash1 = 0;
  char dash2 = 0;
  std::istringstream in(text);
  in >> y >> dash1 >> m >> dash2 >> d;
  if (!in || dash1 != '-' || dash2 != '-' || !in.eof()) {
    throw ParseError("malformed DATE '" + text + "'", line);
  }
  using namespace std::chrono;
  const year_month_day ymd{year{y}, month{m}, day{d}};
  if (!ymd.ok()) throw ParseError("invalid DATE '" + text + "'", line);
  const auto offset = sys_days{ymd} - sys_days{year{y} / January / 1};
  return {y, static_cast<std::size_t>(offset.count())};
}

std::size_t column(const std::vector<std::string>& header, const std::string& name) {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw ParseError("GSOD header lacks column " + name, 1);
  return static_cast<std::size_t>(it - header.begin());
}

bool blank(const std::string& s) {
  return s.find_first_not_of(" \t") == std::string::npos;
}

}  // namespace

double StationRecord::coverage() const {
  const auto n = std::count(present.begin(), present.end(), true);
  return static_cast<double>(n) / static_cast<double>(kDaysPerYear);
}

std::vector<StationCoord> TemperatureDataset::coords() const {
  std::vector<StationCoord> out;
  out.reserve(stations.size());
  for (const auto& s : stations) out.push_back(s.coord);
  return out;
}

StationRecord parse_gsod_csv(const std::string& text) {
  std::vector<std::string> rows = csv::lines(text);
  while (!rows.empty() && blank(rows.back())) rows.pop_back();
  if (rows.empty()) throw ParseError("GSOD file is empty");
  const auto header = csv::split_line(rows.front());
  const std::size_t c_station = column(header, "STATION");
  const std::size_t c_date = column(header, "DATE");
  const std::size_t c_lat = column(header, "LATITUDE");
  const std::size_t c_lon = column(header, "LONGITUDE");
  const std::size_t c_temp = column(header, "TEMP");
  if (rows.size() < 2) throw ParseError("GSOD file has no data rows");

  StationRecord record;
  std::optional<int> year;
  std::optional<std::pair<double, double>> latlon;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const std::size_t line = r + 1;
    const auto fields = csv::split_line(rows[r]);
    if (fields.size() != header.size()) {
      throw ParseError("expected " + std::to_string(header.size()) + " fields, got " +
                           std::to_string(fields.size()),
                       line);
    }
    const std::string id(fields[c_station]);
    if (id.empty()) throw ParseError("empty STATION", line);
    if (record.station_id.empty()) {
      record.station_id = id;
    } else if (record.station_id != id) {
      throw ParseError("file mixes stations " + record.station_id + " and " + id, line);
    }

    const Date date = parse_date(fields[c_date], line);
    if (year && *year != date.year) throw ParseError("file spans more than one year", line);
    year = date.year;

    if (!latlon && !blank(fields[c_lat]) && !blank(fields[c_lon])) {
      latlon = {csv::parse_double(fields[c_lat], line), csv::parse_double(fields[c_lon], line)};
    }

    if (date.day_of_year >= kDaysPerYear) continue;
    if (record.present[date.day_of_year]) throw ParseError("duplicate DATE " + fields[c_date], line);
    const double temp = csv::parse_double(fields[c_temp], line);
    if (temp == kGsodMissing) continue;
    record.temps[date.day_of_year] = temp;
    record.present[date.day_of_year] = true;
  }

  if (!latlon) throw StationRejectedError("station " + record.station_id + " has no coordinates");
  try {
    record.coord = StationCoord::from_degrees(latlon->first, latlon->second, record.station_id);
  } catch (const ParameterError& e) {
    throw StationRejectedError(e.what());
  }
  return record;
}

TemperatureDataset assemble_dataset(std::vector<StationRecord> records, double min_coverage) {
  if (!(min_coverage >= 0.0 && min_coverage <= 1.0)) {
    throw ParameterError("min_coverage must lie in [0, 1]");
  }
  std::erase_if(records, [&](const StationRecord& r) {
    return r.coverage() < min_coverage || r.coverage() == 0.0;
  });
  if (records.size() < 2) {
    throw InsufficientDataError("need at least 2 stations with " +
                                std::to_string(min_coverage * 100.0) + "% day coverage, have " +
                                std::to_string(records.size()));
  }
  std::sort(records.begin(), records.end(),
            [](const StationRecord& a, const StationRecord& b) { return a.station_id < b.station_id; });
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].station_id == records[i - 1].station_id) {
      throw ParameterError("station " + records[i].station_id + " appears twice");
    }
  }

  Eigen::VectorXd values(static_cast<Eigen::Index>(records.size() * kDaysPerYear));
  for (std::size_t s = 0; s < records.size(); ++s) {
    auto& rec = records[s];
    std::optional<std::size_t> prev;
    for (std::size_t t = 0; t < kDaysPerYear; ++t) {
      if (!rec.present[t]) continue;
      if (!prev) {
        for (std::size_t u = 0; u < t; ++u) rec.temps[u] = rec.temps[t];
      } else {
        const std::size_t gap = t - *prev;
        for (std::size_t u = *prev + 1; u < t; ++u) {
          const double w = static_cast<double>(u - *prev) / static_cast<double>(gap);
          rec.temps[u] = (1.0 - w) * rec.temps[*prev] + w * rec.temps[t];
        }
      }
      prev = t;
    }
    for (std::size_t u = *prev + 1; u < kDaysPerYear; ++u) rec.temps[u] = rec.temps[*prev];
    for (std::size_t t = 0; t < kDaysPerYear; ++t) {
      values(static_cast<Eigen::Index>(s * kDaysPerYear + t)) = rec.temps[t];
    }
  }
  TemperatureDataset out;
  out.signal = ProductSignal({records.size(), kDaysPerYear}, values);
  out.stations = std::move(records);
  out.min_coverage = min_coverage;
  return out;
}

DirectoryLoad load_gsod_directory(const std::string& dir) {
  if (!fs::is_directory(dir)) throw ParseError("'" + dir + "' is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  DirectoryLoad out;
  for (const auto& file : files) {
    try {
      out.records.push_back(parse_gsod_csv(csv::read_file(file.string())));
    } catch (const Error& e) {
      out.rejected.push_back(file.filename().string() + ": " + e.what());
    }
  }
  return out;
}

std::vector<StationRecord> sample_records(std::vector<StationRecord> records, std::size_t count,
                                          std::uint64_t seed) {
  std::sort(records.begin(), records.end(),
            [](const StationRecord& a, const StationRecord& b) { return a.station_id < b.station_id; });
  if (count < records.size()) {
    std::mt19937_64 rng(seed);
    // Partial Fisher-Yates with an explicit index draw keeps the sample stable
    // across standard library implementations.
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng() % (records.size() - i));
      std::swap(records[i], records[j]);
    }
    records.resize(count);
    std::sort(records.begin(), records.end(),
              [](const StationRecord& a, const StationRecord& b) { return a.station_id < b.station_id; });
  }
  return records;
}

void write_dataset_bundle(const TemperatureDataset& dataset, const std::string& dir) {
  fs::create_directories(dir);
  const fs::path root(dir);

  std::ostringstream temps;
  temps << "station_id";
  for (std::size_t t = 1; t <= kDaysPerYear; ++t) temps << ',' << t;
  temps << '\n';
  for (std::size_t s = 0; s < dataset.stations.size(); ++s) {
    temps << dataset.stations[s].station_id;
    for (std::size_t t = 0; t < kDaysPerYear; ++t) {
      temps << ',' << csv::format_double(dataset.signal.data(static_cast<Eigen::Index>(s * kDaysPerYear + t)).real());
    }
    temps << '\n';
  }
  csv::write_file((root / "temps.csv").string(), temps.str());

  const auto coords = dataset.coords();
  csv::write_file((root / "stations.csv").string(), stations_to_csv(coords));

  nlohmann::ordered_json manifest;
  manifest["days"] = kDaysPerYear;
  manifest["min_coverage"] = dataset.min_coverage;
  manifest["matrix"] = "temps.csv";
  manifest["stations_csv"] = "stations.csv";
  auto stations = nlohmann::ordered_json::array();
  for (const auto& s : dataset.stations) {
    stations.push_back({{"id", s.station_id},
                        {"lat_deg", s.coord.theta * 180.0 / std::numbers::pi},
                        {"lon_deg", s.coord.phi * 180.0 / std::numbers::pi},
                        {"coverage", s.coverage()}});
  }
  manifest["stations"] = std::move(stations);
  csv::write_file((root / "manifest.json").string(), manifest.dump(2) + "\n");
}

}  // namespace mgfrft
