#include "mgfrft/geo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mgfrft/csv.hpp"
#include "mgfrft/error.hpp"

namespace mgfrft {
namespace {

void validate(const StationCoord& s) {
  constexpr double half_pi = std::numbers::pi / 2;
  if (!(s.theta >= -half_pi && s.theta <= half_pi) ||
      !(s.phi >= -std::numbers::pi && s.phi <= std::numbers::pi)) {
    throw ParameterError("station '" + s.id + "' has coordinates outside the valid range");
  }
}

}  // namespace

StationCoord StationCoord::from_degrees(double lat_deg, double lon_deg, std::string id) {
  StationCoord s{lat_deg * std::numbers::pi / 180.0, lon_deg * std::numbers::pi / 180.0,
                 std::move(id)};
  validate(s);
  return s;
}

double spherical_distance(const StationCoord& a, const StationCoord& b) {
  const double c = std::cos(a.theta) * std::cos(b.theta) * std::cos(a.phi - b.phi) +
                   std::sin(a.theta) * std::sin(b.theta);
  return std::acos(std::clamp(c, -1.0, 1.0));
}

std::vector<StationEdge> knn_edges(std::span<const StationCoord> stations, std::size_t k,
                                   KnnMode mode) {
  const std::size_t n = stations.size();
  if (k < 1 || k >= n) {
    throw ParameterError("k must satisfy 1 <= k < station count (k = " + std::to_string(k) +
                         ", stations = " + std::to_string(n) + ")");
  }
  for (const auto& s : stations) validate(s);

  std::vector<double> dist(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (stations[i].theta == stations[j].theta && stations[i].phi == stations[j].phi) {
        throw AmbiguousNeighborError("stations " + std::to_string(i) + " and " + std::to_string(j) +
                                     " share coordinates");
      }
      dist[i * n + j] = dist[j * n + i] = spherical_distance(stations[i], stations[j]);
    }
  }

  // neighbor[i][j] is set when j is among the k nearest stations of i.
  std::vector<std::vector<bool>> neighbor(n, std::vector<bool>(n, false));
  std::vector<std::size_t> order;
  order.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    order.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) order.push_back(j);
    }
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                      [&](std::size_t a, std::size_t b) {
                        const double da = dist[i * n + a];
                        const double db = dist[i * n + b];
                        return da != db ? da < db : a < b;
                      });
    for (std::size_t r = 0; r < k; ++r) neighbor[i][order[r]] = true;
  }

  std::vector<StationEdge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool linked = mode == KnnMode::kUnion ? (neighbor[i][j] || neighbor[j][i])
                                                  : (neighbor[i][j] && neighbor[j][i]);
      if (linked) edges.push_back({i, j, dist[i * n + j]});
    }
  }
  return edges;
}

double default_sigma2(std::span<const StationEdge> edges) {
  if (edges.empty()) throw DegenerateNormalizationError("no edges to derive sigma^2 from");
  double sum = 0.0;
  for (const auto& e : edges) sum += e.distance * e.distance;
  const double mean = sum / static_cast<double>(edges.size());
  if (!(mean > 0.0)) throw DegenerateNormalizationError("all edge distances are zero");
  return mean;
}

Graph gaussian_weights(std::size_t n, std::span<const StationEdge> edges, double sigma2) {
  if (!(sigma2 > 0.0)) throw ParameterError("sigma^2 must be positive");
  std::vector<double> kernel(edges.size());
  std::vector<double> incident(n, 0.0);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto& edge = edges[e];
    if (edge.from >= n || edge.to >= n || edge.from == edge.to) {
      throw ParameterError("edge references an invalid station pair");
    }
    kernel[e] = std::exp(-(edge.distance * edge.distance) / sigma2);
    incident[edge.from] += kernel[e];
    incident[edge.to] += kernel[e];
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(incident[i] > 0.0)) {
      throw DegenerateNormalizationError("station " + std::to_string(i) +
                                         " has no incident edge weight");
    }
  }
  std::vector<Edge> weighted;
  weighted.reserve(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto& edge = edges[e];
    // One square root of the product: for a lone edge sqrt(k * k) == k, so the weight is exactly 1.
    const double w = kernel[e] / std::sqrt(incident[edge.from] * incident[edge.to]);
    weighted.push_back({edge.from, edge.to, w});
  }
  return Graph::from_edges(n, weighted, false);
}

Graph build_station_graph(std::span<const StationCoord> stations, const KnnConfig& cfg) {
  const auto edges = knn_edges(stations, cfg.k, cfg.mode);
  const double sigma2 = cfg.sigma2 ? *cfg.sigma2 : default_sigma2(edges);
  return gaussian_weights(stations.size(), edges, sigma2);
}

std::vector<StationCoord> stations_from_csv(const std::string& text) {
  std::vector<StationCoord> out;
  const auto rows = csv::lines(text);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].empty()) continue;
    const auto fields = csv::split_line(rows[r]);
    if (r == 0 && !fields.empty() && fields.front() == "id") continue;
    if (fields.size() != 3) throw ParseError("station rows must be id,lat_deg,lon_deg", r + 1);
    const double lat = csv::parse_double(fields[1], r + 1);
    const double lon = csv::parse_double(fields[2], r + 1);
    try {
      out.push_back(StationCoord::from_degrees(lat, lon, fields[0]));
    } catch (const ParameterError& e) {
      throw ParseError(e.what(), r + 1);
    }
  }
  if (out.empty()) throw ParseError("station CSV has no rows");
  return out;
}

std::string stations_to_csv(std::span<const StationCoord> stations) {
  std::ostringstream out;
  out << "id,lat_deg,lon_deg\n";
  for (const auto& s : stations) {
    out << s.id << ',' << csv::format_double(s.theta * 180.0 / std::numbers::pi) << ','
        << csv::format_double(s.phi * 180.0 / std::numbers::pi) << '\n';
  }
  return out.str();
}

}  // namespace mgfrft
