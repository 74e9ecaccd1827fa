#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mgfrft/graph.hpp"

namespace mgfrft {

/// Station position on the unit sphere, in radians.
struct StationCoord {
  double theta = 0.0;  ///< latitude, [-pi/2, pi/2]
  double phi = 0.0;    ///< longitude, [-pi, pi]
  std::string id;

  static StationCoord from_degrees(double lat_deg, double lon_deg, std::string id = {});
};

enum class KnnMode {
  kUnion,   ///< edge when either endpoint lists the other among its k nearest
  kMutual,  ///< edge only when both do
};

struct KnnConfig {
  std::size_t k = 5;
  /// Gaussian kernel bandwidth; unset means the mean squared kNN edge distance.
  std::optional<double> sigma2;
  KnnMode mode = KnnMode::kUnion;
};

/// Great-circle angle arccos(cos t1 cos t2 cos(p1 - p2) + sin t1 sin t2),
/// with the arccos argument clamped to [-1, 1].
double spherical_distance(const StationCoord& a, const StationCoord& b);

struct StationEdge {
  std::size_t from = 0;  ///< from < to
  std::size_t to = 0;
  double distance = 0.0;
};

/// k-nearest-neighbor edges, each undirected edge once, sorted by (from, to).
/// Distance ties go to the smaller station index.
std::vector<StationEdge> knn_edges(std::span<const StationCoord> stations, std::size_t k,
                                   KnnMode mode = KnnMode::kUnion);

/// Normalized Gaussian-kernel weights
/// W_ij = e_ij / (sqrt(sum_{k~i} e_ik) * sqrt(sum_{k~j} e_jk)), e_ij = exp(-d_ij^2 / sigma2).
Graph gaussian_weights(std::size_t n, std::span<const StationEdge> edges, double sigma2);

/// Mean of d^2 over the edges.
double default_sigma2(std::span<const StationEdge> edges);

Graph build_station_graph(std::span<const StationCoord> stations, const KnnConfig& cfg);

/// `id,lat_deg,lon_deg` with an optional header line.
std::vector<StationCoord> stations_from_csv(const std::string& text);
std::string stations_to_csv(std::span<const StationCoord> stations);

}  // namespace mgfrft
