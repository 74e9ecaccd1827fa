#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "mgfrft/error.hpp"
#include "mgfrft/geo.hpp"
#include "oracles.hpp"

using namespace mgfrft;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<StationCoord> equator(std::size_t n) {
  std::vector<StationCoord> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({0.0, -kPi + 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n),
                   "s" + std::to_string(i)});
  }
  return out;
}

}  // namespace

TEST(StationCoord, FromDegreesValidates) {
  const auto s = StationCoord::from_degrees(45.0, -90.0, "x");
  EXPECT_DOUBLE_EQ(s.theta, kPi / 4.0);
  EXPECT_DOUBLE_EQ(s.phi, -kPi / 2.0);
  EXPECT_THROW(StationCoord::from_degrees(91.0, 0.0), ParameterError);
  EXPECT_THROW(StationCoord::from_degrees(0.0, 180.5), ParameterError);
}

TEST(SphericalDistance, Examples) {
  const StationCoord a{0.3, 1.1, ""};
  EXPECT_EQ(spherical_distance(a, a), 0.0);
  EXPECT_NEAR(spherical_distance({0.0, 0.0, ""}, {0.0, kPi / 2.0, ""}), kPi / 2.0, 1e-15);
  EXPECT_NEAR(spherical_distance({kPi / 4.0, 0.0, ""}, {-kPi / 4.0, kPi, ""}), kPi, 1e-12);
  EXPECT_NEAR(oracle::unit_vector_distance(kPi / 4.0, 0.0, -kPi / 4.0, kPi), kPi, 1e-7);
}

TEST(SphericalDistance, PropertyMatchesUnitVectorOracle) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> lat(-kPi / 2.0, kPi / 2.0);
  std::uniform_real_distribution<double> lon(-kPi, kPi);
  for (int i = 0; i < 1000; ++i) {
    const StationCoord a{lat(rng), lon(rng), ""};
    const StationCoord b{lat(rng), lon(rng), ""};
    const double d = spherical_distance(a, b);
    EXPECT_NEAR(d, oracle::unit_vector_distance(a.theta, a.phi, b.theta, b.phi), 1e-12);
    EXPECT_EQ(d, spherical_distance(b, a));
    EXPECT_GE(d, 0.0);
    EXPECT_LE(d, kPi);
  }
}

TEST(Knn, ThreeEquatorStationsNearestNeighbor) {
  // Stations at 0, 100 and 220 degrees of longitude: distances 100, 120, 140.
  const std::vector<StationCoord> s{StationCoord::from_degrees(0, 0), StationCoord::from_degrees(0, 100),
                                    StationCoord::from_degrees(0, -140)};
  const auto edges = knn_edges(s, 1);
  ASSERT_EQ(edges.size(), 2u);
  EXPECT_EQ(edges[0].from, 0u);
  EXPECT_EQ(edges[0].to, 1u);
  EXPECT_EQ(edges[1].from, 1u);
  EXPECT_EQ(edges[1].to, 2u);
  const auto mutual = knn_edges(s, 1, KnnMode::kMutual);
  ASSERT_EQ(mutual.size(), 1u);
  EXPECT_EQ(mutual[0].to, 1u);
}

TEST(Knn, EquallySpacedTiesGoToSmallerIndex) {
  const auto s = equator(3);
  const auto edges = knn_edges(s, 1);
  EXPECT_GE(edges.size(), 2u);
  for (const auto& e : edges) EXPECT_LT(e.from, e.to);
}

TEST(Knn, CompleteGraphAndTwoStations) {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> lat(-80.0, 80.0);
  std::uniform_real_distribution<double> lon(-170.0, 170.0);
  std::vector<StationCoord> s;
  for (int i = 0; i < 7; ++i) s.push_back(StationCoord::from_degrees(lat(rng), lon(rng)));
  EXPECT_EQ(knn_edges(s, 6).size(), 21u);
  const std::vector<StationCoord> two(s.begin(), s.begin() + 2);
  EXPECT_EQ(knn_edges(two, 1).size(), 1u);
}

TEST(Knn, Errors) {
  std::vector<StationCoord> s = equator(4);
  EXPECT_THROW(knn_edges(s, 0), ParameterError);
  EXPECT_THROW(knn_edges(s, 4), ParameterError);
  s[2] = s[0];
  EXPECT_THROW(knn_edges(s, 2), AmbiguousNeighborError);
}

TEST(GaussianWeights, SingleEdgeIsOne) {
  for (double d : {0.01, 0.5, 2.0}) {
    const std::vector<StationEdge> e{{0, 1, d}};
    EXPECT_EQ(gaussian_weights(2, e, 0.3).weights()(0, 1), 1.0);
  }
}

TEST(GaussianWeights, StarHandComputed) {
  const double d = 0.4;
  const double sigma2 = 0.25;
  const std::vector<StationEdge> e{{0, 1, d}, {0, 2, d}};
  const Graph g = gaussian_weights(3, e, sigma2);
  const double k = std::exp(-d * d / sigma2);
  const double expected = k / (std::sqrt(2.0 * k) * std::sqrt(k));
  EXPECT_NEAR(g.weights()(0, 1), expected, 1e-12);
  EXPECT_NEAR(g.weights()(0, 2), 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_EQ(g.weights()(1, 2), 0.0);
}

TEST(GaussianWeights, FarEdgeDecays) {
  const std::vector<StationEdge> e{{0, 1, 0.1}, {0, 2, 3.0}};
  const Graph g = gaussian_weights(3, e, 0.05);
  EXPECT_LT(g.weights()(0, 2), 1e-30);
}

TEST(GaussianWeights, Errors) {
  const std::vector<StationEdge> e{{0, 1, 0.1}};
  EXPECT_THROW(gaussian_weights(3, e, 1.0), DegenerateNormalizationError);
  EXPECT_THROW(gaussian_weights(2, e, 0.0), ParameterError);
}

TEST(StationGraph, TwoStations) {
  const std::vector<StationCoord> s{StationCoord::from_degrees(10, 10), StationCoord::from_degrees(11, 12)};
  KnnConfig cfg;
  cfg.k = 1;
  const Graph g = build_station_graph(s, cfg);
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(g.weights()(0, 1), 1.0);
}

TEST(StationGraph, EquatorRingHasEqualWeights) {
  KnnConfig cfg;
  cfg.k = 2;
  const Graph g = build_station_graph(equator(6), cfg);
  const auto edges = g.edges();
  ASSERT_FALSE(edges.empty());
  for (const auto& e : edges) EXPECT_NEAR(e.weight, edges.front().weight, 1e-12);
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_EQ((g.weights().row(static_cast<Eigen::Index>(i)).array() > 0.0).count(), 2);
  }
}

TEST(StationGraph, PropertySymmetricNonNegative) {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> lat(-60.0, 70.0);
  std::uniform_real_distribution<double> lon(-180.0, 180.0);
  std::vector<StationCoord> s;
  for (int i = 0; i < 200; ++i) s.push_back(StationCoord::from_degrees(lat(rng), lon(rng)));
  const Graph g = build_station_graph(s, KnnConfig{});
  const Eigen::MatrixXd& w = g.weights();
  EXPECT_EQ(w, w.transpose());
  EXPECT_GE(w.minCoeff(), 0.0);
  for (Eigen::Index i = 0; i < w.rows(); ++i) EXPECT_GE((w.row(i).array() > 0.0).count(), 5);
}

TEST(StationCsv, RoundTrip) {
  const auto s = stations_from_csv("id,lat_deg,lon_deg\nA,10.5,-20\nB,-33,151.25\n");
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[1].id, "B");
  const auto back = stations_from_csv(stations_to_csv(s));
  EXPECT_NEAR(back[1].theta, s[1].theta, 1e-15);
  EXPECT_NEAR(back[1].phi, s[1].phi, 1e-15);
  EXPECT_THROW(stations_from_csv("A,95,0\n"), ParseError);
}
