#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>
#include <json.hpp>

#include "mgfrft/compression.hpp"
#include "mgfrft/error.hpp"
#include "oracles.hpp"

using namespace mgfrft;

namespace {

SpectralCoefficients coefficients(std::vector<cdouble> values) {
  const std::size_t n = values.size();
  return {{n}, Eigen::Map<Eigen::VectorXcd>(values.data(), static_cast<Eigen::Index>(n)), 1.0,
          SpectrumKind::kLaplacian};
}

std::vector<FractionalBasis> path_bases(std::size_t n1, std::size_t n2, double alpha) {
  return {fractional_basis(eig_sym(laplacian(build_path(n1))), alpha),
          fractional_basis(eig_sym(laplacian(build_path(n2))), alpha)};
}

}  // namespace

TEST(RetainedCount, CeilingWithIntegerSnap) {
  EXPECT_EQ(retained_count(0.5, 4), 2u);
  EXPECT_EQ(retained_count(0.95, 10), 10u);
  EXPECT_EQ(retained_count(0.3, 2500), 750u);
  EXPECT_EQ(retained_count(0.02, 73000), 1460u);
  EXPECT_EQ(retained_count(0.001, 10), 1u);
  EXPECT_THROW(retained_count(0.0, 10), ParameterError);
  EXPECT_THROW(retained_count(1.0, 10), ParameterError);
}

TEST(Threshold, KeepsLargest) {
  const auto out = threshold_coefficients(coefficients({4.0, -3.0, 2.0, cdouble(0, 1)}), 0.5);
  EXPECT_EQ(out.data(0), cdouble(4.0));
  EXPECT_EQ(out.data(1), cdouble(-3.0));
  EXPECT_EQ(out.data(2), cdouble(0.0));
  EXPECT_EQ(out.data(3), cdouble(0.0));
}

TEST(Threshold, TiesKeepLowestIndex) {
  const auto out = threshold_coefficients(coefficients({1.0, -1.0, cdouble(0, 1), 1.0}), 0.25);
  EXPECT_EQ(out.data(0), cdouble(1.0));
  EXPECT_EQ(out.data.tail(3), Eigen::VectorXcd::Zero(3));
}

TEST(Threshold, NearOneKeepsEverything) {
  std::vector<cdouble> v;
  for (int i = 0; i < 10; ++i) v.emplace_back(i + 1.0, -i);
  const auto c = coefficients(v);
  EXPECT_EQ(threshold_coefficients(c, 0.95).data, c.data);
}

TEST(Threshold, PropertyNestedRetainedSets) {
  std::mt19937_64 rng(16);
  const auto c = coefficients([&] {
    std::vector<cdouble> v;
    for (int i = 0; i < 200; ++i) v.emplace_back(std::round(oracle::random_vector(1, rng)(0) * 5.0), 0.0);
    return v;
  }());
  std::vector<std::size_t> previous;
  for (double gamma : {0.02, 0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.9}) {
    const auto kept = retained_indices(c, gamma);
    EXPECT_EQ(kept.size(), retained_count(gamma, 200));
    ASSERT_GE(kept.size(), previous.size());
    for (std::size_t i = 0; i < previous.size(); ++i) EXPECT_EQ(kept[i], previous[i]);
    previous = kept;
  }
}

TEST(RelativeError, Examples) {
  const Eigen::Vector2d f(2.0, -2.0);
  EXPECT_EQ(relative_error(f, f), 0.0);
  EXPECT_EQ(relative_error(f, Eigen::Vector2d::Zero()), 1.0);
  EXPECT_EQ(relative_error(f, Eigen::Vector2d(1.0, -2.0)), 0.25);
  EXPECT_THROW(relative_error(Eigen::Vector2d::Zero(), f), UndefinedMetricError);
}

TEST(Psnr, Examples) {
  const Eigen::Vector4d f(1, 1, 1, 1);
  EXPECT_NEAR(psnr(f, Eigen::Vector4d(1, 1, 1, 0)), 10.0 * std::log10(4.0), 1e-12);
  EXPECT_EQ(psnr(f, f), std::numeric_limits<double>::infinity());
  // Peak from the original (2) instead of the compressed signal (1).
  EXPECT_NEAR(psnr(Eigen::Vector2d(2, 0), Eigen::Vector2d(1, 0), PeakReference::kOriginal),
              10.0 * std::log10(4.0 / 0.5), 1e-12);
}

TEST(Pipeline, NearOneIsLossless) {
  std::mt19937_64 rng(17);
  const auto bases = path_bases(6, 5, 0.8);
  const ProductSignal f({6, 5}, oracle::random_vector(30, rng));
  const auto result = compress_pipeline(f, bases, {0.99, 0.8});
  EXPECT_EQ(result.report.retained_count, 30u);
  EXPECT_LT(result.report.re, 1e-12);
  EXPECT_GT(result.report.psnr, 200.0);
}

TEST(Pipeline, RankOneSmoothSignalCompresses) {
  const auto e1 = eig_sym(laplacian(build_path(20)));
  const auto e2 = eig_sym(laplacian(build_path(30)));
  const Eigen::VectorXd u = e1.chi.col(1);
  const Eigen::VectorXd v = e2.chi.col(1);
  Eigen::VectorXd values(600);
  for (Eigen::Index i = 0; i < 20; ++i) values.segment(i * 30, 30) = u(i) * v;
  const std::vector bases{fractional_basis(e1, 1.0), fractional_basis(e2, 1.0)};
  const auto result = compress_pipeline(ProductSignal({20, 30}, values), bases, {0.1, 1.0});
  EXPECT_LT(result.report.re, 0.05);
  EXPECT_EQ(result.report.retained_count, 60u);
}

TEST(Pipeline, PropertyReNonIncreasingInGamma) {
  std::mt19937_64 rng(18);
  for (double alpha : {0.95, 0.85, 0.5}) {
    const auto bases = path_bases(12, 15, alpha);
    const ProductSignal f({12, 15}, oracle::random_vector(180, rng));
    const auto c = l_mgfrft(f, bases);
    double previous = std::numeric_limits<double>::infinity();
    for (double gamma : {0.05, 0.10, 0.20, 0.40, 0.80}) {
      const auto r = compress_coefficients(f, c, bases, gamma).report;
      EXPECT_GE(r.re, 0.0);
      EXPECT_LE(r.re, previous + 1e-12) << "alpha " << alpha << " gamma " << gamma;
      previous = r.re;
    }
  }
}

TEST(Pipeline, RejectsMismatchedOrder) {
  const auto bases = path_bases(3, 3, 0.5);
  const ProductSignal f({3, 3}, Eigen::VectorXd::Ones(9));
  EXPECT_THROW(compress_pipeline(f, bases, {0.5, 0.9}), ParameterError);
}

TEST(ReportJson, InfinitePsnrIsAString) {
  CompressionReport r;
  r.gamma = 0.5;
  r.alpha = 1.0;
  r.retained_count = 2;
  r.total_count = 4;
  r.psnr = std::numeric_limits<double>::infinity();
  const auto j = nlohmann::json::parse(report_to_json(r));
  EXPECT_EQ(j["psnr"], "inf");
  EXPECT_EQ(j["retained"], 2);
  r.psnr = 12.5;
  EXPECT_EQ(nlohmann::json::parse(report_to_json(r))["psnr"], 12.5);
}
