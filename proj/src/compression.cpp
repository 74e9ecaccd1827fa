#include "mgfrft/compression.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <json.hpp>

#include "mgfrft/error.hpp"

namespace mgfrft {
namespace {

void require_gamma(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw ParameterError("compression ratio gamma must lie in (0, 1), got " + std::to_string(gamma));
  }
}

void require_same_shape(Eigen::Index a, Eigen::Index b) {
  if (a != b) throw ShapeError("original and compressed signals differ in size");
}

}  // namespace

std::size_t retained_count(double gamma, std::size_t total) {
  require_gamma(gamma);
  const double exact = gamma * static_cast<double>(total);
  const double nearest = std::round(exact);
  const double kept = std::abs(exact - nearest) <= 1e-9 ? nearest : std::ceil(exact);
  return std::clamp<std::size_t>(static_cast<std::size_t>(kept), 1, total);
}

std::vector<std::size_t> retained_indices(const SpectralCoefficients& c, double gamma) {
  const auto total = static_cast<std::size_t>(c.data.size());
  const std::size_t keep = retained_count(gamma, total);
  std::vector<double> magnitude(total);
  for (std::size_t i = 0; i < total; ++i) magnitude[i] = std::abs(c.data(static_cast<Eigen::Index>(i)));
  std::vector<std::size_t> order(total);
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Row-major flat order is lexicographic multi-index order.
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      return magnitude[a] != magnitude[b] ? magnitude[a] > magnitude[b] : a < b;
                    });
  order.resize(keep);
  return order;
}

SpectralCoefficients threshold_coefficients(const SpectralCoefficients& c, double gamma) {
  SpectralCoefficients out = c;
  out.data.setZero();
  for (std::size_t i : retained_indices(c, gamma)) {
    out.data(static_cast<Eigen::Index>(i)) = c.data(static_cast<Eigen::Index>(i));
  }
  return out;
}

double relative_error(const Eigen::Ref<const Eigen::VectorXd>& f,
                      const Eigen::Ref<const Eigen::VectorXd>& f_com) {
  require_same_shape(f.size(), f_com.size());
  const double denominator = f.cwiseAbs().sum();
  if (denominator == 0.0) throw UndefinedMetricError("relative error of an all-zero signal");
  return (f - f_com).cwiseAbs().sum() / denominator;
}

double psnr(const Eigen::Ref<const Eigen::VectorXd>& f, const Eigen::Ref<const Eigen::VectorXd>& f_com,
            PeakReference peak) {
  require_same_shape(f.size(), f_com.size());
  if (f.size() == 0) throw UndefinedMetricError("PSNR of an empty signal");
  const double mse = (f - f_com).squaredNorm() / static_cast<double>(f.size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  const double top = (peak == PeakReference::kCompressed ? f_com : f).cwiseAbs().maxCoeff();
  return 10.0 * std::log10(top * top / mse);
}

CompressionResult compress_coefficients(const ProductSignal& signal,
                                        const SpectralCoefficients& coefficients,
                                        std::span<const FractionalBasis> bases, double gamma,
                                        PeakReference peak) {
  const SpectralCoefficients kept = threshold_coefficients(coefficients, gamma);
  const ProductSignal restored = il_mgfrft(kept, bases);

  const Eigen::VectorXd original = signal.data.real();
  const Eigen::VectorXd real_part = restored.data.real();
  CompressionResult out;
  out.compressed = ProductSignal(restored.dims, real_part);
  out.report.gamma = gamma;
  out.report.alpha = coefficients.alpha;
  out.report.total_count = static_cast<std::size_t>(coefficients.data.size());
  out.report.retained_count = retained_count(gamma, out.report.total_count);
  out.report.re = relative_error(original, real_part);
  out.report.psnr = psnr(original, real_part, peak);
  out.report.imag_residue = restored.data.imag().cwiseAbs().maxCoeff();
  return out;
}

CompressionResult compress_pipeline(const ProductSignal& signal, std::span<const FractionalBasis> bases,
                                    const CompressionConfig& cfg, PeakReference peak) {
  require_gamma(cfg.gamma);
  require_fractional_order(cfg.alpha);
  for (const auto& b : bases) {
    if (b.alpha != cfg.alpha) throw ParameterError("basis order does not match the configured alpha");
  }
  return compress_coefficients(signal, l_mgfrft(signal, bases), bases, cfg.gamma, peak);
}

std::string report_to_json(const CompressionReport& report) {
  nlohmann::ordered_json j;
  j["gamma"] = report.gamma;
  j["alpha"] = report.alpha;
  j["retained"] = report.retained_count;
  j["re"] = report.re;
  if (std::isinf(report.psnr)) {
    j["psnr"] = "inf";
  } else {
    j["psnr"] = report.psnr;
  }
  j["imag_residue"] = report.imag_residue;
  return j.dump(2) + "\n";
}

}  // namespace mgfrft
