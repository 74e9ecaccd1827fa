#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mgfrft/transform.hpp"

namespace mgfrft {

struct CompressionConfig {
  double gamma = 0.1;  ///< fraction of coefficients kept, (0, 1)
  double alpha = 1.0;  ///< fractional order, (0, 1]
};

/// Which signal supplies the PSNR peak. The default uses the peak of the
/// compressed signal; kOriginal uses the peak of the input instead.
enum class PeakReference { kCompressed, kOriginal };

struct CompressionReport {
  double gamma = 0.0;
  double alpha = 0.0;
  std::size_t retained_count = 0;
  std::size_t total_count = 0;
  double re = 0.0;
  /// +infinity when the reconstruction is exact.
  double psnr = 0.0;
  /// Largest imaginary part discarded from the reconstruction.
  double imag_residue = 0.0;
};

/// ceil(gamma * total), where products within 1e-9 of an integer count as
/// that integer so that e.g. 0.3 * 2500 keeps 750.
std::size_t retained_count(double gamma, std::size_t total);

/// Flat indices kept by threshold_coefficients, in rank order: magnitude
/// descending, ties by multi-index ascending.
std::vector<std::size_t> retained_indices(const SpectralCoefficients& c, double gamma);

/// Keeps the retained_count(gamma, N) largest-magnitude coefficients, zeroes the rest.
SpectralCoefficients threshold_coefficients(const SpectralCoefficients& c, double gamma);

/// sum |f - f_com| / sum |f|. Throws UndefinedMetricError when f is all zero.
double relative_error(const Eigen::Ref<const Eigen::VectorXd>& f,
                      const Eigen::Ref<const Eigen::VectorXd>& f_com);

/// 10 log10(peak^2 / MSE); +infinity when MSE is zero.
double psnr(const Eigen::Ref<const Eigen::VectorXd>& f, const Eigen::Ref<const Eigen::VectorXd>& f_com,
            PeakReference peak = PeakReference::kCompressed);

struct CompressionResult {
  /// Real part of the reconstruction.
  ProductSignal compressed;
  CompressionReport report;
};

/// Forward transform, threshold, inverse transform, real part, metrics.
CompressionResult compress_pipeline(const ProductSignal& signal, std::span<const FractionalBasis> bases,
                                    const CompressionConfig& cfg,
                                    PeakReference peak = PeakReference::kCompressed);

/// Same as compress_pipeline with precomputed forward coefficients, for sweeps.
CompressionResult compress_coefficients(const ProductSignal& signal,
                                        const SpectralCoefficients& coefficients,
                                        std::span<const FractionalBasis> bases, double gamma,
                                        PeakReference peak = PeakReference::kCompressed);

/// {"gamma", "alpha", "retained", "re", "psnr", "imag_residue"}; an infinite
/// PSNR is written as the string "inf".
std::string report_to_json(const CompressionReport& report);

}  // namespace mgfrft
