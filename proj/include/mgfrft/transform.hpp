#pragma once

#include <cstddef>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mgfrft/graph.hpp"
#include "mgfrft/linalg.hpp"

namespace mgfrft {

/// m-dimensional signal f(n1, ..., nm), stored flat in row-major order.
struct ProductSignal {
  std::vector<std::size_t> dims;
  Eigen::VectorXcd data;

  ProductSignal() = default;
  ProductSignal(std::vector<std::size_t> dims, Eigen::VectorXcd data);
  template <typename Derived>
    requires std::is_same_v<typename Derived::Scalar, double>
  ProductSignal(std::vector<std::size_t> dims, const Eigen::MatrixBase<Derived>& data)
      : ProductSignal(std::move(dims), Eigen::VectorXcd(data.template cast<cdouble>())) {}

  static ProductSignal zeros(std::vector<std::size_t> dims);

  cdouble& operator()(std::span<const std::size_t> index);
  cdouble operator()(std::span<const std::size_t> index) const;
};

enum class SpectrumKind { kLaplacian, kAdjacency };

/// Spectrum indexed by the full multi-index (l1, ..., lm), row-major.
struct SpectralCoefficients {
  std::vector<std::size_t> dims;
  Eigen::VectorXcd data;
  double alpha = 1.0;
  SpectrumKind kind = SpectrumKind::kLaplacian;

  cdouble operator()(std::span<const std::size_t> index) const;
};

/// Multiplies `m` into axis `axis` of the row-major array `data` in place:
/// out[.., a, ..] = sum_b m(a, b) * in[.., b, ..].
void mode_product(const Eigen::MatrixXcd& m, std::span<const std::size_t> dims, std::size_t axis,
                  Eigen::VectorXcd& data);

/// Applies one matrix per axis by successive mode products.
void apply_factorized(std::span<const Eigen::MatrixXcd> factors,
                      std::span<const std::size_t> dims, Eigen::VectorXcd& data);

/// kappa^H * f.
Eigen::VectorXcd sgfrft_1d(const Eigen::VectorXcd& f, const FractionalBasis& basis);
/// kappa * coefficients.
Eigen::VectorXcd isgfrft_1d(const Eigen::VectorXcd& coefficients, const FractionalBasis& basis);

/// Laplacian-based multi-dimensional fractional transform: applies
/// (kappa^(i))^H along axis i. All bases must share one fractional order.
SpectralCoefficients l_mgfrft(const ProductSignal& f, std::span<const FractionalBasis> bases);
/// Inverse of l_mgfrft: applies kappa^(i) along axis i.
ProductSignal il_mgfrft(const SpectralCoefficients& coefficients,
                        std::span<const FractionalBasis> bases);

/// Default cap on the dense product size used by check_factor_eigenrelation.
inline constexpr std::size_t kDenseCap = 4096;

/// || (L_a^(1) (+) ... (+) L_a^(m)) v - (r_l1 + ... + r_lm) v ||_inf with
/// v = kappa_l1 (x) ... (x) kappa_lm, assembled densely.
double check_factor_eigenrelation(std::span<const FractionalBasis> bases, const MultiIndex& index,
                                  std::size_t cap = kDenseCap);

/// Fractional powers of the adjacency eigenvector matrices of each factor.
///
/// Holds B_i = (V_i^-1)^alpha and its exact inverse, both from a single
/// eigendecomposition of V_i^-1, so forward and inverse transforms match.
class AdjacencyTransform {
 public:
  AdjacencyTransform(std::span<const GeneralEigenBasis> bases, double alpha);

  double alpha() const { return alpha_; }
  std::vector<std::size_t> dims() const;
  const std::vector<Eigen::MatrixXcd>& forward_factors() const { return forward_; }
  const std::vector<Eigen::MatrixXcd>& inverse_factors() const { return inverse_; }
  /// Eigenvalues of each V_i^-1 (empty at alpha = 1), used to check that the per-factor principal
  /// powers agree with the principal power of the Kronecker product.
  const std::vector<Eigen::VectorXcd>& factor_eigenvalues() const { return eigenvalues_; }
  /// Branch-cut hits accumulated over all factors.
  std::size_t branch_cut_eigenvalues() const { return branch_cut_; }

  SpectralCoefficients forward(const ProductSignal& f) const;
  ProductSignal inverse(const SpectralCoefficients& coefficients) const;

 private:
  double alpha_;
  std::vector<Eigen::MatrixXcd> forward_;
  std::vector<Eigen::MatrixXcd> inverse_;
  std::vector<Eigen::VectorXcd> eigenvalues_;
  std::size_t branch_cut_ = 0;
};

/// True when every sum of eigenvalue arguments across factors stays inside
/// (-pi, pi], i.e. the factored principal power equals the principal power of
/// the full Kronecker product.
bool factored_power_is_principal(const AdjacencyTransform& t);

/// Adjacency-based transform ((V1 (x) ... (x) Vm)^-1)^alpha f, applied factorwise.
SpectralCoefficients a_mgfrft(const ProductSignal& f, std::span<const GeneralEigenBasis> bases,
                              double alpha);
/// Inverse of a_mgfrft: (V1 (x) ... (x) Vm)^alpha f_hat.
ProductSignal ia_mgfrft(const SpectralCoefficients& coefficients,
                        std::span<const GeneralEigenBasis> bases, double alpha);

struct SpectrumRow {
  MultiIndex index;
  /// r_l1 + ... + r_lm (real part for the Laplacian transform).
  double eigsum = 0.0;
  cdouble coefficient;
};

/// One row per multi-index, sorted by eigenvalue sum, then multi-index.
std::vector<SpectrumRow> spectrum_table(const SpectralCoefficients& coefficients,
                                        std::span<const FractionalBasis> bases);

/// Rows whose eigenvalue sum equals the previous row's within `tol`; these
/// would collide on a one-dimensional frequency axis.
std::size_t count_duplicate_eigsums(std::span<const SpectrumRow> table, double tol = 1e-12);

/// Eigenvalue sum r_l1 + ... + r_lm for one multi-index (real part).
double eigenvalue_sum(std::span<const FractionalBasis> bases, const MultiIndex& index);

/// max |(L1 (+) ... (+) Lm)^alpha - (L1^alpha (+) ... (+) Lm^alpha)| in
/// row-major vertex order, where X^alpha is the fractional Laplacian
/// operator kappa R kappa^H of X. Zero at alpha = 1; generally positive below.
double fractionalization_gap(const ProductGraph& pg, double alpha, std::size_t cap = kDenseCap);

/// Fractional bases of every factor Laplacian.
std::vector<FractionalBasis> laplacian_bases(const ProductGraph& pg, double alpha);

}  // namespace mgfrft
