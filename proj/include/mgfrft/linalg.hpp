#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace mgfrft {

using cdouble = std::complex<double>;

/// Kronecker product: block (i, j) of the result equals a(i, j) * b.
template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename Eigen::ScalarBinaryOpTraits<typename DerivedA::Scalar,
                                                      typename DerivedB::Scalar>::ReturnType;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(),
                                                            a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
          a(i, j) * b.template cast<Scalar>();
    }
  }
  return out;
}

/// Eigenpairs of a real symmetric matrix.
///
/// `lambdas` are ascending. Each column of `chi` is sign-fixed so that its
/// first entry with magnitude above 1e-12 is positive; columns sharing an
/// eigenvalue (within a relative 1e-12) are ordered lexicographically
/// descending, which turns the identity into itself.
struct SymmetricEigenBasis {
  Eigen::MatrixXd chi;
  Eigen::VectorXd lambdas;

  Eigen::Index size() const { return lambdas.size(); }
};

/// A = v * diag(j) * v_inv for a diagonalizable square matrix.
///
/// Eigenvalues are ordered by descending real part, then descending
/// imaginary part. Columns of `v` have unit norm; the phase makes the
/// diagonal entry v(k, k) real positive when it is non-negligible, otherwise
/// the first non-negligible entry of the column. For a real `v` with negative
/// determinant the first column normalized by the fallback rule is negated.
struct GeneralEigenBasis {
  Eigen::MatrixXcd v;
  Eigen::VectorXcd j;
  Eigen::MatrixXcd v_inv;
  /// 2-norm condition number of v.
  double condition = 1.0;
  /// True when the input was detected as normal and v is unitary.
  bool unitary = false;

  Eigen::Index size() const { return j.size(); }
};

struct PowerDiagnostics {
  /// Eigenvalues found on the negative real axis, mapped to |z|^a * e^{i*pi*a}.
  std::size_t branch_cut_eigenvalues = 0;
};

/// Principal fractional power of a diagonalizable matrix.
///
/// The eigendecomposition is computed once, so both A^alpha and its exact
/// inverse V * diag(j^-alpha) * V^-1 come from the same factors.
class PrincipalPower {
 public:
  PrincipalPower(const Eigen::MatrixXcd& a, double alpha);

  double alpha() const { return alpha_; }
  const GeneralEigenBasis& basis() const { return basis_; }
  const Eigen::MatrixXcd& power() const { return power_; }
  /// (A^alpha)^-1. Throws NumericalError when A has a zero eigenvalue.
  Eigen::MatrixXcd inverse() const;
  /// j_k^alpha under the principal logarithm, in basis order.
  const Eigen::VectorXcd& powered_eigenvalues() const { return powered_; }
  const PowerDiagnostics& diagnostics() const { return diagnostics_; }

 private:
  double alpha_;
  GeneralEigenBasis basis_;
  Eigen::VectorXcd powered_;
  Eigen::MatrixXcd power_;
  PowerDiagnostics diagnostics_;
};

/// Condition number of V above which a matrix is treated as defective.
inline constexpr double kDefectiveCondition = 1e10;

SymmetricEigenBasis eig_sym(const Eigen::MatrixXd& a);

GeneralEigenBasis eig_general(const Eigen::MatrixXcd& a);
GeneralEigenBasis eig_general(const Eigen::MatrixXd& a);

/// z^alpha = exp(alpha * Log z), Log with imaginary part in (-pi, pi]; 0 maps to 0.
cdouble principal_pow(cdouble z, double alpha);

/// Principal power V * diag(j^alpha) * V^-1. At alpha == 1 the input is
/// returned unchanged.
Eigen::MatrixXcd matrix_power(const Eigen::MatrixXcd& a, double alpha,
                              PowerDiagnostics* diagnostics = nullptr);
Eigen::MatrixXcd matrix_power(const Eigen::MatrixXd& a, double alpha,
                              PowerDiagnostics* diagnostics = nullptr);

/// Fractional Laplacian factors kappa = chi^alpha and r = lambda^alpha.
struct FractionalBasis {
  Eigen::MatrixXcd kappa;
  Eigen::VectorXcd r;
  double alpha = 1.0;
  PowerDiagnostics diagnostics;

  Eigen::Index size() const { return r.size(); }
  /// kappa * diag(r) * kappa^H.
  Eigen::MatrixXcd fractional_operator() const;
};

FractionalBasis fractional_basis(const SymmetricEigenBasis& basis, double alpha);

/// Throws ParameterError unless alpha lies in (0, 1].
void require_fractional_order(double alpha);

}  // namespace mgfrft
