#include "mgfrft/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include <lapacke.h>

#include "mgfrft/error.hpp"

namespace mgfrft {
namespace {

constexpr double kSignificant = 1e-12;
// Phase anchors in a unit-norm eigenvector must stand well above rounding noise.
constexpr double kPhaseAnchor = 1e-8;

double max_abs(const Eigen::MatrixXcd& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

void require_square(Eigen::Index rows, Eigen::Index cols, const char* what) {
  if (rows != cols || rows == 0) {
    std::ostringstream msg;
    msg << what << ": expected a non-empty square matrix, got " << rows << "x" << cols;
    throw ShapeError(msg.str());
  }
}

// Order columns of one eigenvalue cluster lexicographically descending.
bool lex_greater(const Eigen::MatrixXd& m, Eigen::Index a, Eigen::Index b) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (m(i, a) != m(i, b)) return m(i, a) > m(i, b);
  }
  return false;
}

// Eigenvectors of an upper triangular matrix by back substitution, as in
// LAPACK's ztrevc. Near-zero pivots are perturbed; the caller rejects the
// result through the condition number of the eigenvector matrix.
Eigen::MatrixXcd triangular_eigenvectors(const Eigen::MatrixXcd& t, double scale) {
  const Eigen::Index n = t.rows();
  const double small = std::numeric_limits<double>::epsilon() * scale;
  Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    y(k, k) = 1.0;
    for (Eigen::Index i = k - 1; i >= 0; --i) {
      cdouble acc = 0.0;
      for (Eigen::Index p = i + 1; p <= k; ++p) acc += t(i, p) * y(p, k);
      cdouble pivot = t(i, i) - t(k, k);
      if (std::abs(pivot) < small) pivot = small;
      y(i, k) = -acc / pivot;
    }
  }
  return y;
}

std::vector<Eigen::Index> eigenvalue_order(const Eigen::VectorXcd& j, double tol) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(j.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return j(a).real() > j(b).real();
  });
  // Real parts equal up to tol form one cluster, ordered by imaginary part.
  std::size_t start = 0;
  while (start < order.size()) {
    std::size_t end = start + 1;
    while (end < order.size() &&
           j(order[start]).real() - j(order[end]).real() <= tol) {
      ++end;
    }
    std::stable_sort(order.begin() + static_cast<std::ptrdiff_t>(start),
                     order.begin() + static_cast<std::ptrdiff_t>(end),
                     [&](Eigen::Index a, Eigen::Index b) {
                       return j(a).imag() > j(b).imag();
                     });
    start = end;
  }
  return order;
}

}  // namespace

void require_fractional_order(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    std::ostringstream msg;
    msg << "fractional order must lie in (0, 1], got " << alpha;
    throw ParameterError(msg.str());
  }
}

SymmetricEigenBasis eig_sym(const Eigen::MatrixXd& a) {
  require_square(a.rows(), a.cols(), "eig_sym");
  if (!a.allFinite()) throw NumericalError("eig_sym: input contains non-finite entries");
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * scale) {
    std::ostringstream msg;
    msg << "eig_sym: input is not symmetric (max |a - a^T| = " << asym << ")";
    throw ShapeError(msg.str());
  }

  const auto n = static_cast<lapack_int>(a.rows());
  Eigen::MatrixXd chi = a;
  Eigen::VectorXd lambdas(n);
  const lapack_int info =
      LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'U', n, chi.data(), n, lambdas.data());
  if (info != 0) {
    std::ostringstream msg;
    msg << "eig_sym: dsyevd failed (info = " << info << ")";
    if (info > 0) {
      // Best-effort residual from whatever the solver left behind.
      const double residual =
          (a * chi - chi * lambdas.asDiagonal()).cwiseAbs().maxCoeff();
      msg << ", residual " << residual;
    }
    throw NumericalError(msg.str());
  }

  for (Eigen::Index c = 0; c < chi.cols(); ++c) {
    for (Eigen::Index r = 0; r < chi.rows(); ++r) {
      if (std::abs(chi(r, c)) > kSignificant) {
        if (chi(r, c) < 0.0) chi.col(c) *= -1.0;
        break;
      }
    }
  }

  const double tie = kSignificant * std::max(1.0, lambdas.cwiseAbs().maxCoeff());
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index end = start + 1;
    while (end < n && lambdas(end) - lambdas(start) <= tie) ++end;
    if (end - start > 1) {
      std::vector<Eigen::Index> cols(static_cast<std::size_t>(end - start));
      std::iota(cols.begin(), cols.end(), start);
      std::stable_sort(cols.begin(), cols.end(), [&](Eigen::Index x, Eigen::Index y) {
        return lex_greater(chi, x, y);
      });
      Eigen::MatrixXd block(chi.rows(), end - start);
      for (std::size_t i = 0; i < cols.size(); ++i) {
        block.col(static_cast<Eigen::Index>(i)) = chi.col(cols[i]);
      }
      chi.middleCols(start, end - start) = block;
    }
    start = end;
  }
  return {std::move(chi), std::move(lambdas)};
}

GeneralEigenBasis eig_general(const Eigen::MatrixXcd& a) {
  require_square(a.rows(), a.cols(), "eig_general");
  if (!a.allFinite()) throw NumericalError("eig_general: input contains non-finite entries");
  const Eigen::Index n = a.rows();
  const double scale = std::max(max_abs(a), std::numeric_limits<double>::min());

  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(a, true);
  if (schur.info() != Eigen::Success) {
    throw NumericalError("eig_general: Schur decomposition did not converge");
  }
  const Eigen::MatrixXcd& t = schur.matrixT();
  Eigen::VectorXcd j = t.diagonal();

  double off_diagonal = 0.0;
  for (Eigen::Index c = 1; c < n; ++c) {
    for (Eigen::Index r = 0; r < c; ++r) off_diagonal = std::max(off_diagonal, std::abs(t(r, c)));
  }
  // A normal matrix has a diagonal Schur form and its Schur vectors are eigenvectors.
  const bool normal = off_diagonal <= 1e-10 * scale;
  Eigen::MatrixXcd v = normal ? Eigen::MatrixXcd(schur.matrixU())
                              : Eigen::MatrixXcd(schur.matrixU() * triangular_eigenvectors(t, scale));

  const double tol = kSignificant * scale;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (std::abs(j(k).imag()) <= tol) j(k) = cdouble(j(k).real(), 0.0);
  }

  const auto order = eigenvalue_order(j, tol);
  GeneralEigenBasis out;
  out.j.resize(n);
  out.v.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.j(k) = j(order[static_cast<std::size_t>(k)]);
    out.v.col(k) = v.col(order[static_cast<std::size_t>(k)]);
  }

  Eigen::Index first_fallback = -1;
  for (Eigen::Index c = 0; c < n; ++c) {
    auto col = out.v.col(c);
    const double norm = col.norm();
    if (norm == 0.0) throw NonDiagonalizableError("eig_general: zero eigenvector");
    col /= norm;
    Eigen::Index anchor = c;
    if (std::abs(col(c)) <= kPhaseAnchor) {
      anchor = 0;
      while (anchor < n && std::abs(col(anchor)) <= kPhaseAnchor) ++anchor;
      if (first_fallback < 0) first_fallback = c;
    }
    const cdouble phase = col(anchor) / std::abs(col(anchor));
    col *= std::conj(phase);
    col(anchor) = cdouble(col(anchor).real(), 0.0);
  }
  if (first_fallback >= 0 && out.v.imag().cwiseAbs().maxCoeff() <= kSignificant) {
    const cdouble det = out.v.partialPivLu().determinant();
    if (det.real() < 0.0) out.v.col(first_fallback) *= -1.0;
  }

  if (normal) {
    out.v_inv = out.v.adjoint();
    out.condition = 1.0;
    out.unitary = true;
  } else {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(out.v);
    const auto& s = svd.singularValues();
    const double smallest = s(n - 1);
    out.condition = smallest > 0.0 ? s(0) / smallest : std::numeric_limits<double>::infinity();
    if (!(out.condition <= kDefectiveCondition)) {
      std::ostringstream msg;
      msg << "eig_general: eigenvector matrix has condition number " << out.condition
          << " (limit " << kDefectiveCondition << "); matrix treated as defective";
      throw NonDiagonalizableError(msg.str());
    }
    out.v_inv = out.v.partialPivLu().inverse();
  }
  return out;
}

GeneralEigenBasis eig_general(const Eigen::MatrixXd& a) {
  return eig_general(Eigen::MatrixXcd(a.cast<cdouble>()));
}

cdouble principal_pow(cdouble z, double alpha) {
  if (z == cdouble(0.0, 0.0)) return {0.0, 0.0};
  // std::log maps a signed -0 imaginary part to arg -pi; pin the cut to +pi.
  if (z.imag() == 0.0) z = cdouble(z.real(), 0.0);
  return std::exp(alpha * std::log(z));
}

PrincipalPower::PrincipalPower(const Eigen::MatrixXcd& a, double alpha)
    : alpha_(alpha), basis_((require_fractional_order(alpha), eig_general(a))) {
  const Eigen::Index n = basis_.size();
  powered_.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const cdouble z = basis_.j(k);
    if (z.real() < 0.0 && z.imag() == 0.0) ++diagnostics_.branch_cut_eigenvalues;
    powered_(k) = principal_pow(z, alpha);
  }
  if (alpha == 1.0) {
    power_ = a;
  } else {
    power_ = basis_.v * powered_.asDiagonal() * basis_.v_inv;
  }
}

Eigen::MatrixXcd PrincipalPower::inverse() const {
  Eigen::VectorXcd reciprocal(powered_.size());
  for (Eigen::Index k = 0; k < powered_.size(); ++k) {
    if (powered_(k) == cdouble(0.0, 0.0)) {
      throw NumericalError("PrincipalPower::inverse: matrix has a zero eigenvalue");
    }
    reciprocal(k) = 1.0 / powered_(k);
  }
  return basis_.v * reciprocal.asDiagonal() * basis_.v_inv;
}

Eigen::MatrixXcd matrix_power(const Eigen::MatrixXcd& a, double alpha,
                              PowerDiagnostics* diagnostics) {
  require_fractional_order(alpha);
  require_square(a.rows(), a.cols(), "matrix_power");
  if (alpha == 1.0) {
    if (diagnostics != nullptr) *diagnostics = {};
    return a;
  }
  PrincipalPower p(a, alpha);
  if (diagnostics != nullptr) *diagnostics = p.diagnostics();
  return p.power();
}

Eigen::MatrixXcd matrix_power(const Eigen::MatrixXd& a, double alpha,
                              PowerDiagnostics* diagnostics) {
  return matrix_power(Eigen::MatrixXcd(a.cast<cdouble>()), alpha, diagnostics);
}

Eigen::MatrixXcd FractionalBasis::fractional_operator() const {
  return kappa * r.asDiagonal() * kappa.adjoint();
}

FractionalBasis fractional_basis(const SymmetricEigenBasis& basis, double alpha) {
  require_fractional_order(alpha);
  FractionalBasis out;
  out.alpha = alpha;
  if (alpha == 1.0) {
    out.kappa = basis.chi.cast<cdouble>();
    out.r = basis.lambdas.cast<cdouble>();
    return out;
  }
  out.kappa = matrix_power(basis.chi, alpha, &out.diagnostics);
  const double zero = kSignificant * std::max(1.0, basis.lambdas.cwiseAbs().maxCoeff());
  out.r.resize(basis.size());
  for (Eigen::Index k = 0; k < basis.size(); ++k) {
    const double lambda = basis.lambdas(k);
    if (std::abs(lambda) <= zero) {
      out.r(k) = 0.0;
    } else if (lambda > 0.0) {
      out.r(k) = std::pow(lambda, alpha);
    } else {
      out.r(k) = principal_pow(cdouble(lambda, 0.0), alpha);
    }
  }
  return out;
}

}  // namespace mgfrft
