#pragma once

// Dense reference computations used only by the tests. None of these reuse
// library code paths beyond plain data types.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "mgfrft/graph.hpp"

namespace oracle {

using cdouble = std::complex<double>;

/// Kronecker product by explicit index arithmetic.
inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    for (Eigen::Index j = 0; j < out.cols(); ++j) {
      out(i, j) = a(i / b.rows(), j / b.cols()) * b(i % b.rows(), j % b.cols());
    }
  }
  return out;
}

inline Eigen::MatrixXcd kron_all(const std::vector<Eigen::MatrixXcd>& ms) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (const auto& m : ms) out = kron(out, m);
  return out;
}

/// Weight matrix of the Cartesian product, row-major vertex order, built
/// from the adjacency rule: two tuples are adjacent iff they differ in
/// exactly one coordinate and that coordinate pair is an edge of its factor.
inline Eigen::MatrixXd product_weights_by_edges(const std::vector<Eigen::MatrixXd>& factors) {
  std::vector<std::size_t> dims;
  std::size_t total = 1;
  for (const auto& w : factors) {
    dims.push_back(static_cast<std::size_t>(w.rows()));
    total *= dims.back();
  }
  auto tuple = [&](std::size_t flat) {
    std::vector<std::size_t> t(dims.size());
    for (std::size_t i = dims.size(); i-- > 0;) {
      t[i] = flat % dims[i];
      flat /= dims[i];
    }
    return t;
  };
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(total),
                                              static_cast<Eigen::Index>(total));
  for (std::size_t u = 0; u < total; ++u) {
    const auto tu = tuple(u);
    for (std::size_t v = 0; v < total; ++v) {
      const auto tv = tuple(v);
      std::size_t differing = 0;
      std::size_t axis = 0;
      for (std::size_t i = 0; i < dims.size(); ++i) {
        if (tu[i] != tv[i]) {
          ++differing;
          axis = i;
        }
      }
      if (differing == 1) {
        out(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v)) =
            factors[axis](static_cast<Eigen::Index>(tu[axis]), static_cast<Eigen::Index>(tv[axis]));
      }
    }
  }
  return out;
}

inline Eigen::MatrixXd laplacian_of(const Eigen::MatrixXd& w) {
  Eigen::MatrixXd l = -w;
  for (Eigen::Index i = 0; i < w.rows(); ++i) l(i, i) += w.row(i).sum();
  return l;
}

/// Ascending eigenvalues from Eigen's own symmetric solver.
inline Eigen::VectorXd sym_eigenvalues(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

/// Closed form of chi^alpha for a 2x2 symmetric orthogonal reflection chi
/// (eigenvalues +1 and -1): P+ + e^{i pi alpha} P-, with P+- = (I +- chi)/2.
inline Eigen::MatrixXcd reflection_power(const Eigen::Matrix2d& chi, double alpha) {
  const Eigen::Matrix2d i2 = Eigen::Matrix2d::Identity();
  const cdouble phase = std::polar(1.0, std::numbers::pi * alpha);
  return ((i2 + chi) / 2.0).cast<cdouble>() + phase * ((i2 - chi) / 2.0).cast<cdouble>();
}

/// Great-circle angle from the dot product of the two unit vectors.
inline double unit_vector_distance(double t1, double p1, double t2, double p2) {
  const Eigen::Vector3d a(std::cos(t1) * std::cos(p1), std::cos(t1) * std::sin(p1), std::sin(t1));
  const Eigen::Vector3d b(std::cos(t2) * std::cos(p2), std::cos(t2) * std::sin(p2), std::sin(t2));
  return std::acos(std::clamp(a.dot(b), -1.0, 1.0));
}

/// Symmetric weight matrix of a random connected graph: a random spanning
/// tree plus extra edges, weights in [0.1, 2].
inline Eigen::MatrixXd random_connected_weights(std::size_t n, std::mt19937_64& rng,
                                                double extra_density = 0.2) {
  std::uniform_real_distribution<double> weight(0.1, 2.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t v = 1; v < n; ++v) {
    const auto u = static_cast<Eigen::Index>(rng() % v);
    const double x = weight(rng);
    w(u, static_cast<Eigen::Index>(v)) = x;
    w(static_cast<Eigen::Index>(v), u) = x;
  }
  for (Eigen::Index i = 0; i < w.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < w.cols(); ++j) {
      if (w(i, j) == 0.0 && coin(rng) < extra_density) {
        const double x = weight(rng);
        w(i, j) = x;
        w(j, i) = x;
      }
    }
  }
  return w;
}

inline Eigen::VectorXd random_vector(Eigen::Index n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = unit(rng);
  return v;
}

/// Principal power through Eigen's complex eigensolver:
/// V diag(exp(alpha Log z)) V^-1 with Arg z in (-pi, pi].
inline Eigen::MatrixXcd principal_matrix_power(const Eigen::MatrixXcd& a, double alpha) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(a);
  Eigen::VectorXcd d = es.eigenvalues();
  for (Eigen::Index k = 0; k < d.size(); ++k) {
    const double arg = std::arg(d(k));
    const double angle = (arg == -std::numbers::pi) ? std::numbers::pi : arg;
    d(k) = std::abs(d(k)) == 0.0 ? cdouble(0.0) : std::polar(std::pow(std::abs(d(k)), alpha), alpha * angle);
  }
  const Eigen::MatrixXcd& v = es.eigenvectors();
  return v * d.asDiagonal() * v.inverse();
}

inline double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace oracle
