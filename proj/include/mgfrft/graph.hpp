#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "mgfrft/linalg.hpp"

namespace mgfrft {

struct Edge {
  std::size_t from = 0;
  std::size_t to = 0;
  double weight = 1.0;
};

/// Weighted graph with a dense weight matrix.
///
/// Undirected graphs must have a symmetric, non-negative weight matrix with a
/// zero diagonal (no self-loops). Directed graphs accept any finite weights.
class Graph {
 public:
  Graph(Eigen::MatrixXd weights, bool directed);

  /// Undirected edge lists name each edge once; a repeated pair is an error.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges, bool directed);

  std::size_t size() const { return static_cast<std::size_t>(weights_.rows()); }
  const Eigen::MatrixXd& weights() const { return weights_; }
  bool directed() const { return directed_; }

  /// Non-zero entries; for undirected graphs only pairs with from < to.
  std::vector<Edge> edges() const;
  std::size_t edge_count() const { return edges().size(); }

 private:
  Eigen::MatrixXd weights_;
  bool directed_;
};

/// Cartesian product G1 x ... x Gm. Factor order is significant.
class ProductGraph {
 public:
  explicit ProductGraph(std::vector<Graph> factors);

  const std::vector<Graph>& factors() const { return factors_; }
  std::size_t order() const { return factors_.size(); }
  std::vector<std::size_t> dims() const;
  std::size_t node_count() const;

 private:
  std::vector<Graph> factors_;
};

using MultiIndex = std::vector<std::size_t>;

/// Row-major flat index: (n1, ..., nm) -> n1*(N2...Nm) + ... + nm.
std::size_t flat_index(std::span<const std::size_t> dims, std::span<const std::size_t> index);
MultiIndex unflatten(std::span<const std::size_t> dims, std::size_t flat);
std::size_t element_count(std::span<const std::size_t> dims);

/// D - W. Throws UnsupportedGraphError for directed graphs.
Eigen::MatrixXd laplacian(const Graph& g);

/// W1 (x) I_{N2} + I_{N1} (x) W2. Indexes product vertices row-major
/// (n1 * N2 + n2).
template <typename Derived1, typename Derived2>
auto kronecker_sum_adjacency(const Eigen::MatrixBase<Derived1>& w1,
                             const Eigen::MatrixBase<Derived2>& w2);

/// I_{N2} (x) L1 + L2 (x) I_{N1}. Note the reversed Kronecker order relative
/// to kronecker_sum_adjacency: product vertices are indexed column-major
/// (n2 * N1 + n1). Use column_to_row_major to move into the canonical layout.
template <typename Derived1, typename Derived2>
auto kronecker_sum_laplacian(const Eigen::MatrixBase<Derived1>& l1,
                             const Eigen::MatrixBase<Derived2>& l2);

/// p[row_major_index] = column_major_index for a product of the given dims.
std::vector<std::size_t> row_to_column_major(std::span<const std::size_t> dims);

/// Re-indexes a product-graph operator from column-major (first factor
/// fastest) vertex order to the canonical row-major order.
template <typename Derived>
auto column_to_row_major(const Eigen::MatrixBase<Derived>& m, std::span<const std::size_t> dims);

Graph build_path(std::size_t n);
Graph build_cycle(std::size_t n);
/// P_rows x P_cols with node (r, c) at index r * cols + c.
Graph build_grid(std::size_t rows, std::size_t cols);

/// Left fold of kronecker_sum_laplacian over the factors, in that
/// function's column-major vertex order.
Eigen::MatrixXd product_laplacian(const ProductGraph& pg);
/// product_laplacian permuted to row-major vertex order.
Eigen::MatrixXd product_laplacian_row_major(const ProductGraph& pg);
/// Left fold of kronecker_sum_adjacency (row-major).
Eigen::MatrixXd product_adjacency(const ProductGraph& pg);

// ---------------------------------------------------------------------------

namespace detail {
void require_square_operand(Eigen::Index rows, Eigen::Index cols);
void require_operand_size(Eigen::Index rows, std::size_t expected);
}  // namespace detail

template <typename Derived1, typename Derived2>
auto kronecker_sum_adjacency(const Eigen::MatrixBase<Derived1>& w1,
                             const Eigen::MatrixBase<Derived2>& w2) {
  detail::require_square_operand(w1.rows(), w1.cols());
  detail::require_square_operand(w2.rows(), w2.cols());
  using S1 = typename Derived1::Scalar;
  using S2 = typename Derived2::Scalar;
  using M1 = Eigen::Matrix<S1, Eigen::Dynamic, Eigen::Dynamic>;
  using M2 = Eigen::Matrix<S2, Eigen::Dynamic, Eigen::Dynamic>;
  return (kron(w1, M2::Identity(w2.rows(), w2.rows())) +
          kron(M1::Identity(w1.rows(), w1.rows()), w2))
      .eval();
}

template <typename Derived1, typename Derived2>
auto kronecker_sum_laplacian(const Eigen::MatrixBase<Derived1>& l1,
                             const Eigen::MatrixBase<Derived2>& l2) {
  detail::require_square_operand(l1.rows(), l1.cols());
  detail::require_square_operand(l2.rows(), l2.cols());
  using S1 = typename Derived1::Scalar;
  using S2 = typename Derived2::Scalar;
  using M1 = Eigen::Matrix<S1, Eigen::Dynamic, Eigen::Dynamic>;
  using M2 = Eigen::Matrix<S2, Eigen::Dynamic, Eigen::Dynamic>;
  return (kron(M2::Identity(l2.rows(), l2.rows()), l1) +
          kron(l2, M1::Identity(l1.rows(), l1.rows())))
      .eval();
}

template <typename Derived>
auto column_to_row_major(const Eigen::MatrixBase<Derived>& m, std::span<const std::size_t> dims) {
  const auto p = row_to_column_major(dims);
  const auto n = static_cast<Eigen::Index>(p.size());
  detail::require_square_operand(m.rows(), m.cols());
  detail::require_operand_size(m.rows(), p.size());
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      out(i, j) = m(static_cast<Eigen::Index>(p[static_cast<std::size_t>(i)]),
                    static_cast<Eigen::Index>(p[static_cast<std::size_t>(j)]));
    }
  }
  return out;
}

}  // namespace mgfrft
