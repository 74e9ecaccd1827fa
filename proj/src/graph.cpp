#include "mgfrft/graph.hpp"

#include <sstream>

#include "mgfrft/error.hpp"

namespace mgfrft {

namespace detail {

void require_square_operand(Eigen::Index rows, Eigen::Index cols) {
  if (rows != cols || rows == 0) {
    std::ostringstream msg;
    msg << "expected a non-empty square matrix, got " << rows << "x" << cols;
    throw ShapeError(msg.str());
  }
}

void require_operand_size(Eigen::Index rows, std::size_t expected) {
  if (static_cast<std::size_t>(rows) != expected) {
    std::ostringstream msg;
    msg << "operator has " << rows << " rows but the product has " << expected << " vertices";
    throw ShapeError(msg.str());
  }
}

}  // namespace detail

Graph::Graph(Eigen::MatrixXd weights, bool directed)
    : weights_(std::move(weights)), directed_(directed) {
  if (weights_.rows() == 0 || weights_.rows() != weights_.cols()) {
    std::ostringstream msg;
    msg << "graph weights must be a non-empty square matrix, got " << weights_.rows() << "x"
        << weights_.cols();
    throw ShapeError(msg.str());
  }
  if (!weights_.allFinite()) throw ParameterError("graph weights must be finite");
  if (directed_) return;

  const double scale = std::max(1.0, weights_.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < weights_.rows(); ++i) {
    if (weights_(i, i) != 0.0) {
      throw ParameterError("undirected graph has a self-loop at node " + std::to_string(i));
    }
    for (Eigen::Index j = 0; j < weights_.cols(); ++j) {
      if (weights_(i, j) < 0.0) {
        throw ParameterError("undirected graph has a negative weight");
      }
      if (std::abs(weights_(i, j) - weights_(j, i)) > 1e-12 * scale) {
        throw ParameterError("undirected graph has an asymmetric weight matrix");
      }
    }
  }
}

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges, bool directed) {
  if (n == 0) throw ParameterError("graph must have at least one node");
  const auto size = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(size, size);
  Eigen::MatrixXi seen = Eigen::MatrixXi::Zero(size, size);
  for (const Edge& e : edges) {
    if (e.from >= n || e.to >= n) {
      std::ostringstream msg;
      msg << "edge (" << e.from << ", " << e.to << ") references a node outside [0, " << n << ")";
      throw ParameterError(msg.str());
    }
    const auto i = static_cast<Eigen::Index>(e.from);
    const auto j = static_cast<Eigen::Index>(e.to);
    if (seen(i, j) != 0) {
      std::ostringstream msg;
      msg << "edge (" << e.from << ", " << e.to << ") listed more than once";
      throw ParameterError(msg.str());
    }
    seen(i, j) = 1;
    w(i, j) = e.weight;
    if (!directed) {
      seen(j, i) = 1;
      w(j, i) = e.weight;
    }
  }
  return Graph(std::move(w), directed);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  const Eigen::Index n = weights_.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = directed_ ? 0 : i + 1; j < n; ++j) {
      if (weights_(i, j) != 0.0) {
        out.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), weights_(i, j)});
      }
    }
  }
  return out;
}

ProductGraph::ProductGraph(std::vector<Graph> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw ParameterError("a product graph needs at least one factor");
}

std::vector<std::size_t> ProductGraph::dims() const {
  std::vector<std::size_t> out;
  out.reserve(factors_.size());
  for (const Graph& g : factors_) out.push_back(g.size());
  return out;
}

std::size_t ProductGraph::node_count() const {
  const auto d = dims();
  return element_count(d);
}

std::size_t element_count(std::span<const std::size_t> dims) {
  std::size_t total = 1;
  for (std::size_t d : dims) total *= d;
  return total;
}

std::size_t flat_index(std::span<const std::size_t> dims, std::span<const std::size_t> index) {
  if (index.size() != dims.size()) {
    throw ShapeError("multi-index has " + std::to_string(index.size()) + " entries, expected " +
                     std::to_string(dims.size()));
  }
  std::size_t flat = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (index[i] >= dims[i]) {
      throw ShapeError("multi-index entry " + std::to_string(index[i]) + " out of range for axis " +
                       std::to_string(i));
    }
    flat = flat * dims[i] + index[i];
  }
  return flat;
}

MultiIndex unflatten(std::span<const std::size_t> dims, std::size_t flat) {
  MultiIndex out(dims.size());
  for (std::size_t i = dims.size(); i-- > 0;) {
    out[i] = flat % dims[i];
    flat /= dims[i];
  }
  return out;
}

std::vector<std::size_t> row_to_column_major(std::span<const std::size_t> dims) {
  const std::size_t total = element_count(dims);
  std::vector<std::size_t> p(total);
  for (std::size_t row = 0; row < total; ++row) {
    const MultiIndex idx = unflatten(dims, row);
    std::size_t col = 0;
    for (std::size_t i = dims.size(); i-- > 0;) col = col * dims[i] + idx[i];
    p[row] = col;
  }
  return p;
}

Eigen::MatrixXd laplacian(const Graph& g) {
  if (g.directed()) throw UnsupportedGraphError("the Laplacian is defined for undirected graphs only");
  const Eigen::VectorXd degree = g.weights().rowwise().sum();
  Eigen::MatrixXd l = -g.weights();
  l.diagonal() += degree;
  return l;
}

Graph build_path(std::size_t n) {
  if (n < 1) throw ParameterError("path graph needs n >= 1");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
  return Graph::from_edges(n, edges, false);
}

Graph build_cycle(std::size_t n) {
  if (n < 3) throw ParameterError("cycle graph needs n >= 3");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) edges.push_back({std::min(i, (i + 1) % n), std::max(i, (i + 1) % n), 1.0});
  return Graph::from_edges(n, edges, false);
}

Graph build_grid(std::size_t rows, std::size_t cols) {
  if (rows < 1 || cols < 1) throw ParameterError("grid graph needs rows, cols >= 1");
  std::vector<Edge> edges;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const std::size_t node = r * cols + c;
      if (c + 1 < cols) edges.push_back({node, node + 1, 1.0});
      if (r + 1 < rows) edges.push_back({node, node + cols, 1.0});
    }
  }
  return Graph::from_edges(rows * cols, edges, false);
}

Eigen::MatrixXd product_laplacian(const ProductGraph& pg) {
  Eigen::MatrixXd acc = laplacian(pg.factors().front());
  for (std::size_t i = 1; i < pg.order(); ++i) {
    acc = kronecker_sum_laplacian(acc, laplacian(pg.factors()[i]));
  }
  return acc;
}

Eigen::MatrixXd product_laplacian_row_major(const ProductGraph& pg) {
  const auto d = pg.dims();
  return column_to_row_major(product_laplacian(pg), d);
}

Eigen::MatrixXd product_adjacency(const ProductGraph& pg) {
  Eigen::MatrixXd acc = pg.factors().front().weights();
  for (std::size_t i = 1; i < pg.order(); ++i) {
    acc = kronecker_sum_adjacency(acc, pg.factors()[i].weights());
  }
  return acc;
}

}  // namespace mgfrft
