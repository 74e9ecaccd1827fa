#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "mgfrft/error.hpp"
#include "mgfrft/graph.hpp"
#include "mgfrft/graph_io.hpp"
#include "oracles.hpp"

using namespace mgfrft;

namespace {

Eigen::MatrixXd swap2() { return (Eigen::MatrixXd(2, 2) << 0, 1, 1, 0).finished(); }

}  // namespace

TEST(Graph, RejectsInvalidUndirectedWeights) {
  Eigen::MatrixXd asym = swap2();
  asym(0, 1) = 2.0;
  EXPECT_THROW(Graph(asym, false), ParameterError);
  Eigen::MatrixXd negative = -swap2();
  EXPECT_THROW(Graph(negative, false), ParameterError);
  Eigen::MatrixXd loop = swap2();
  loop(0, 0) = 1.0;
  EXPECT_THROW(Graph(loop, false), ParameterError);
  EXPECT_THROW(Graph(Eigen::MatrixXd::Zero(2, 3), false), ShapeError);
  EXPECT_THROW(Graph(Eigen::MatrixXd(0, 0), false), ShapeError);
  EXPECT_NO_THROW(Graph(asym, true));
}

TEST(Graph, FromEdgesRejectsDuplicates) {
  const std::vector<Edge> edges{{0, 1, 1.0}, {1, 0, 2.0}};
  EXPECT_THROW(Graph::from_edges(2, edges, false), ParameterError);
  const std::vector<Edge> ok{{0, 1, 0.5}, {1, 2, 2.0}};
  const Graph g = Graph::from_edges(3, ok, false);
  EXPECT_EQ(g.weights()(1, 0), 0.5);
  EXPECT_EQ(g.edge_count(), 2u);
}

TEST(Laplacian, PathP2) {
  const Eigen::MatrixXd l = laplacian(build_path(2));
  EXPECT_EQ(l, (Eigen::MatrixXd(2, 2) << 1, -1, -1, 1).finished());
}

TEST(Laplacian, EdgelessIsZero) {
  EXPECT_TRUE(laplacian(Graph(Eigen::MatrixXd::Zero(3, 3), false)).isZero(0.0));
}

TEST(Laplacian, CycleC4) {
  const Graph c4 = build_cycle(4);
  const Eigen::MatrixXd l = laplacian(c4);
  EXPECT_EQ(l, 2.0 * Eigen::MatrixXd::Identity(4, 4) - c4.weights());
  const Eigen::VectorXd ev = oracle::sym_eigenvalues(l);
  EXPECT_NEAR(ev(0), 0.0, 1e-12);
  EXPECT_NEAR(ev(1), 2.0, 1e-12);
  EXPECT_NEAR(ev(2), 2.0, 1e-12);
  EXPECT_NEAR(ev(3), 4.0, 1e-12);
}

TEST(Laplacian, DirectedIsUnsupported) {
  EXPECT_THROW(laplacian(Graph(swap2(), true)), UnsupportedGraphError);
}

TEST(KroneckerSum, AdjacencyP2P2IsSquareByEdgeEnumeration) {
  const Eigen::MatrixXd w = kronecker_sum_adjacency(swap2(), swap2());
  EXPECT_EQ(w, oracle::product_weights_by_edges({swap2(), swap2()}));
  EXPECT_EQ(w.rowwise().sum(), Eigen::VectorXd::Constant(4, 2.0));
}

TEST(KroneckerSum, TrivialFactors) {
  const Eigen::MatrixXd w1 = laplacian(build_path(3)).cwiseAbs();
  EXPECT_EQ(kronecker_sum_adjacency(w1, Eigen::MatrixXd::Zero(1, 1)), w1);
  const Eigen::MatrixXd w2 = build_cycle(3).weights();
  EXPECT_EQ(kronecker_sum_adjacency(Eigen::MatrixXd::Zero(2, 2), w2),
            Eigen::MatrixXd(kron(Eigen::MatrixXd::Identity(2, 2), w2)));
  const Eigen::MatrixXd l1 = laplacian(build_path(2));
  EXPECT_EQ(kronecker_sum_laplacian(l1, Eigen::MatrixXd::Zero(1, 1)), l1);
}

TEST(KroneckerSum, RejectsNonSquare) {
  EXPECT_THROW(kronecker_sum_adjacency(Eigen::MatrixXd::Zero(2, 3), swap2()), ShapeError);
  EXPECT_THROW(kronecker_sum_laplacian(swap2(), Eigen::MatrixXd::Zero(1, 2)), ShapeError);
}

TEST(KroneckerSum, LaplacianP2P2Spectrum) {
  const Eigen::MatrixXd l = laplacian(build_path(2));
  const Eigen::VectorXd ev = oracle::sym_eigenvalues(kronecker_sum_laplacian(l, l));
  const Eigen::Vector4d expected(0, 2, 2, 4);
  EXPECT_LT((ev - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(KroneckerSum, LaplacianMatchesEdgeEnumerationAfterReordering) {
  const Graph p2 = build_path(2);
  const Graph p3 = build_path(3);
  const std::vector<std::size_t> dims{2, 3};
  const Eigen::MatrixXd sum = kronecker_sum_laplacian(laplacian(p2), laplacian(p3));
  const Eigen::MatrixXd enumerated =
      oracle::laplacian_of(oracle::product_weights_by_edges({p2.weights(), p3.weights()}));
  EXPECT_EQ(Eigen::MatrixXd(column_to_row_major(sum, dims)), enumerated);
  EXPECT_EQ(product_laplacian_row_major(ProductGraph({p2, p3})), enumerated);
}

TEST(KroneckerSum, ProductLaplacianMatchesEnumerationForThreeFactors) {
  std::mt19937_64 rng(7);
  std::vector<Graph> factors;
  std::vector<Eigen::MatrixXd> weights;
  for (std::size_t n : {3, 2, 4}) {
    weights.push_back(oracle::random_connected_weights(n, rng, 0.5));
    factors.emplace_back(weights.back(), false);
  }
  const ProductGraph pg(factors);
  const Eigen::MatrixXd enumerated = oracle::product_weights_by_edges(weights);
  EXPECT_LT((product_laplacian_row_major(pg) - oracle::laplacian_of(enumerated)).cwiseAbs().maxCoeff(),
            1e-14);
  EXPECT_LT((product_adjacency(pg) - enumerated).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Generators, Path) {
  const Graph p1 = build_path(1);
  EXPECT_EQ(p1.size(), 1u);
  EXPECT_EQ(p1.edge_count(), 0u);
  EXPECT_EQ(build_path(365).edge_count(), 364u);
  EXPECT_THROW(build_path(0), ParameterError);
  EXPECT_THROW(build_cycle(2), ParameterError);
}

TEST(Generators, GridTwoByTwoIsC4) {
  const Graph g = build_grid(2, 2);
  // Node order (0,0),(0,1),(1,0),(1,1); the cycle is 0-1-3-2.
  Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(4, 4);
  for (auto [a, b] : std::vector<std::pair<int, int>>{{0, 1}, {1, 3}, {3, 2}, {2, 0}}) {
    expected(a, b) = expected(b, a) = 1.0;
  }
  EXPECT_EQ(g.weights(), expected);
}

TEST(Generators, GridEdgeCount) {
  EXPECT_EQ(build_grid(3, 4).edge_count(), 17u);
  for (std::size_t r = 1; r <= 5; ++r) {
    for (std::size_t c = 1; c <= 5; ++c) {
      EXPECT_EQ(build_grid(r, c).edge_count(), r * (c - 1) + c * (r - 1));
    }
  }
}

TEST(ProductLaplacian, FoldBaseCases) {
  const Graph p3 = build_path(3);
  EXPECT_EQ(product_laplacian(ProductGraph({p3})), laplacian(p3));
  const Graph c4 = build_cycle(4);
  EXPECT_EQ(product_laplacian(ProductGraph({p3, c4})),
            Eigen::MatrixXd(kronecker_sum_laplacian(laplacian(p3), laplacian(c4))));
}

TEST(ProductLaplacian, ThreeP2Spectrum) {
  const Graph p2 = build_path(2);
  const ProductGraph pg({p2, p2, p2});
  EXPECT_EQ(pg.node_count(), 8u);
  const Eigen::VectorXd ev = oracle::sym_eigenvalues(product_laplacian(pg));
  Eigen::VectorXd expected(8);
  expected << 0, 2, 2, 2, 4, 4, 4, 6;
  EXPECT_LT((ev - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ProductGraph, PreservesFactorOrder) {
  const ProductGraph pg({build_path(2), build_path(5), build_cycle(3)});
  EXPECT_EQ(pg.dims(), (std::vector<std::size_t>{2, 5, 3}));
  EXPECT_EQ(pg.node_count(), 30u);
  EXPECT_THROW(ProductGraph({}), ParameterError);
}

TEST(MultiIndex, FlatIndexRoundTripsOverAllIndices) {
  const std::vector<std::size_t> dims{3, 1, 4, 2};
  const std::size_t total = element_count(dims);
  EXPECT_EQ(total, 24u);
  for (std::size_t flat = 0; flat < total; ++flat) {
    const MultiIndex idx = unflatten(dims, flat);
    ASSERT_EQ(idx.size(), dims.size());
    EXPECT_EQ(flat_index(dims, idx), flat);
  }
  EXPECT_THROW(flat_index(dims, MultiIndex{0, 0, 0}), ShapeError);
  EXPECT_THROW(flat_index(dims, MultiIndex{3, 0, 0, 0}), ShapeError);
}

TEST(MultiIndex, RowToColumnMajorIsAPermutation) {
  const std::vector<std::size_t> dims{2, 3, 4};
  auto p = row_to_column_major(dims);
  std::vector<std::size_t> sorted = p;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) EXPECT_EQ(sorted[i], i);
  // (n1, n2, n3) -> n1 + 2 n2 + 6 n3.
  EXPECT_EQ(p[flat_index(dims, MultiIndex{1, 2, 3})], 1u + 2u * 2u + 6u * 3u);
}

TEST(GraphJson, RoundTrip) {
  std::mt19937_64 rng(3);
  const Graph g(oracle::random_connected_weights(6, rng), false);
  const Graph back = graph_from_json(graph_to_json(g));
  EXPECT_FALSE(back.directed());
  EXPECT_EQ(back.weights(), g.weights());

  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(3, 3);
  d(0, 1) = 1.5;
  d(2, 0) = -0.25;
  const Graph directed(d, true);
  const Graph back_d = graph_from_json(graph_to_json(directed));
  EXPECT_TRUE(back_d.directed());
  EXPECT_EQ(back_d.weights(), d);
}

TEST(GraphJson, AcceptsUnweightedEdges) {
  const Graph g = graph_from_json(R"({"n":3,"directed":false,"edges":[[0,1],[1,2]]})");
  EXPECT_EQ(g.weights(), build_path(3).weights());
}

TEST(GraphJson, RejectsMalformed) {
  EXPECT_THROW(graph_from_json("{"), ParseError);
  EXPECT_THROW(graph_from_json(R"({"n":2,"edges":[[0,5]]})"), Error);
  EXPECT_THROW(graph_from_json(R"({"edges":[]})"), ParseError);
}
