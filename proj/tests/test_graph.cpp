// Apache License, Version 2.0, refer to LICENSE.txt
#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "netgen/error.hpp"
#include "netgen/graph.hpp"
#include "netgen/graph_io.hpp"
#include "netgen/rng.hpp"
#include "oracles.hpp"

using namespace netgen;

namespace {

DirectedGraph random_graph(std::size_t n, double p, Rng& rng) {
  DirectedGraph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && bernoulli(rng, p)) g.set_edge(i, j, true);
  return g;
}

DirectedGraph relabel(const DirectedGraph& g, const std::vector<std::size_t>& perm) {
  DirectedGraph h(g.n_nodes());
  for (auto [i, j] : g.edges()) h.set_edge(perm[i], perm[j], true);
  return h;
}

}  // namespace

TEST(DirectedGraph, BasicInvariants) {
  DirectedGraph g(4);
  EXPECT_EQ(g.dyad_count(), 12u);
  EXPECT_EQ(g.edge_count(), 0u);
  g.set_edge(0, 1, true);
  g.set_edge(0, 1, true);
  g.toggle_edge(2, 1);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_EQ(g.in_degree(1), 2u);
  EXPECT_EQ(g.out_degree(0), 1u);
  EXPECT_THROW(g.set_edge(2, 2, true), InvalidArgument);
  EXPECT_THROW(g.set_edge(0, 4, true), InvalidArgument);
  EXPECT_THROW(DirectedGraph(0), InvalidArgument);
  const auto adj = g.adjacency();
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(adj[i * 4 + i], 0);
}

TEST(DirectedGraph, FromEdgesValidates) {
  const std::vector<Edge> loop{{1, 1}};
  const std::vector<Edge> out_of_range{{0, 3}};
  EXPECT_THROW(DirectedGraph::from_edges(3, loop), InvalidArgument);
  EXPECT_THROW(DirectedGraph::from_edges(3, out_of_range), InvalidArgument);
  const std::vector<Edge> ok{{2, 0}, {0, 1}};
  const auto g = DirectedGraph::from_edges(3, ok);
  EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 1}, {2, 0}}));
}

TEST(GraphSet, RequiresCommonSize) {
  EXPECT_THROW(GraphSet({}), InvalidArgument);
  EXPECT_THROW(GraphSet({DirectedGraph(3), DirectedGraph(4)}), InvalidArgument);
  GraphSet s({DirectedGraph(3), DirectedGraph(3)});
  EXPECT_EQ(s.size(), 2u);
  EXPECT_EQ(s.n_nodes(), 3u);
}

TEST(DyadVector, EmptyAndCompleteAtThreeNodes) {
  EXPECT_EQ(to_dyad_vector(DirectedGraph(3)).values, std::vector<std::uint8_t>(6, 0));
  EXPECT_EQ(to_dyad_vector(DirectedGraph::complete(3)).values, std::vector<std::uint8_t>(6, 1));
}

TEST(DyadVector, SingleEdgeZeroToTwo) {
  // Row-major without the diagonal: (0,1) (0,2) (1,0) (1,2) (2,0) (2,1).
  DirectedGraph g(3);
  g.set_edge(0, 2, true);
  const auto v = to_dyad_vector(g).values;
  EXPECT_EQ(v, (std::vector<std::uint8_t>{0, 1, 0, 0, 0, 0}));
  EXPECT_EQ(dyad_index(3, 0, 2), 1u);
}

TEST(DyadVector, IndexAndEndpointsAreInverse) {
  for (std::size_t n = 2; n <= 7; ++n) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        EXPECT_EQ(dyad_index(n, i, j), k);
        EXPECT_EQ(dyad_endpoints(n, k), (Edge{i, j}));
        ++k;
      }
    }
    EXPECT_EQ(nodes_for_dyads(n * (n - 1)), n);
  }
  EXPECT_THROW(nodes_for_dyads(5), InvalidArgument);
}

TEST(DyadVector, RoundTripAllGraphsAtThreeNodes) {
  for (std::uint64_t code = 0; code < 64; ++code) {
    const auto g = oracle::to_graph(oracle::graph_from_code(3, code));
    EXPECT_EQ(from_dyad_vector(to_dyad_vector(g)), g);
  }
}

TEST(DyadVector, RoundTripRandomGraphsUpToFive) {
  Rng rng = make_rng(11);
  for (std::size_t n = 1; n <= 5; ++n) {
    for (int rep = 0; rep < 50; ++rep) {
      const auto g = random_graph(n, 0.4, rng);
      EXPECT_EQ(from_dyad_vector(to_dyad_vector(g)), g);
    }
  }
}

TEST(DyadVector, RejectsBadVectors) {
  EXPECT_THROW(from_dyad_vector(DyadVector{3, std::vector<std::uint8_t>(5, 0)}), InvalidArgument);
  EXPECT_THROW(from_dyad_vector(DyadVector{3, std::vector<std::uint8_t>{0, 2, 0, 0, 0, 0}}),
               InvalidArgument);
}

TEST(MeanInDegree, Examples) {
  EXPECT_DOUBLE_EQ(mean_in_degree(DirectedGraph(5)), 0.0);
  EXPECT_DOUBLE_EQ(mean_in_degree(DirectedGraph::complete(4)), 3.0);
  const std::vector<Edge> e{{0, 1}, {2, 1}};
  EXPECT_DOUBLE_EQ(mean_in_degree(DirectedGraph::from_edges(3, e)), 2.0 / 3.0);
}

TEST(MeanClustering, Examples) {
  EXPECT_DOUBLE_EQ(mean_clustering(DirectedGraph::complete(4)), 1.0);
  const std::vector<Edge> cycle{{0, 1}, {1, 2}, {2, 0}};
  EXPECT_DOUBLE_EQ(mean_clustering(DirectedGraph::from_edges(3, cycle)), 1.0);
  const std::vector<Edge> star{{0, 1}, {0, 2}, {0, 3}};
  EXPECT_DOUBLE_EQ(mean_clustering(DirectedGraph::from_edges(4, star)), 0.0);
  // Triangle 0-1-2 plus pendant 3 on node 0: cc = (1/3, 1, 1, 0) -> 7/12.
  const std::vector<Edge> tri{{0, 1}, {1, 2}, {2, 0}, {3, 0}};
  EXPECT_DOUBLE_EQ(mean_clustering(DirectedGraph::from_edges(4, tri)), 7.0 / 12.0);
  EXPECT_DOUBLE_EQ(mean_clustering(DirectedGraph(1)), 0.0);
}

TEST(Statistics, BoundsAndRelabelingInvariance) {
  Rng rng = make_rng(5);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 2 + uniform_index(rng, 7);
    const auto g = random_graph(n, uniform01(rng), rng);
    const double d = mean_in_degree(g), c = mean_clustering(g);
    EXPECT_GE(d, 0.0);
    EXPECT_LE(d, static_cast<double>(n - 1));
    EXPECT_EQ(d * static_cast<double>(n), static_cast<double>(g.edge_count()));
    EXPECT_GE(c, 0.0);
    EXPECT_LE(c, 1.0);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto h = relabel(g, perm);
    EXPECT_DOUBLE_EQ(mean_in_degree(h), d);
    EXPECT_NEAR(mean_clustering(h), c, 1e-12);
  }
}

TEST(GraphIo, RoundTrip) {
  Rng rng = make_rng(3);
  std::vector<DirectedGraph> graphs;
  for (int k = 0; k < 10; ++k) graphs.push_back(random_graph(6, 0.3, rng));
  GraphSet set(graphs);
  std::stringstream buf;
  write_graphset(buf, set);
  EXPECT_EQ(read_graphset(buf), set);
}

TEST(GraphIo, WriterFormat) {
  const std::vector<Edge> e{{2, 0}, {0, 1}};
  GraphSet set({DirectedGraph::from_edges(3, e)});
  std::ostringstream out;
  write_graphset(out, set);
  EXPECT_EQ(out.str(), "graphset 1 1 3\ngraph 2\n0 1\n2 0\n");
}

TEST(GraphIo, ReaderAcceptsAnyEdgeOrder) {
  std::istringstream in("graphset 1 1 3\ngraph 2\n2 0\n0 1\n");
  const auto set = read_graphset(in);
  EXPECT_TRUE(set[0].has_edge(2, 0));
  EXPECT_TRUE(set[0].has_edge(0, 1));
}

TEST(GraphIo, ReaderRejectsMalformedInput) {
  const char* bad[] = {
      "graphset 2 1 3\ngraph 0\n",           // version
      "graphset 1 1 3\ngraph 1\n1 1\n",      // self-loop
      "graphset 1 1 3\ngraph 2\n0 1\n0 1\n", // duplicate
      "graphset 1 1 3\ngraph 1\n0 3\n",      // out of range
      "graphset 1 2 3\ngraph 0\n",           // truncated
      "graphset 1 1 3\ngraph 1\n0 1 2\n",    // trailing token
      "nonsense\n",
  };
  for (const char* text : bad) {
    std::istringstream in(text);
    EXPECT_THROW(read_graphset(in), ParseError) << text;
  }
}

TEST(GraphIo, MissingFileIsIoError) {
  EXPECT_THROW(load_graphset("/nonexistent/graphs.txt"), IoError);
}
