// Apache License, Version 2.0, refer to LICENSE.txt
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "netgen/config_stats.hpp"
#include "netgen/error.hpp"
#include "netgen/rng.hpp"
#include "oracles.hpp"

using namespace netgen;

namespace {

const std::vector<StatKind> kAllKinds = {
    StatKind::Edges,        StatKind::Reciprocated, StatKind::TwoInStars,
    StatKind::TwoOutStars,  StatKind::TwoMixedStars, StatKind::TransitiveTriads,
    StatKind::GwInDegree,   StatKind::GwOutDegree,  StatKind::TwoPaths,
    StatKind::AltKTriangles, StatKind::AltKPaths};

StatSpec full_spec(double decay) {
  StatSpec spec;
  for (auto k : kAllKinds) spec.push_back({k, decay});
  return spec;
}

void expect_match(double got, double want, StatKind kind, double rel) {
  if (has_decay(kind)) {
    EXPECT_NEAR(got, want, rel * std::max(1.0, std::fabs(want))) << stat_name(kind);
  } else {
    EXPECT_EQ(got, want) << stat_name(kind);
  }
}

std::vector<oracle::Adj> test_graphs() {
  std::vector<oracle::Adj> graphs;
  for (std::uint64_t code = 0; code < 64; ++code) graphs.push_back(oracle::graph_from_code(3, code));
  Rng rng = make_rng(2024);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 4 + uniform_index(rng, 3);
    const double p = uniform01(rng);
    oracle::Adj a(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) a[i][j] = bernoulli(rng, p);
    graphs.push_back(a);
  }
  return graphs;
}

}  // namespace

TEST(StatNames, RoundTrip) {
  for (auto k : kAllKinds) EXPECT_EQ(parse_stat_kind(stat_name(k)), k);
  EXPECT_THROW(parse_stat_kind("triangles"), ParseError);
}

TEST(StatValue, HandExamples) {
  const StatTerm edges{StatKind::Edges}, mutual{StatKind::Reciprocated},
      ttriad{StatKind::TransitiveTriads}, gwin{StatKind::GwInDegree, std::log(2.0)};
  EXPECT_EQ(stat_value(edges, DirectedGraph(5)), 0.0);
  const std::vector<Edge> t{{0, 1}, {1, 2}, {0, 2}};
  EXPECT_EQ(stat_value(ttriad, DirectedGraph::from_edges(3, t)), 1.0);
  EXPECT_EQ(stat_value(mutual, DirectedGraph::complete(3)), 3.0);
  EXPECT_EQ(stat_value(gwin, DirectedGraph(4)), 0.0);
  EXPECT_EQ(stat_vector({edges, mutual}, DirectedGraph::complete(3)), (StatVector{6, 3}));
  const std::vector<Edge> five{{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}};
  EXPECT_EQ(stat_vector({edges}, DirectedGraph::from_edges(4, five)), (StatVector{5}));
  const auto zeros = stat_vector(full_spec(0.7), DirectedGraph(6));
  EXPECT_TRUE(std::all_of(zeros.begin(), zeros.end(), [](double v) { return v == 0.0; }));
}

TEST(StatValue, RejectsNonPositiveDecay) {
  const auto g = DirectedGraph::complete(3);
  EXPECT_THROW(stat_value({StatKind::GwInDegree, 0.0}, g), InvalidArgument);
  EXPECT_THROW(stat_value({StatKind::AltKPaths, -1.0}, g), InvalidArgument);
  EXPECT_THROW(stat_value({StatKind::AltKTriangles, NAN}, g), InvalidArgument);
  EXPECT_NO_THROW(stat_value({StatKind::Edges, -1.0}, g));
}

TEST(StatValue, MatchesBruteForceEnumerator) {
  for (double decay : {std::log(2.0), 0.3, 1.7}) {
    for (const auto& a : test_graphs()) {
      const auto g = oracle::to_graph(a);
      for (auto k : kAllKinds) {
        expect_match(stat_value({k, decay}, g), oracle::stat(std::string(stat_name(k)), a, decay), k,
                     1e-12);
      }
    }
  }
}

TEST(ChangeStats, MatchesBruteForceDifference) {
  const StatSpec spec = full_spec(std::log(2.0));
  for (const auto& a : test_graphs()) {
    const auto g = oracle::to_graph(a);
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        oracle::Adj plus = a, minus = a;
        plus[i][j] = 1;
        minus[i][j] = 0;
        const auto got = change_stats(spec, g, i, j);
        for (std::size_t k = 0; k < spec.size(); ++k) {
          const std::string name(stat_name(spec[k].kind));
          const double want = oracle::stat(name, plus, spec[k].decay) - oracle::stat(name, minus, spec[k].decay);
          expect_match(got[k], want, spec[k].kind, 1e-10);
        }
      }
    }
  }
}

TEST(ChangeStats, SimpleComponentsAndPurity) {
  Rng rng = make_rng(9);
  DirectedGraph g(5);
  for (int e = 0; e < 8; ++e) {
    std::size_t i = uniform_index(rng, 5), j = uniform_index(rng, 5);
    if (i != j) g.set_edge(i, j, true);
  }
  const DirectedGraph before = g;
  const StatSpec spec{{StatKind::Edges}, {StatKind::Reciprocated}};
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      if (i == j) continue;
      const auto d = change_stats(spec, g, i, j);
      EXPECT_EQ(d[0], 1.0);
      EXPECT_EQ(d[1], g.has_edge(j, i) ? 1.0 : 0.0);
    }
  }
  EXPECT_EQ(g, before);
  EXPECT_THROW(change_stats(spec, g, 2, 2), InvalidArgument);
}

TEST(ChangeStats, RejectsShortOutputSpan) {
  std::vector<double> out(1);
  EXPECT_THROW(change_stats({{StatKind::Edges}, {StatKind::Reciprocated}}, DirectedGraph(3), 0, 1, out),
               InvalidArgument);
}

TEST(StatValue, CountsInvariantUnderRelabeling) {
  Rng rng = make_rng(77);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 3 + uniform_index(rng, 4);
    DirectedGraph g(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && bernoulli(rng, 0.4)) g.set_edge(i, j, true);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    DirectedGraph h(n);
    for (auto [i, j] : g.edges()) h.set_edge(perm[i], perm[j], true);
    for (auto k : kAllKinds) {
      if (!has_decay(k)) EXPECT_EQ(stat_value({k}, g), stat_value({k}, h)) << stat_name(k);
    }
  }
}

TEST(StatValue, MixedStarsEqualTwoPaths) {
  Rng rng = make_rng(4);
  for (int rep = 0; rep < 50; ++rep) {
    DirectedGraph g(6);
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j)
        if (i != j && bernoulli(rng, 0.5)) g.set_edge(i, j, true);
    EXPECT_EQ(stat_value({StatKind::TwoMixedStars}, g), stat_value({StatKind::TwoPaths}, g));
  }
}

TEST(StatValue, AltKTrianglesWithSingleSharedPartners) {
  // Every edge has at most one transitive shared partner, so the statistic
  // is e^a (1 - (1 - e^-a)) = 1 per edge with a partner.
  const std::vector<Edge> e{{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}};
  const auto g = DirectedGraph::from_edges(5, e);
  for (double a : {0.4, std::log(2.0), 2.0}) {
    EXPECT_NEAR(stat_value({StatKind::AltKTriangles, a}, g), 2.0, 1e-12);
  }
}
