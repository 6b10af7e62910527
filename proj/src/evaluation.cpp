// Apache License, Version 2.0, refer to LICENSE.txt
#include "netgen/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <string>

#include "netgen/error.hpp"
#include "netgen/parallel.hpp"
#include "netgen/rng.hpp"

namespace netgen {

namespace {

double mean_of(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// C(n, k), saturating at limit + 1.
std::size_t binomial_capped(std::size_t n, std::size_t k, std::size_t limit) {
  k = std::min(k, n - k);
  long double c = 1.0L;
  for (std::size_t i = 1; i <= k; ++i) {
    c = c * static_cast<long double>(n - k + i) / static_cast<long double>(i);
    if (c > static_cast<long double>(limit)) return limit + 1;
  }
  return static_cast<std::size_t>(std::llround(static_cast<double>(c)));
}

// t_perm counts as "at least as extreme" up to rounding in the group sums.
bool at_least(double t_perm, double t_obs) {
  return t_perm >= t_obs - 1e-12 * std::max(1.0, t_obs);
}

std::string format_g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string_view statistic_name(StatisticKind kind) {
  return kind == StatisticKind::MeanInDegree ? "in-degree" : "clustering";
}

StatisticKind parse_statistic(std::string_view name) {
  if (name == "in-degree") return StatisticKind::MeanInDegree;
  if (name == "clustering") return StatisticKind::MeanClustering;
  throw ParseError("unknown statistic '" + std::string(name) + "'");
}

double graph_statistic(StatisticKind kind, const DirectedGraph& g) {
  return kind == StatisticKind::MeanInDegree ? mean_in_degree(g) : mean_clustering(g);
}

std::vector<double> graph_statistics(StatisticKind kind, const GraphSet& set) {
  std::vector<double> v;
  v.reserve(set.size());
  for (const auto& g : set) v.push_back(graph_statistic(kind, g));
  return v;
}

PermTestResult permutation_test(std::span<const double> values1,
                                std::span<const double> values2, std::size_t n_perm,
                                std::uint64_t seed) {
  if (values1.empty() || values2.empty()) throw InvalidArgument("permutation test needs two non-empty groups");
  if (n_perm < 1) throw InvalidArgument("n_perm must be >= 1");

  const std::size_t n1 = values1.size(), n2 = values2.size(), total = n1 + n2;
  std::vector<double> pooled(values1.begin(), values1.end());
  pooled.insert(pooled.end(), values2.begin(), values2.end());
  const double pooled_sum = std::accumulate(pooled.begin(), pooled.end(), 0.0);

  PermTestResult r;
  r.mean1 = mean_of(values1);
  r.mean2 = mean_of(values2);
  r.t_obs = std::abs(r.mean1 - r.mean2);
  r.effect_size = r.t_obs;

  auto t_for = [&](double group1_sum) {
    return std::abs(group1_sum / static_cast<double>(n1) -
                    (pooled_sum - group1_sum) / static_cast<double>(n2));
  };

  const std::size_t repartitions = binomial_capped(total, n1, n_perm);
  if (repartitions <= n_perm) {
    // Enumerate every n1-subset of the pooled indices.
    std::vector<std::size_t> pick(n1);
    std::iota(pick.begin(), pick.end(), std::size_t{0});
    std::size_t hits = 0, seen = 0;
    for (;;) {
      double s = 0;
      for (auto i : pick) s += pooled[i];
      hits += at_least(t_for(s), r.t_obs);
      ++seen;
      std::size_t k = n1;
      while (k > 0 && pick[k - 1] == total - n1 + k - 1) --k;
      if (k == 0) break;
      ++pick[k - 1];
      for (std::size_t m = k; m < n1; ++m) pick[m] = pick[m - 1] + 1;
    }
    r.exhaustive = true;
    r.n_permutations = seen;
    r.p_value = static_cast<double>(hits) / static_cast<double>(seen);
    return r;
  }

  // Draw the smaller group: a partial Fisher-Yates shuffle of the pool.
  const bool draw_first = n1 <= n2;
  const std::size_t draw = draw_first ? n1 : n2;
  std::vector<std::uint8_t> hit(n_perm, 0);
  parallel_for(n_perm, [&](std::size_t k) {
    Rng rng = make_rng(derive_seed(seed, k));
    std::vector<std::size_t> idx(total);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    double s = 0;
    for (std::size_t m = 0; m < draw; ++m) {
      std::size_t pick = m + uniform_index(rng, total - m);
      std::swap(idx[m], idx[pick]);
      s += pooled[idx[m]];
    }
    const double group1_sum = draw_first ? s : pooled_sum - s;
    hit[k] = at_least(t_for(group1_sum), r.t_obs);
  });
  const auto hits = static_cast<std::size_t>(std::count(hit.begin(), hit.end(), std::uint8_t{1}));
  r.n_permutations = n_perm;
  r.p_value = static_cast<double>(hits) / static_cast<double>(n_perm);
  return r;
}

PermTestResult permutation_test(const GraphSet& set1, const GraphSet& set2,
                                StatisticKind stat, std::size_t n_perm, std::uint64_t seed) {
  if (set1.n_nodes() != set2.n_nodes()) {
    throw InvalidArgument("permutation test needs graph sets with the same node count");
  }
  auto a = graph_statistics(stat, set1);
  auto b = graph_statistics(stat, set2);
  return permutation_test(a, b, n_perm, seed);
}

double effect_size(const GraphSet& set1, const GraphSet& set2, StatisticKind stat) {
  if (set1.n_nodes() != set2.n_nodes()) {
    throw InvalidArgument("effect size needs graph sets with the same node count");
  }
  auto a = graph_statistics(stat, set1);
  auto b = graph_statistics(stat, set2);
  return std::abs(mean_of(a) - mean_of(b));
}

MeanAdjacency mean_adjacency(const GraphSet& set) {
  const std::size_t n = set.n_nodes();
  MeanAdjacency m{n, std::vector<double>(n * n, 0.0)};
  std::vector<std::size_t> counts(n * n, 0);
  for (const auto& g : set) {
    const auto& adj = g.adjacency();
    for (std::size_t k = 0; k < adj.size(); ++k) counts[k] += adj[k];
  }
  for (std::size_t k = 0; k < counts.size(); ++k) {
    m.values[k] = static_cast<double>(counts[k]) / static_cast<double>(set.size());
  }
  return m;
}

void write_matrix_csv(std::ostream& out, const MeanAdjacency& m) {
  for (std::size_t i = 0; i < m.n_nodes; ++i) {
    for (std::size_t j = 0; j < m.n_nodes; ++j) {
      if (j) out << ',';
      out << format_g17(m(i, j));
    }
    out << '\n';
  }
}

void write_matrix_pgm(std::ostream& out, const MeanAdjacency& m) {
  out << "P2\n" << m.n_nodes << ' ' << m.n_nodes << "\n255\n";
  for (std::size_t i = 0; i < m.n_nodes; ++i) {
    for (std::size_t j = 0; j < m.n_nodes; ++j) {
      if (j) out << ' ';
      out << std::lround(255.0 * std::clamp(m(i, j), 0.0, 1.0));
    }
    out << '\n';
  }
}

}  // namespace netgen
