// Apache License, Version 2.0, refer to LICENSE.txt
#ifndef NETGEN_EVALUATION_HPP
#define NETGEN_EVALUATION_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "netgen/graph.hpp"

namespace netgen {

/// Per-graph scalar summaries compared by the permutation test.
enum class StatisticKind { MeanInDegree, MeanClustering };

std::string_view statistic_name(StatisticKind kind);  // in-degree | clustering
StatisticKind parse_statistic(std::string_view name);
double graph_statistic(StatisticKind kind, const DirectedGraph& g);
std::vector<double> graph_statistics(StatisticKind kind, const GraphSet& set);

struct PermTestResult {
  double t_obs = 0.0;  // |mean1 - mean2|
  double p_value = 1.0;
  std::size_t n_permutations = 0;
  double effect_size = 0.0;  // equal to t_obs
  double mean1 = 0.0;
  double mean2 = 0.0;
  bool exhaustive = false;
};

inline constexpr std::size_t kDefaultPermutations = 1000;

/// Two-sample permutation test on the difference of group means.
/// p = #{t_perm >= t_obs} / n_permutations. When the number of distinct
/// repartitions C(n1 + n2, n1) is at most n_perm they are enumerated
/// instead (exhaustive = true, result independent of seed). Random
/// repartition k uses substream derive_seed(seed, k).
PermTestResult permutation_test(std::span<const double> values1,
                                std::span<const double> values2, std::size_t n_perm,
                                std::uint64_t seed);
PermTestResult permutation_test(const GraphSet& set1, const GraphSet& set2,
                                StatisticKind stat, std::size_t n_perm, std::uint64_t seed);

double effect_size(const GraphSet& set1, const GraphSet& set2, StatisticKind stat);

/// Entrywise mean adjacency; row-major n x n, zero diagonal.
struct MeanAdjacency {
  std::size_t n_nodes = 0;
  std::vector<double> values;

  double operator()(std::size_t i, std::size_t j) const { return values[i * n_nodes + j]; }
};

MeanAdjacency mean_adjacency(const GraphSet& set);

/// One CSV row per matrix row, values at 17 significant digits.
void write_matrix_csv(std::ostream& out, const MeanAdjacency& m);
/// Plain-text PGM (P2), maxval 255, gray = round(255 * entry).
void write_matrix_pgm(std::ostream& out, const MeanAdjacency& m);

}  // namespace netgen

#endif  // NETGEN_EVALUATION_HPP
