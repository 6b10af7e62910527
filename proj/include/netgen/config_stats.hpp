// Apache License, Version 2.0, refer to LICENSE.txt
#ifndef NETGEN_CONFIG_STATS_HPP
#define NETGEN_CONFIG_STATS_HPP

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "netgen/graph.hpp"

namespace netgen {

/// ERGM configuration statistics. Degree-based and shared-partner kinds are
/// directed; shared partners of (i, j) are the k with i->k->j.
enum class StatKind {
  Edges,             // sum y_ij
  Reciprocated,      // pairs i<j with y_ij = y_ji = 1
  TwoInStars,        // sum_i C(din_i, 2)
  TwoOutStars,       // sum_i C(dout_i, 2)
  TwoMixedStars,     // paths j->i->k with j != k
  TransitiveTriads,  // ordered (i,j,k) with i->j, j->k, i->k
  GwInDegree,        // e^a sum_i [1 - (1 - e^-a)^din_i]
  GwOutDegree,       // e^a sum_i [1 - (1 - e^-a)^dout_i]
  TwoPaths,          // same count as TwoMixedStars
  AltKTriangles,     // e^a sum_{i->j} [1 - (1 - e^-a)^sp_ij]
  AltKPaths,         // e^a sum_{i != j} [1 - (1 - e^-a)^sp_ij]
};

inline constexpr double kDefaultDecay = 0.69314718055994530942;  // ln 2

struct StatTerm {
  StatKind kind = StatKind::Edges;
  double decay = kDefaultDecay;  // only read by the geometric kinds
};

using StatSpec = std::vector<StatTerm>;
using StatVector = std::vector<double>;

bool has_decay(StatKind kind);

/// Serialized names: edges, mutual, istar2, ostar2, mstar2, ttriad,
/// gwidegree, gwodegree, twopath, altktri, altkpath.
std::string_view stat_name(StatKind kind);
StatKind parse_stat_kind(std::string_view name);

/// Throws InvalidArgument when a geometric term has decay <= 0 or is not finite.
void validate_term(const StatTerm& term);
void validate_spec(const StatSpec& spec);

double stat_value(const StatTerm& term, const DirectedGraph& g);
StatVector stat_vector(const StatSpec& spec, const DirectedGraph& g);

/// g(y with y_ij = 1) - g(y with y_ij = 0), computed locally from the
/// neighbourhood of (i, j). `out` must have spec.size() entries.
void change_stats(const StatSpec& spec, const DirectedGraph& g, std::size_t i,
                  std::size_t j, std::span<double> out);
StatVector change_stats(const StatSpec& spec, const DirectedGraph& g, std::size_t i,
                        std::size_t j);

}  // namespace netgen

#endif  // NETGEN_CONFIG_STATS_HPP
