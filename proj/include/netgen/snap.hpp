// Apache License, Version 2.0, refer to LICENSE.txt
#ifndef NETGEN_SNAP_HPP
#define NETGEN_SNAP_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "netgen/graph.hpp"

namespace netgen {

struct EgoNetwork {
  std::string ego_id;
  DirectedGraph graph;  // node 0 is the ego
};

/// Reads every `<id>.edges` file in `directory` (SNAP ego-network layout).
/// Each line "a b" is an edge a -> b among alters; the ego follows every
/// alter, so an ego -> alter edge is added for each. Alters are numbered
/// from 1 in numeric order (lexical if any id is not numeric). Duplicate
/// lines collapse; self-loops are dropped and reported in `warnings`.
/// Results are sorted by ego id using the same ordering.
std::vector<EgoNetwork> load_snap_ego(const std::filesystem::path& directory,
                                      std::vector<std::string>* warnings = nullptr);

EgoNetwork parse_ego_edges(std::istream& in, const std::string& ego_id,
                           const std::string& source_name,
                           std::vector<std::string>* warnings = nullptr);

/// Draws `count` graphs of `n` nodes: each picks a parent uniformly among
/// those with at least `n` nodes and keeps its ego (node 0) plus n - 1
/// random alters. Throws EgoTooSmall if no parent is large enough.
GraphSet sample_ego_set(const std::vector<DirectedGraph>& parents, std::size_t n,
                        std::size_t count, std::uint64_t seed);

}  // namespace netgen

#endif  // NETGEN_SNAP_HPP
