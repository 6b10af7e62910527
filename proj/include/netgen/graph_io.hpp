// Apache License, Version 2.0, refer to LICENSE.txt
#ifndef NETGEN_GRAPH_IO_HPP
#define NETGEN_GRAPH_IO_HPP

#include <filesystem>
#include <iosfwd>

#include "netgen/graph.hpp"

namespace netgen {

// "graphset v1" text format:
//
//   graphset 1 <count> <n_nodes>
//   graph <edge_count>
//   <src> <dst>          (edge_count lines, 0-based)
//   graph <edge_count>
//   ...
//
// Writers emit edges sorted lexicographically. Readers accept any order and
// reject self-loops, duplicates and out-of-range endpoints.

void write_graphset(std::ostream& out, const GraphSet& set);
GraphSet read_graphset(std::istream& in);

void save_graphset(const std::filesystem::path& path, const GraphSet& set);
GraphSet load_graphset(const std::filesystem::path& path);

}  // namespace netgen

#endif  // NETGEN_GRAPH_IO_HPP
