// Apache License, Version 2.0, refer to LICENSE.txt
#include "netgen/graph_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "netgen/error.hpp"

namespace netgen {

namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-blank line split into a stream; throws at end of input.
  std::istringstream next(const char* expecting) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (line.find_first_not_of(" \t\r") != std::string::npos) {
        return std::istringstream(line);
      }
    }
    fail(std::string("unexpected end of input, expecting ") + expecting);
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("graphset line " + std::to_string(line_no_) + ": " + what);
  }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

void expect_end(std::istringstream& fields, const LineReader& reader) {
  std::string extra;
  if (fields >> extra) reader.fail("trailing token '" + extra + "'");
}

}  // namespace

void write_graphset(std::ostream& out, const GraphSet& set) {
  out << "graphset 1 " << set.size() << ' ' << set.n_nodes() << '\n';
  for (const auto& g : set) {
    out << "graph " << g.edge_count() << '\n';
    for (auto [i, j] : g.edges()) out << i << ' ' << j << '\n';
  }
}

GraphSet read_graphset(std::istream& in) {
  LineReader reader(in);
  auto header = reader.next("header");
  std::string magic;
  long long version = 0, count = 0, n = 0;
  if (!(header >> magic >> version >> count >> n) || magic != "graphset") {
    reader.fail("expected 'graphset 1 <count> <n_nodes>'");
  }
  expect_end(header, reader);
  if (version != 1) reader.fail("unsupported graphset version " + std::to_string(version));
  if (count < 1) reader.fail("graph count must be positive");
  if (n < 1) reader.fail("node count must be positive");

  std::vector<DirectedGraph> graphs;
  graphs.reserve(static_cast<std::size_t>(count));
  for (long long g = 0; g < count; ++g) {
    auto head = reader.next("'graph <edge_count>'");
    std::string tag;
    long long edges = -1;
    if (!(head >> tag >> edges) || tag != "graph" || edges < 0) {
      reader.fail("expected 'graph <edge_count>'");
    }
    expect_end(head, reader);
    DirectedGraph graph(static_cast<std::size_t>(n));
    for (long long e = 0; e < edges; ++e) {
      auto line = reader.next("edge");
      long long src = -1, dst = -1;
      if (!(line >> src >> dst)) reader.fail("expected '<src> <dst>'");
      expect_end(line, reader);
      if (src < 0 || dst < 0 || src >= n || dst >= n) reader.fail("edge endpoint out of range");
      if (src == dst) reader.fail("self-loop");
      auto i = static_cast<std::size_t>(src), j = static_cast<std::size_t>(dst);
      if (graph.has_edge(i, j)) reader.fail("duplicate edge");
      graph.set_edge(i, j, true);
    }
    graphs.push_back(std::move(graph));
  }
  return GraphSet(std::move(graphs));
}

void save_graphset(const std::filesystem::path& path, const GraphSet& set) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_graphset(out, set);
  if (!out) throw IoError("failed writing " + path.string());
}

GraphSet load_graphset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return read_graphset(in);
}

}  // namespace netgen
