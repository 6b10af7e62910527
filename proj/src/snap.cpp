// Apache License, Version 2.0, refer to LICENSE.txt
#include "netgen/snap.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "netgen/error.hpp"
#include "netgen/generators.hpp"
#include "netgen/rng.hpp"

namespace netgen {

namespace {

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

// Numeric order for digit strings (ignoring leading zeros), lexical otherwise.
bool id_less(const std::string& a, const std::string& b, bool numeric) {
  if (!numeric) return a < b;
  auto strip = [](const std::string& s) {
    auto p = s.find_first_not_of('0');
    return p == std::string::npos ? std::string("0") : s.substr(p);
  };
  const std::string x = strip(a), y = strip(b);
  if (x.size() != y.size()) return x.size() < y.size();
  return x < y;
}

}  // namespace

EgoNetwork parse_ego_edges(std::istream& in, const std::string& ego_id,
                           const std::string& source_name, std::vector<std::string>* warnings) {
  std::vector<std::pair<std::string, std::string>> raw;
  std::set<std::string> alters;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string a, b, extra;
    if (!(fields >> a)) continue;
    if (!(fields >> b) || (fields >> extra)) {
      throw ParseError(source_name + ":" + std::to_string(line_no) +
                       ": expected two node ids, got '" + line + "'");
    }
    if (a != ego_id) alters.insert(a);
    if (b != ego_id) alters.insert(b);
    if (a == b) {
      if (warnings) {
        warnings->push_back(source_name + ":" + std::to_string(line_no) + ": self-loop on " + a +
                            " dropped");
      }
      continue;
    }
    raw.emplace_back(std::move(a), std::move(b));
  }

  std::vector<std::string> order(alters.begin(), alters.end());
  const bool numeric = std::all_of(order.begin(), order.end(), all_digits);
  std::stable_sort(order.begin(), order.end(),
                   [&](const std::string& x, const std::string& y) { return id_less(x, y, numeric); });
  std::map<std::string, std::size_t> index;
  index[ego_id] = 0;
  for (std::size_t k = 0; k < order.size(); ++k) index[order[k]] = k + 1;

  DirectedGraph g(order.size() + 1);
  for (std::size_t k = 1; k <= order.size(); ++k) g.set_edge(0, k, true);
  for (const auto& [a, b] : raw) g.set_edge(index.at(a), index.at(b), true);
  return {ego_id, std::move(g)};
}

std::vector<EgoNetwork> load_snap_ego(const std::filesystem::path& directory,
                                      std::vector<std::string>* warnings) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(directory, ec)) {
    throw IoError("not a directory: " + directory.string());
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(directory, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".edges") files.push_back(entry.path());
  }
  if (ec) throw IoError("cannot list " + directory.string() + ": " + ec.message());

  std::vector<std::string> ids;
  for (const auto& f : files) ids.push_back(f.stem().string());
  const bool numeric = std::all_of(ids.begin(), ids.end(), all_digits);
  std::vector<std::size_t> perm(files.size());
  for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = k;
  std::sort(perm.begin(), perm.end(),
            [&](std::size_t x, std::size_t y) { return id_less(ids[x], ids[y], numeric) ||
                                                       (ids[x] == ids[y] && x < y); });

  std::vector<EgoNetwork> out;
  out.reserve(files.size());
  for (std::size_t k : perm) {
    std::ifstream in(files[k]);
    if (!in) throw IoError("cannot open " + files[k].string());
    out.push_back(parse_ego_edges(in, ids[k], files[k].string(), warnings));
  }
  return out;
}

GraphSet sample_ego_set(const std::vector<DirectedGraph>& parents, std::size_t n,
                        std::size_t count, std::uint64_t seed) {
  if (count < 1) throw InvalidArgument("ego sample count must be >= 1");
  std::vector<std::size_t> eligible;
  for (std::size_t k = 0; k < parents.size(); ++k)
    if (parents[k].n_nodes() >= n) eligible.push_back(k);
  if (eligible.empty()) {
    throw EgoTooSmall("no ego network has at least " + std::to_string(n) + " nodes");
  }
  Rng pick = make_rng(derive_seed(seed, "pick"));
  std::vector<DirectedGraph> graphs;
  graphs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto& parent = parents[eligible[uniform_index(pick, eligible.size())]];
    graphs.push_back(sample_ego(parent, 0, n, derive_seed(seed, i)));
  }
  return GraphSet(std::move(graphs));
}

}  // namespace netgen
