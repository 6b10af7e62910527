// Apache License, Version 2.0, refer to LICENSE.txt
#include <gtest/gtest.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "netgen/error.hpp"
#include "netgen/snap.hpp"

using namespace netgen;

namespace {

EgoNetwork parse(const std::string& text, std::vector<std::string>* warnings = nullptr) {
  std::istringstream in(text);
  return parse_ego_edges(in, "9", "9.edges", warnings);
}

std::vector<Edge> sorted_edges(const DirectedGraph& g) {
  auto e = g.edges();
  std::sort(e.begin(), e.end());
  return e;
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag)
      : path_(std::filesystem::temp_directory_path() / ("netgen-" + tag + "-" + std::to_string(::getpid()))) {
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  const std::filesystem::path& path() const { return path_; }
  void write(const std::string& name, const std::string& text) const { std::ofstream(path_ / name) << text; }

 private:
  std::filesystem::path path_;
};

}  // namespace

TEST(SnapEgo, EmptyFileIsSingleNode) {
  const auto ego = parse("");
  EXPECT_EQ(ego.ego_id, "9");
  EXPECT_EQ(ego.graph.n_nodes(), 1u);
  EXPECT_EQ(ego.graph.edge_count(), 0u);
}

TEST(SnapEgo, EgoFollowsEveryAlter) {
  const auto ego = parse("1 2\n2 1\n");
  ASSERT_EQ(ego.graph.n_nodes(), 3u);
  EXPECT_EQ(sorted_edges(ego.graph), (std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}, {2, 1}}));
}

TEST(SnapEgo, DuplicateLinesCollapse) {
  EXPECT_EQ(parse("1 2\n1 2\n2 1\n").graph, parse("1 2\n2 1\n").graph);
}

TEST(SnapEgo, AltersNumberedInIdOrder) {
  // Numeric order: 5 < 40 < 300, even though "300" < "40" < "5" lexically.
  const auto ego = parse("300 5\n40 300\n");
  ASSERT_EQ(ego.graph.n_nodes(), 4u);
  EXPECT_TRUE(ego.graph.has_edge(3, 1));
  EXPECT_TRUE(ego.graph.has_edge(2, 3));
  EXPECT_EQ(ego.graph.edge_count(), 5u);
}

TEST(SnapEgo, EgoIdInFileMapsToNodeZero) {
  const auto ego = parse("1 9\n");
  EXPECT_EQ(ego.graph.n_nodes(), 2u);
  EXPECT_TRUE(ego.graph.has_edge(1, 0));
  EXPECT_TRUE(ego.graph.has_edge(0, 1));
}

TEST(SnapEgo, SelfLoopDroppedWithWarning) {
  std::vector<std::string> warnings;
  const auto ego = parse("4 4\n4 7\n", &warnings);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("9.edges:1"), std::string::npos);
  EXPECT_EQ(ego.graph.n_nodes(), 3u);
  EXPECT_EQ(sorted_edges(ego.graph), (std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}}));
}

TEST(SnapEgo, MalformedLinesCarryLocation) {
  for (const std::string& bad : {"1 2\n3\n", "1 2\n1 2 3\n", "a\n"}) {
    try {
      parse(bad);
      ADD_FAILURE() << "accepted: " << bad;
    } catch (const ParseError& e) {
      EXPECT_NE(std::string(e.what()).find("9.edges:"), std::string::npos) << e.what();
    }
  }
  EXPECT_NO_THROW(parse("\n1 2\n\n  2\t3  \n"));
}

TEST(SnapEgo, LoadsDirectorySortedById) {
  TempDir dir("snap");
  dir.write("12.edges", "1 2\n");
  dir.write("3.edges", "5 6\n6 7\n");
  dir.write("3.circles", "ignored\n");
  dir.write("12.feat", "ignored\n");
  const auto egos = load_snap_ego(dir.path());
  ASSERT_EQ(egos.size(), 2u);
  EXPECT_EQ(egos[0].ego_id, "3");
  EXPECT_EQ(egos[0].graph.n_nodes(), 4u);
  EXPECT_EQ(egos[1].ego_id, "12");
  EXPECT_THROW(load_snap_ego(dir.path() / "missing"), IoError);
}

TEST(SnapEgo, SampleEgoSet) {
  const auto small = parse("1 2\n").graph;
  const auto big = parse("1 2\n2 3\n3 4\n4 5\n5 1\n").graph;
  const auto set = sample_ego_set({small, big}, 4, 25, 7);
  EXPECT_EQ(set.size(), 25u);
  EXPECT_EQ(set.n_nodes(), 4u);
  for (const auto& g : set) {
    // The ego follows every kept alter.
    for (std::size_t a = 1; a < 4; ++a) EXPECT_TRUE(g.has_edge(0, a));
  }
  EXPECT_EQ(set, sample_ego_set({small, big}, 4, 25, 7));
  EXPECT_THROW(sample_ego_set({small}, 4, 5, 1), EgoTooSmall);
}
