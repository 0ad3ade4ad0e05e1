#include <doctest.h>

#include "ldcswitch/graphcheck.hpp"

using namespace ldcswitch;

namespace {

Network graph(std::size_t n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<Bus> buses;
  for (std::size_t i = 0; i < n; ++i) buses.push_back({"b" + std::to_string(i), 0, 0, 0, 0});
  std::vector<Line> lines;
  for (const auto& [u, v] : edges) lines.push_back({"", "b" + std::to_string(u), "b" + std::to_string(v), 1, 1});
  return Network(std::move(buses), std::move(lines));
}

}  // namespace

TEST_CASE("cactus recognition") {
  const StructureVerdict triangle = is_cactus(graph(3, {{0, 1}, {1, 2}, {2, 0}}));
  CHECK(triangle.holds);
  CHECK(triangle.blocks.size() == 1);

  // Two triangles sharing the vertex b2.
  const StructureVerdict bowtie = is_cactus(graph(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 2}}));
  CHECK(bowtie.holds);
  CHECK(bowtie.blocks.size() == 2);

  // A square with the chord b0-b2: both chord ends have degree 3.
  const StructureVerdict chord = is_cactus(graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}}));
  CHECK_FALSE(chord.holds);
  CHECK(chord.witness == "b0-b2");

  const StructureVerdict split = is_cactus(graph(3, {{0, 1}}));
  CHECK_FALSE(split.holds);
  CHECK(split.witness == "b2");

  CHECK(is_cactus(graph(1, {})).holds);
  CHECK(is_cactus(graph(4, {{0, 1}, {1, 2}, {1, 3}})).holds);
}

TEST_CASE("degree and Euler bound") {
  std::vector<std::pair<int, int>> k5;
  for (int i = 0; i < 5; ++i) {
    for (int j = i + 1; j < 5; ++j) k5.emplace_back(i, j);
  }
  const Network complete = graph(5, k5);
  CHECK(max_degree(complete) == 4);
  CHECK_FALSE(euler_planarity_necessary(complete));
  k5.pop_back();
  CHECK(euler_planarity_necessary(graph(5, k5)));
  CHECK(max_degree(graph(2, {})) == 0);
}

TEST_CASE("two-level tree validation") {
  // r generates; a and b are loads under r, joined by a level-1 line.
  const Network net({{"r", 0, 0, 5, 0}, {"a", 0, 1, 0, 0}, {"b", 0, 1, 0, 0}},
                    {{"", "r", "a", 1, 1}, {"", "r", "b", 1, 1}, {"", "a", "b", 1, 1}});
  TreeAnnotation ann{"r", {{"r", "a"}, {"r", "b"}}, {{"r"}, {"a", "b"}}};
  CHECK(validate_two_level_tree(net, ann).holds);

  SUBCASE("non-tree line too deep") { CHECK_FALSE(validate_two_level_tree(net, ann, 0).holds); }

  SUBCASE("leaf that is no load") {
    const Network dry({{"r", 0, 0, 5, 0}, {"a", 0, 1, 0, 0}, {"b", 0, 0, 0, 0}},
                      {{"", "r", "a", 1, 1}, {"", "r", "b", 1, 1}, {"", "a", "b", 1, 1}});
    const StructureVerdict v = validate_two_level_tree(dry, ann);
    CHECK_FALSE(v.holds);
    CHECK(v.witness.find('b') != std::string::npos);
  }

  SUBCASE("second generator") {
    const Network two({{"r", 0, 0, 5, 0}, {"a", 0, 1, 1, 0}, {"b", 0, 1, 0, 0}},
                      {{"", "r", "a", 1, 1}, {"", "r", "b", 1, 1}, {"", "a", "b", 1, 1}});
    CHECK_FALSE(validate_two_level_tree(two, ann).holds);
  }

  SUBCASE("malformed annotations") {
    TreeAnnotation unknown = ann;
    unknown.levels[1].push_back("z");
    CHECK_THROWS_AS(validate_two_level_tree(net, unknown), AnnotationError);
    TreeAnnotation missing = ann;
    missing.levels[1].pop_back();
    CHECK_THROWS_AS(validate_two_level_tree(net, missing), AnnotationError);
    TreeAnnotation skip = ann;
    skip.tree_edges[1] = {"a", "b"};
    CHECK_THROWS_AS(validate_two_level_tree(net, skip), AnnotationError);
  }
}
