#include <doctest.h>

#include "ldcswitch/io.hpp"

using namespace ldcswitch;

namespace {

std::string parse_error(const std::string& text) {
  try {
    parse_network(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("network round trip") {
  for (SchMode mode : {SchMode::Plain, SchMode::Plus, SchMode::Minus}) {
    const Network net = build_sch(Rational(5, 2), mode).network;
    const std::string text = write_network(net);
    CHECK(parse_network(text) == net);
    CHECK(write_network(parse_network(text)) == text);
  }
  const Network cactus = build_cactus({{1, 2, 3}, 5}).network;
  CHECK(parse_network(write_network(cactus)) == cactus);
}

TEST_CASE("network parsing") {
  const Network net = parse_network(R"({"buses": [{"id": "g", "pgmax": "3/6"}, {"id": "l", "plmax": "inf", "cost": 2}],
                                        "lines": [{"a": "g", "b": "l", "capacity": "inf", "susceptance": "2/4"}]})");
  CHECK(net.bus("g").pgmax == ExtRational(Rational(1, 2)));
  CHECK(net.bus("g").plmin == ExtRational(0));
  CHECK(net.bus("l").plmax.is_infinite());
  CHECK(net.bus("l").cost == ExtRational(2));
  REQUIRE(net.line_count() == 1);
  CHECK(net.lines()[0].id == "g-l");
  CHECK(net.lines()[0].switchable);
  CHECK(net.lines()[0].susceptance == Rational(1, 2));

  CHECK(parse_network(R"({"buses": [{"id": "a"}]})").line_count() == 0);
}

TEST_CASE("network parse errors") {
  CHECK_FALSE(parse_error(R"({"buses": [{"id": "a", "plmin": "2", "plmax": "1"}]})").empty());
  CHECK(parse_error(R"({"buses": [{"id": "a"}, {"id": "b", "plmax": 1.5}]})").find("buses[1].plmax") == 0);
  CHECK(parse_error(R"({"buses": [{"id": "a", "plmax": "x"}]})").find("buses[0].plmax") == 0);
  CHECK(parse_error(R"({"buses": [{"plmax": "1"}]})").find("buses[0]") == 0);
  CHECK(parse_error(R"({"buses": [{"id": "a", "plmx": "1"}]})").find("plmx") != std::string::npos);
  CHECK_FALSE(parse_error(R"({"buses": [{"id": "a"}, {"id": "a"}]})").empty());
  CHECK_FALSE(parse_error(R"({"buses": [{"id": "a"}, {"id": "b"}],
      "lines": [{"a": "a", "b": "b", "capacity": 1, "susceptance": 1},
                {"a": "b", "b": "a", "capacity": 1, "susceptance": 1, "id": "x"}]})").empty());
  CHECK(parse_error(R"({"buses": [{"id": "a"}, {"id": "b"}],
      "lines": [{"a": "a", "b": "b", "capacity": 1, "susceptance": "inf"}]})").find("lines[0].susceptance") == 0);
  CHECK(parse_error("{\"buses\": [").find("malformed") == 0);
  CHECK_FALSE(parse_error("[]").empty());
}

TEST_CASE("graph, assignment and annotation files") {
  const GraphInstance g{{"a", "m", "b"}, {{"a", "m"}, {"m", "b"}}, "a", "b"};
  const GraphInstance g2 = parse_graph(write_graph(g));
  CHECK(g2.vertices == g.vertices);
  CHECK(g2.edges == g.edges);
  CHECK(g2.b == "b");
  CHECK_THROWS_AS(parse_graph(R"({"vertices": ["a"], "edges": [["a", "z"]], "a": "a", "b": "a"})"), ParseError);

  const M3daInstance m{{"x1", "x2"}, {"y1", "y2"}, {"w1", "w2"}, {1, 2, 3, 4, 5, 6, 7, 8}};
  const M3daInstance m2 = parse_m3da(write_m3da(m));
  CHECK(m2.cost == m.cost);
  CHECK(m2.w == m.w);
  CHECK_THROWS_AS(parse_m3da(R"({"X": ["x"], "Y": ["y"], "W": ["w"], "d": []})"), ParseError);
  CHECK_THROWS_AS(parse_m3da(R"({"X": ["x"], "Y": ["y"], "W": ["w"], "d": [
      {"x": "x", "y": "y", "w": "w", "cost": 1}, {"x": "x", "y": "y", "w": "w", "cost": 2}]})"),
                  ParseError);
  CHECK_THROWS_AS(parse_m3da(R"({"X": ["x"], "Y": ["y"], "W": ["w"], "d": [{"x": "q", "y": "y", "w": "w", "cost": 1}]})"),
                  ParseError);
  CHECK_THROWS_AS(parse_m3da(R"({"X": ["x"], "Y": ["y"], "W": ["w"], "d": [{"x": "x", "y": "y", "w": "w", "cost": "1/2"}]})"),
                  ParseError);

  const TreeAnnotation ann = *build_two_level_tree({{2, 1, 3}, 5}).tree;
  const TreeAnnotation ann2 = parse_annotation(write_annotation(ann));
  CHECK(ann2.root == ann.root);
  CHECK(ann2.tree_edges == ann.tree_edges);
  CHECK(ann2.levels == ann.levels);
}

TEST_CASE("operating point output") {
  OperatingPoint op = OperatingPoint::zero(build_sch(1, SchMode::Plain).network);
  op.theta["l"] = Rational(-1, 3);
  op.switched.insert("g-v");
  const std::string table = render_operating_point(op);
  CHECK(table.find("switched: {g-v}") == 0);
  CHECK(table.find("-1/3") != std::string::npos);
  CHECK(write_operating_point(op).find("\"-1/3\"") != std::string::npos);
}
