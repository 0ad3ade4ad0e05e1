#include <doctest.h>

#include "ldcswitch/graphcheck.hpp"
#include "ldcswitch/reductions.hpp"

using namespace ldcswitch;

namespace {

GraphInstance path3() { return {{"u", "m", "w"}, {{"u", "m"}, {"m", "w"}}, "u", "w"}; }

M3daInstance single(std::int64_t d) { return {{"x"}, {"y"}, {"w"}, {d}}; }

}  // namespace

TEST_CASE("switch gadget shape") {
  const ConstructionReport plain = build_sch(1, SchMode::Plain);
  CHECK(plain.network.bus_count() == 3);
  CHECK(plain.network.line_count() == 3);
  CHECK(plain.network.bus("l").plmin == ExtRational(3));
  CHECK(plain.network.bus("g").pgmax == ExtRational(3));
  CHECK(plain.names.at("gv") == "g-v");

  const ConstructionReport plus = build_sch(Rational(5, 2), SchMode::Plus);
  CHECK(plus.network.bus("v").pgmax.is_infinite());
  CHECK_FALSE(plus.repairs.empty());
  CHECK(build_sch(Rational(5, 2), SchMode::Plus, true).network.bus("v").plmax.is_infinite());

  CHECK_THROWS_AS(build_sch(0, SchMode::Plain), InstanceError);
}

TEST_CASE("cactus construction") {
  const SubsetSumInstance instance{{1, 2, 3}, 5};
  const ConstructionReport r = build_cactus(instance);
  CHECK(r.network.bus_count() == 3 + 4 * 3);
  CHECK(r.network.line_count() == 18);
  CHECK(is_cactus(r.network).holds);
  CHECK(max_degree(r.network) <= 3);
  CHECK(r.network.bus("g").pgmax == ExtRational(13));
  CHECK(build_cactus(instance, true).network.bus("g").pgmax == ExtRational(7));
  CHECK(r.names.at("v0") == "x0");
}

TEST_CASE("two-level tree construction") {
  const SubsetSumInstance instance{{2, 1, 3}, 5};
  CHECK(tree_m(instance) == 7);
  const ConstructionReport r = build_two_level_tree(instance);
  CHECK(r.network.bus_count() == 14);
  CHECK(r.network.line_count() == 17);
  REQUIRE(r.tree);
  CHECK(validate_two_level_tree(r.network, *r.tree).holds);
  CHECK(r.network.line_between("t", "a2"));
  CHECK_FALSE(r.network.line_between("t", "a1"));

  const ConstructionReport literal = build_two_level_tree(instance, true);
  CHECK(literal.network.line_between("t", "a1"));
  CHECK_FALSE(validate_two_level_tree(literal.network, *literal.tree).holds);
}

TEST_CASE("path gadgets") {
  const ConstructionReport lp = build_longest_path(path3());
  CHECK(lp.network.bus_count() == 3 + 4);
  CHECK(lp.network.line_count() == 2 + 2 + 1 + 3);
  const Line& gl = lp.network.lines()[*lp.network.line_between("g", "l")];
  CHECK(gl.capacity == ExtRational(1));
  CHECK(gl.susceptance == Rational(1, 4));

  const ConstructionReport ham = build_hamiltonian(path3());
  CHECK(ham.network.bus("l").plmin == ExtRational(0));
  CHECK(build_hamiltonian(path3(), true).network.bus("l").plmin == ExtRational(3));

  GraphInstance reserved = path3();
  reserved.vertices[1] = "g";
  reserved.edges = {{"u", "g"}, {"g", "w"}};
  CHECK_THROWS_AS(build_longest_path(reserved), InstanceError);
  GraphInstance split{{"u", "m", "w"}, {{"u", "m"}}, "u", "w"};
  CHECK_THROWS_AS(build_longest_path(split), InstanceError);
}

TEST_CASE("assignment gadget") {
  const ConstructionReport r = build_m3da(single(7));
  CHECK(r.network.bus_count() == 7);
  CHECK(r.network.line_count() == 9);
  CHECK(r.network.bus("l").plmin == ExtRational(8));

  const OperatingPoint op = m3da_assignment_point(single(7), {{0, 0}});
  CHECK(check_feasible(r.network, op).valid());
  CHECK(total_cost(r.network, op) == 7);

  // The textbook capacity of t-t.g cannot carry the exhibited flow.
  const ConstructionReport literal = build_m3da(single(7), true);
  CHECK_FALSE(check_feasible(literal.network, m3da_assignment_point(single(7), {{0, 0}}, true)).valid());

  const M3daInstance two{{"x1", "x2"}, {"y1", "y2"}, {"w1", "w2"}, {1, 2, 3, 4, 5, 6, 7, 8}};
  const ConstructionReport r2 = build_m3da(two);
  const OperatingPoint op2 = m3da_assignment_point(two, {{1, 0}, {0, 1}});
  CHECK(check_feasible(r2.network, op2).valid());
  CHECK(total_cost(r2.network, op2) == two.d(0, 1, 0) + two.d(1, 0, 1));
}

TEST_CASE("load shedding to switching") {
  const Network net({{"g", 0, 0, 4, 3}, {"l", 1, 3, 0, 0}}, {{"", "g", "l", 2, 1}});
  const ConstructionReport r = msf_to_ots(net);
  CHECK(r.network.bus("l").plmin == ExtRational(3));
  CHECK(r.network.bus("l").pgmax == ExtRational(2));
  CHECK(r.network.bus("l").cost == ExtRational(1));
  CHECK(r.network.bus("g").cost == ExtRational(0));

  const Network both({{"b", 0, 1, 1, 0}}, {});
  CHECK_THROWS_AS(msf_to_ots(both), InstanceError);
}

TEST_CASE("instance validation") {
  CHECK_THROWS_AS(validate(SubsetSumInstance{{}, 1}), InstanceError);
  CHECK_THROWS_AS(validate(SubsetSumInstance{{0}, 1}), InstanceError);
  CHECK_THROWS_AS(validate(SubsetSumInstance{{1}, 0}), InstanceError);
  CHECK_THROWS_AS(validate(GraphInstance{{"a", "a"}, {}, "a", "a"}), InstanceError);
  CHECK_THROWS_AS(validate(GraphInstance{{"a", "b"}, {{"a", "b"}, {"b", "a"}}, "a", "b"}), InstanceError);
  CHECK_THROWS_AS(validate(M3daInstance{{"x"}, {"y"}, {"w"}, {}}), InstanceError);
  CHECK_THROWS_AS(validate(M3daInstance{{"l"}, {"y"}, {"w"}, {1}}), InstanceError);
  CHECK_THROWS_AS(validate(M3daInstance{{"x"}, {"y"}, {"w"}, {-1}}), InstanceError);
}
