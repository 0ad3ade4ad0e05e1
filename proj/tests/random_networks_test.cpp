#include <doctest.h>

#include "ldcswitch/random_networks.hpp"

using namespace ldcswitch;

TEST_CASE("random networks are seed-deterministic") {
  const std::vector<Network> a = random_networks(42, 20);
  const std::vector<Network> b = random_networks(42, 20);
  REQUIRE(a.size() == 20);
  CHECK(a == b);
  CHECK_FALSE(a == random_networks(43, 20));
}

TEST_CASE("random networks respect their limits") {
  RandomNetworkOptions options;
  for (bool disjoint : {false, true}) {
    options.disjoint = disjoint;
    for (const Network& net : random_networks(7, 50, options)) {
      CHECK(net.bus_count() >= options.min_buses);
      CHECK(net.bus_count() <= options.max_buses);
      CHECK(net.line_count() <= options.max_lines);
      for (const Line& l : net.lines()) CHECK(l.switchable);
      if (!disjoint) continue;
      for (const Bus& b : net.buses()) {
        CHECK_FALSE(b.plmax.is_infinite());
        CHECK_FALSE((b.pgmax.sign() > 0 && b.plmax.sign() > 0));
      }
    }
  }
}
