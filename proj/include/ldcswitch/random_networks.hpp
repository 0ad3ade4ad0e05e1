#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "ldcswitch/network.hpp"

namespace ldcswitch {

struct RandomNetworkOptions {
  std::size_t min_buses = 2;
  std::size_t max_buses = 6;
  std::size_t max_lines = 8;
  /// No bus is both a generator and a load, and every plmax is finite.
  bool disjoint = false;
};

/// Capacities and susceptances from {1, 2, 3, 1/2}, bounds from {0, 1, 2, inf}
/// (plmin finite), costs from {0, 1, 2}. Only rng() is consumed, so the
/// stream is the same on every platform.
Network random_network(std::mt19937_64& rng, const RandomNetworkOptions& options = {});

std::vector<Network> random_networks(std::uint64_t seed, std::size_t count, const RandomNetworkOptions& options = {});

}  // namespace ldcswitch
