#include "ldcswitch/random_networks.hpp"

#include <utility>

namespace ldcswitch {

namespace {

std::size_t below(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

}  // namespace

Network random_network(std::mt19937_64& rng, const RandomNetworkOptions& options) {
  const std::vector<Rational> line_values = {1, 2, 3, Rational(1, 2)};
  const std::vector<ExtRational> bounds = {0, 1, 2, ExtRational::infinity()};
  const std::size_t n = options.min_buses + below(rng, options.max_buses - options.min_buses + 1);

  std::vector<Bus> buses;
  for (std::size_t i = 0; i < n; ++i) {
    Bus b{"b" + std::to_string(i), 0, 0, 0, static_cast<int>(below(rng, 3))};
    if (options.disjoint) {
      switch (below(rng, 3)) {
        case 0:
          b.pgmax = bounds[1 + below(rng, 3)];
          break;
        case 1:
          b.plmax = bounds[1 + below(rng, 2)];
          b.plmin = bounds[below(rng, 3)];
          if (b.plmax < b.plmin) std::swap(b.plmin, b.plmax);
          break;
        default:
          break;
      }
    } else {
      b.plmin = bounds[below(rng, 3)];
      b.plmax = bounds[below(rng, 4)];
      if (b.plmax < b.plmin) std::swap(b.plmin, b.plmax);
      b.pgmax = bounds[below(rng, 4)];
    }
    buses.push_back(std::move(b));
  }

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  for (std::size_t i = pairs.size(); i > 1; --i) std::swap(pairs[i - 1], pairs[below(rng, i)]);
  const std::size_t count = below(rng, std::min(options.max_lines, pairs.size()) + 1);
  std::vector<Line> lines;
  for (std::size_t i = 0; i < count; ++i) {
    const auto [x, y] = pairs[i];
    lines.push_back({"", buses[x].id, buses[y].id, line_values[below(rng, 4)], line_values[below(rng, 4)], true});
  }
  return Network(std::move(buses), std::move(lines));
}

std::vector<Network> random_networks(std::uint64_t seed, std::size_t count, const RandomNetworkOptions& options) {
  std::mt19937_64 rng(seed);
  std::vector<Network> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_network(rng, options));
  return out;
}

}  // namespace ldcswitch
