#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ldcswitch/reductions.hpp"

namespace ldcswitch {

// Combinatorial reference solvers. None of them touches the LP code.

struct SubsetSumAnswer {
  bool solvable = false;
  /// Chosen values in input order (empty when unsolvable).
  std::vector<std::int64_t> subset;
};

/// Dynamic program over reachable sums.
SubsetSumAnswer subset_sum_solvable(const SubsetSumInstance& instance);

struct PathAnswer {
  std::size_t length = 0;  // edges
  std::vector<std::string> path;
};

/// Longest simple a-b path by exhaustive search. Throws InstanceError when a
/// and b are not connected.
PathAnswer longest_path(const GraphInstance& instance);

/// A simple a-b path through every vertex exists.
bool ham_path_exists(const GraphInstance& instance);

struct AssignmentAnswer {
  std::int64_t cost = 0;
  /// assignment[i] = (j, k): X[i] is matched with Y[j] and W[k].
  std::vector<std::pair<std::size_t, std::size_t>> assignment;
};

constexpr std::size_t kM3daOracleLimit = 4;

/// Minimum-cost assignment over all (n!)^2 candidates. Throws InstanceError
/// above kM3daOracleLimit.
AssignmentAnswer m3da_min(const M3daInstance& instance);

}  // namespace ldcswitch
