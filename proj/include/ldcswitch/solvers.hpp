#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "ldcswitch/lp.hpp"
#include "ldcswitch/network.hpp"

namespace ldcswitch {

enum class Objective { Feasibility, MaxLoad, MinCost };

/// More switchable lines than the enumeration cap allows.
class EnumerationCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EnumerationLimit {
  std::size_t cap = 25;
  unsigned jobs = 1;
  /// Skip subsets whose load bound cannot beat the incumbent (MSF only).
  bool bound_pruning = true;
};

struct SolveStats {
  std::uint64_t subsets_explored = 0;
  std::uint64_t lps_solved = 0;
  std::uint64_t subsets_pruned = 0;

  friend bool operator==(const SolveStats&, const SolveStats&) = default;
};

struct SolveResult {
  enum class Status { Optimal, Infeasible };
  Status status = Status::Infeasible;
  /// Total load (MSF/MPF) or total cost (OTS); +inf when the load is unbounded.
  ExtRational value;
  /// A feasible operating point attaining value (a feasible point when value is +inf).
  OperatingPoint witness;
  SolveStats stats;

  [[nodiscard]] bool feasible() const noexcept { return status == Status::Optimal; }
};

/// The LP of one fixed switching together with the variable layout.
struct TopologyLp {
  LinearProgram lp;
  std::vector<std::size_t> theta;  // per bus index
  std::vector<std::optional<std::size_t>> pgen;
  std::vector<std::optional<std::size_t>> pload;
  std::vector<std::size_t> anchors;  // bus indices pinned to theta = 0

  [[nodiscard]] OperatingPoint to_operating_point(const Network& net, const SwitchSet& switched,
                                                  std::span<const Rational> assignment) const;
};

/// Theta per bus (the smallest bus id of each active component is fixed at
/// 0), pgen in [0, pgmax] and pload in [plmin, plmax] where the upper bound is
/// nonzero, two capacity rows per active finite-capacity line and one balance
/// row per bus. Throws NetworkError if switched names unknown or
/// non-switchable lines.
TopologyLp build_topology_lp(const Network& net, const SwitchSet& switched, Objective objective);
LinearProgram build_fixed_topology_lp(const Network& net, const SwitchSet& switched, Objective objective);

/// Maximum load with nothing switched.
SolveResult solve_mpf(const Network& net);
SolveResult solve_msf(const Network& net, const EnumerationLimit& limit = {});
SolveResult solve_ots(const Network& net, const EnumerationLimit& limit = {});
/// Stops at the first feasible switching in enumeration order.
SolveResult solve_feas(const Network& net, const EnumerationLimit& limit = {});

/// MSF >= x. False when no feasible solution exists.
bool decide_msf(const Network& net, const Rational& x, const EnumerationLimit& limit = {});
/// OTS <= x. False when no feasible solution exists.
bool decide_ots(const Network& net, const Rational& x, const EnumerationLimit& limit = {});

/// min(sum pgmax, sum over buses with plmax > 0 of min(plmax, pgmax + incident capacity)).
ExtRational upper_bound_msf(const Network& net);

/// Switch sets in enumeration order: by size, then lexicographically by line id.
/// Calls visit(indices into net.switchable_by_id()) until it returns false.
template <typename Visit>
void for_each_switch_set(std::size_t count, Visit&& visit) {
  std::vector<std::size_t> pick;
  for (std::size_t k = 0; k <= count; ++k) {
    pick.resize(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = i;
    for (;;) {
      if (!visit(std::span<const std::size_t>(pick))) return;
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == count - k + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
}

}  // namespace ldcswitch
