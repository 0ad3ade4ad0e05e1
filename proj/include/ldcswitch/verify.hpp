#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ldcswitch/network.hpp"
#include "ldcswitch/reductions.hpp"
#include "ldcswitch/solvers.hpp"

namespace ldcswitch {

struct VerifyOptions {
  /// Build the gadgets with their textbook parameters instead of the repaired ones.
  bool literal = false;
  /// Instances evaluated concurrently; the report order never changes.
  unsigned jobs = 1;
  std::size_t cap = 25;
};

struct InstanceResult {
  std::string instance;
  std::string solver;
  std::string oracle;
  bool match = false;
  /// Why the instance does not match (empty on a match).
  std::string detail;
  /// Solver-side witness, kept for mismatches when one exists.
  std::optional<OperatingPoint> witness;
  std::string oracle_witness;
  /// Failed solver invariants (witness validity, MPF <= MSF <= bound).
  std::vector<std::string> invariant_failures;
};

struct VerificationReport {
  std::string theorem;
  std::vector<InstanceResult> instances;
  /// Empirical observations (e.g. the longest-path constant) and repairs in use.
  std::vector<std::string> findings;

  [[nodiscard]] bool all_match() const;
  [[nodiscard]] bool invariants_hold() const;
};

/// Checks the switch gadget: the connector of the plus variant generates
/// exactly 0 or x, switching g-v realises x, and the minus variant never
/// consumes at v. Each x yields three report rows.
VerificationReport verify_sch(const std::vector<Rational>& xs, const VerifyOptions& options = {});

struct CactusSpace {
  std::int64_t max_elem = 4;
  std::size_t max_card = 3;
  std::int64_t max_target = 6;
};

/// Every nonempty M from {1..max_elem} with |M| <= max_card and 1 <= w <= max_target.
std::vector<SubsetSumInstance> cactus_instances(const CactusSpace& space);

/// Cactus feasibility against the subset-sum oracle.
VerificationReport verify_cacti(const std::vector<SubsetSumInstance>& instances, const VerifyOptions& options = {});

std::vector<SubsetSumInstance> default_tree_instances();

/// Tree MSF equals m + 2 + w exactly on the solvable instances (and never exceeds it).
VerificationReport verify_tree(const std::vector<SubsetSumInstance>& instances, const VerifyOptions& options = {});

/// Connected graphs on 2..max_vertices vertices v1..vn with a = v1 and
/// b = vn, one per isomorphism class fixing a and b.
std::vector<GraphInstance> connected_graphs(std::size_t max_vertices);

/// MSF minus the longest a-b path length is one constant over all graphs.
VerificationReport verify_longest_path(const std::vector<GraphInstance>& graphs, const VerifyOptions& options = {});

/// MSF = 2 exactly on the graphs with a Hamiltonian a-b path.
VerificationReport verify_hamiltonian(const std::vector<GraphInstance>& graphs, const VerifyOptions& options = {});

/// 1x1x1 instances with d in {0, 1, 7}.
std::vector<M3daInstance> default_m3da_instances();
/// 2x2x2 instances with seeded costs; too large to enumerate, used for the
/// exhibited-solution check only.
std::vector<M3daInstance> m3da_witness_instances(std::uint64_t seed, std::size_t count);

/// OTS against the assignment oracle on `enumerated`; on every instance the
/// operating point built from the optimal assignment must be feasible and
/// cost exactly the assignment cost.
VerificationReport verify_m3da(const std::vector<M3daInstance>& enumerated,
                               const std::vector<M3daInstance>& exhibited_only, const VerifyOptions& options = {});

/// sum plmax - MSF(N) = OTS(msf_to_ots(N)) on random generator/load-disjoint networks.
VerificationReport verify_mots(std::uint64_t seed, std::size_t count, const VerifyOptions& options = {});

/// MSF >= sum plmin exactly when a feasible switching exists, on random networks.
VerificationReport verify_feas_msf(std::uint64_t seed, std::size_t count, const VerifyOptions& options = {});

/// Solver invariants of an MSF result: witness feasibility, value = load,
/// MPF <= MSF <= upper_bound_msf. Returns the failures.
std::vector<std::string> audit_msf(const Network& net, const SolveResult& msf);
std::vector<std::string> audit_ots(const Network& net, const SolveResult& ots);

}  // namespace ldcswitch
