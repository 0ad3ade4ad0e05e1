#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ldcswitch/graphcheck.hpp"
#include "ldcswitch/network.hpp"

namespace ldcswitch {

class InstanceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SubsetSumInstance {
  std::vector<std::int64_t> values;
  std::int64_t target = 0;
};

struct GraphInstance {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::string>> edges;
  std::string a;
  std::string b;
};

/// Triple costs are stored at cost[(i * n + j) * n + k] for X[i], Y[j], W[k].
struct M3daInstance {
  std::vector<std::string> x;
  std::vector<std::string> y;
  std::vector<std::string> w;
  std::vector<std::int64_t> cost;

  [[nodiscard]] std::size_t size() const noexcept { return x.size(); }
  [[nodiscard]] std::int64_t d(std::size_t i, std::size_t j, std::size_t k) const {
    return cost[(i * size() + j) * size() + k];
  }
};

void validate(const SubsetSumInstance& instance);
void validate(const GraphInstance& instance);
void validate(const M3daInstance& instance);

/// A parameter of the textbook construction that was replaced.
struct Repair {
  std::string original;
  std::string adopted;
  std::string reason;
};

struct ConstructionReport {
  Network network;
  /// Instance symbol -> bus or line id.
  std::map<std::string, std::string> names;
  std::vector<Repair> repairs;
  std::optional<TreeAnnotation> tree;
};

enum class SchMode { Plain, Plus, Minus };

/// With literal = true the textbook parameters are used as written, except
/// where they are undefined (undeclared buses, missing values); only those
/// repairs are then listed.
ConstructionReport build_sch(const Rational& x, SchMode mode, bool literal = false);
ConstructionReport build_cactus(const SubsetSumInstance& instance, bool literal = false);
ConstructionReport build_two_level_tree(const SubsetSumInstance& instance, bool literal = false);
ConstructionReport build_longest_path(const GraphInstance& instance, bool literal = false);
ConstructionReport build_hamiltonian(const GraphInstance& instance, bool literal = false);
ConstructionReport build_m3da(const M3daInstance& instance, bool literal = false);

/// Every load becomes fixed at plmax with a cost-1 generator for the slack;
/// original generators cost 0. Requires generator and load buses to be
/// disjoint and plmax finite.
ConstructionReport msf_to_ots(const Network& net);

/// m = 1 + sum of the values.
std::int64_t tree_m(const SubsetSumInstance& instance);

/// The operating point exhibited for an assignment of the M3DA gadget
/// (assignment[i] = (j, k) pairs X[i] with Y[j] and W[k]).
OperatingPoint m3da_assignment_point(const M3daInstance& instance,
                                     const std::vector<std::pair<std::size_t, std::size_t>>& assignment,
                                     bool literal = false);

std::string m3da_triple_bus(const M3daInstance& instance, std::size_t i, std::size_t j, std::size_t k);

}  // namespace ldcswitch
