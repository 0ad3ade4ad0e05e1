#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ldcswitch/network.hpp"

namespace ldcswitch {

/// An annotation that does not describe the network it is checked against.
class AnnotationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct StructureVerdict {
  std::string predicate;
  bool holds = false;
  /// Offending element when the predicate fails.
  std::string witness;
  /// Certifying decomposition (cactus: bus ids of each biconnected block).
  std::vector<std::vector<std::string>> blocks;
};

/// Spanning tree with a total order per level. levels[0] holds the root.
struct TreeAnnotation {
  std::string root;
  std::vector<std::pair<std::string, std::string>> tree_edges;  // parent, child
  std::vector<std::vector<std::string>> levels;
};

std::size_t max_degree(const Network& net);

/// Connected, and every line lies on at most one simple cycle.
StructureVerdict is_cactus(const Network& net);

/// Leaves of the tree are loads, the root is the only generator, the order
/// of each level follows the order of the parents, and every line outside
/// the tree joins neighbours of one level at depth <= max_level.
StructureVerdict validate_two_level_tree(const Network& net, const TreeAnnotation& annotation,
                                         std::size_t max_level = 2);

/// lines <= 3 * buses - 6 in every connected component with at least 3 buses.
bool euler_planarity_necessary(const Network& net);

}  // namespace ldcswitch
