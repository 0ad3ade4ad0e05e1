#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ldcswitch/rational.hpp"

namespace ldcswitch {

/// Malformed network: bad bounds, dangling endpoints, duplicates, parallel lines.
class NetworkError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Bus {
  std::string id;
  ExtRational plmin;  // finite
  ExtRational plmax;
  ExtRational pgmax;
  ExtRational cost;
};

struct Line {
  std::string id;
  std::string a;
  std::string b;
  ExtRational capacity;  // > 0, may be +inf
  Rational susceptance;  // > 0
  bool switchable = true;
};

/// Default id for a line given only its endpoints.
std::string default_line_id(std::string_view a, std::string_view b);

/// A Linear DC network. Validated on construction and immutable afterwards.
class Network {
 public:
  Network() = default;
  Network(std::vector<Bus> buses, std::vector<Line> lines);

  [[nodiscard]] const std::vector<Bus>& buses() const noexcept { return buses_; }
  [[nodiscard]] const std::vector<Line>& lines() const noexcept { return lines_; }
  [[nodiscard]] std::size_t bus_count() const noexcept { return buses_.size(); }
  [[nodiscard]] std::size_t line_count() const noexcept { return lines_.size(); }

  [[nodiscard]] std::optional<std::size_t> find_bus(std::string_view id) const;
  [[nodiscard]] std::optional<std::size_t> find_line(std::string_view id) const;
  /// The line joining two buses (either orientation), if any.
  [[nodiscard]] std::optional<std::size_t> line_between(std::string_view a, std::string_view b) const;
  [[nodiscard]] const Bus& bus(std::string_view id) const;

  /// Endpoint bus indices of line i.
  [[nodiscard]] std::size_t from(std::size_t line) const { return ends_[line].first; }
  [[nodiscard]] std::size_t to(std::size_t line) const { return ends_[line].second; }
  /// Line indices incident to bus i, in line order.
  [[nodiscard]] const std::vector<std::size_t>& incident(std::size_t bus) const { return incident_[bus]; }

  /// Bus indices sorted by id.
  [[nodiscard]] const std::vector<std::size_t>& buses_by_id() const noexcept { return buses_by_id_; }
  /// Switchable line indices sorted by id.
  [[nodiscard]] const std::vector<std::size_t>& switchable_by_id() const noexcept { return switchable_by_id_; }

  friend bool operator==(const Network& a, const Network& b);

 private:
  std::vector<Bus> buses_;
  std::vector<Line> lines_;
  std::vector<std::pair<std::size_t, std::size_t>> ends_;
  std::vector<std::vector<std::size_t>> incident_;
  std::unordered_map<std::string, std::size_t> bus_index_;
  std::unordered_map<std::string, std::size_t> line_index_;
  std::vector<std::size_t> buses_by_id_;
  std::vector<std::size_t> switchable_by_id_;
};

bool operator==(const Bus& a, const Bus& b);
bool operator==(const Line& a, const Line& b);

/// Ids of switched-off lines.
using SwitchSet = std::set<std::string>;

/// Phase angles, generation and load per bus, plus the switched-off lines.
struct OperatingPoint {
  std::map<std::string, Rational> theta;
  std::map<std::string, Rational> pgen;
  std::map<std::string, Rational> pload;
  SwitchSet switched;

  /// All-zero point on the buses of net with nothing switched.
  static OperatingPoint zero(const Network& net);

  friend bool operator==(const OperatingPoint&, const OperatingPoint&) = default;
};

/// Thrown when an operating point does not describe exactly the network's buses.
class StructureMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Flow on the active line between from and to: s * (theta[to] - theta[from]).
Rational line_flow(const Network& net, const OperatingPoint& op, std::string_view from, std::string_view to);

struct Violation {
  enum class Kind { UnknownSwitchedLine, NotSwitchable, Capacity, LoadBounds, GenerationBounds, Balance };
  Kind kind;
  std::string element;  // bus or line id
  std::string detail;
};

std::string_view to_string(Violation::Kind kind);

struct FeasibilityReport {
  std::vector<Violation> violations;
  [[nodiscard]] bool valid() const noexcept { return violations.empty(); }
};

/// Exact check of every condition of a feasible solution. Throws
/// StructureMismatch if op is not defined on exactly the network's buses.
FeasibilityReport check_feasible(const Network& net, const OperatingPoint& op);

Rational total_load(const OperatingPoint& op);
Rational total_generation(const OperatingPoint& op);
/// Sum of cost * pgen. Throws InfiniteArithmetic if a generating bus has infinite cost.
Rational total_cost(const Network& net, const OperatingPoint& op);

/// Connected components of the active topology, each listed by bus id in
/// ascending order; components ordered by their smallest id.
std::vector<std::vector<std::string>> active_components(const Network& net, const SwitchSet& switched);

}  // namespace ldcswitch
