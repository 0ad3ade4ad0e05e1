#include "ldcswitch/network.hpp"

#include <algorithm>
#include <numeric>

namespace ldcswitch {

std::string default_line_id(std::string_view a, std::string_view b) {
  std::string out(a);
  out += '-';
  out += b;
  return out;
}

namespace {

void check_nonnegative(const ExtRational& v, const std::string& what) {
  if (v.sign() < 0) throw NetworkError(what + " must be nonnegative, got " + v.to_string());
}

}  // namespace

Network::Network(std::vector<Bus> buses, std::vector<Line> lines) : buses_(std::move(buses)), lines_(std::move(lines)) {
  for (std::size_t i = 0; i < buses_.size(); ++i) {
    const Bus& b = buses_[i];
    if (b.id.empty()) throw NetworkError("bus with empty id");
    if (!bus_index_.emplace(b.id, i).second) throw NetworkError("duplicate bus id '" + b.id + "'");
    const std::string where = "bus '" + b.id + "': ";
    check_nonnegative(b.plmin, where + "plmin");
    check_nonnegative(b.plmax, where + "plmax");
    check_nonnegative(b.pgmax, where + "pgmax");
    check_nonnegative(b.cost, where + "cost");
    if (b.plmin.is_infinite()) throw NetworkError(where + "plmin must be finite");
    if (b.plmax < b.plmin) {
      throw NetworkError(where + "plmin " + b.plmin.to_string() + " exceeds plmax " + b.plmax.to_string());
    }
  }

  incident_.resize(buses_.size());
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < lines_.size(); ++i) {
    Line& l = lines_[i];
    if (l.id.empty()) l.id = default_line_id(l.a, l.b);
    if (!line_index_.emplace(l.id, i).second) throw NetworkError("duplicate line id '" + l.id + "'");
    const std::string where = "line '" + l.id + "': ";
    const auto a = bus_index_.find(l.a);
    const auto b = bus_index_.find(l.b);
    if (a == bus_index_.end()) throw NetworkError(where + "unknown bus '" + l.a + "'");
    if (b == bus_index_.end()) throw NetworkError(where + "unknown bus '" + l.b + "'");
    if (a->second == b->second) throw NetworkError(where + "self-loop at '" + l.a + "'");
    if (l.capacity.sign() <= 0) throw NetworkError(where + "capacity must be positive");
    if (l.susceptance.sign() <= 0) throw NetworkError(where + "susceptance must be positive");
    const auto key = std::minmax(a->second, b->second);
    if (!pairs.insert(key).second) {
      throw NetworkError(where + "parallel line between '" + l.a + "' and '" + l.b + "'");
    }
    ends_.emplace_back(a->second, b->second);
    incident_[a->second].push_back(i);
    incident_[b->second].push_back(i);
  }

  buses_by_id_.resize(buses_.size());
  std::iota(buses_by_id_.begin(), buses_by_id_.end(), std::size_t{0});
  std::sort(buses_by_id_.begin(), buses_by_id_.end(),
            [&](std::size_t x, std::size_t y) { return buses_[x].id < buses_[y].id; });
  for (std::size_t i = 0; i < lines_.size(); ++i) {
    if (lines_[i].switchable) switchable_by_id_.push_back(i);
  }
  std::sort(switchable_by_id_.begin(), switchable_by_id_.end(),
            [&](std::size_t x, std::size_t y) { return lines_[x].id < lines_[y].id; });
}

std::optional<std::size_t> Network::find_bus(std::string_view id) const {
  const auto it = bus_index_.find(std::string(id));
  if (it == bus_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Network::find_line(std::string_view id) const {
  const auto it = line_index_.find(std::string(id));
  if (it == line_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Network::line_between(std::string_view a, std::string_view b) const {
  const auto ia = find_bus(a);
  const auto ib = find_bus(b);
  if (!ia || !ib) return std::nullopt;
  for (std::size_t l : incident_[*ia]) {
    if (ends_[l].first == *ib || ends_[l].second == *ib) return l;
  }
  return std::nullopt;
}

const Bus& Network::bus(std::string_view id) const {
  const auto i = find_bus(id);
  if (!i) throw NetworkError("unknown bus '" + std::string(id) + "'");
  return buses_[*i];
}

bool operator==(const Bus& a, const Bus& b) {
  return a.id == b.id && a.plmin == b.plmin && a.plmax == b.plmax && a.pgmax == b.pgmax && a.cost == b.cost;
}

bool operator==(const Line& a, const Line& b) {
  return a.id == b.id && a.a == b.a && a.b == b.b && a.capacity == b.capacity && a.susceptance == b.susceptance &&
         a.switchable == b.switchable;
}

bool operator==(const Network& a, const Network& b) { return a.buses_ == b.buses_ && a.lines_ == b.lines_; }

OperatingPoint OperatingPoint::zero(const Network& net) {
  OperatingPoint op;
  for (const Bus& b : net.buses()) {
    op.theta.emplace(b.id, Rational());
    op.pgen.emplace(b.id, Rational());
    op.pload.emplace(b.id, Rational());
  }
  return op;
}

namespace {

void check_structure(const Network& net, const OperatingPoint& op) {
  const auto same_keys = [&](const std::map<std::string, Rational>& m, const char* name) {
    if (m.size() != net.bus_count()) {
      throw StructureMismatch(std::string(name) + " has " + std::to_string(m.size()) + " entries for " +
                              std::to_string(net.bus_count()) + " buses");
    }
    for (const auto& [id, v] : m) {
      if (!net.find_bus(id)) throw StructureMismatch(std::string(name) + " names unknown bus '" + id + "'");
    }
  };
  same_keys(op.theta, "theta");
  same_keys(op.pgen, "pgen");
  same_keys(op.pload, "pload");
}

}  // namespace

Rational line_flow(const Network& net, const OperatingPoint& op, std::string_view from, std::string_view to) {
  const auto line = net.line_between(from, to);
  if (!line) {
    throw NetworkError("no line between '" + std::string(from) + "' and '" + std::string(to) + "'");
  }
  const Line& l = net.lines()[*line];
  if (op.switched.count(l.id)) throw NetworkError("line '" + l.id + "' is switched off");
  return l.susceptance * (op.theta.at(std::string(to)) - op.theta.at(std::string(from)));
}

std::string_view to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::UnknownSwitchedLine:
      return "unknown-switched-line";
    case Violation::Kind::NotSwitchable:
      return "not-switchable";
    case Violation::Kind::Capacity:
      return "capacity";
    case Violation::Kind::LoadBounds:
      return "load-bounds";
    case Violation::Kind::GenerationBounds:
      return "generation-bounds";
    case Violation::Kind::Balance:
      return "balance";
  }
  return "unknown";
}

FeasibilityReport check_feasible(const Network& net, const OperatingPoint& op) {
  check_structure(net, op);
  FeasibilityReport report;
  auto flag = [&](Violation::Kind kind, const std::string& element, std::string detail) {
    report.violations.push_back({kind, element, std::move(detail)});
  };

  std::vector<char> off(net.line_count(), 0);
  for (const std::string& id : op.switched) {
    const auto l = net.find_line(id);
    if (!l) {
      flag(Violation::Kind::UnknownSwitchedLine, id, "not a line of the network");
      continue;
    }
    if (!net.lines()[*l].switchable) flag(Violation::Kind::NotSwitchable, id, "line is not switchable");
    off[*l] = 1;
  }

  std::vector<Rational> outflow(net.bus_count());
  for (std::size_t i = 0; i < net.line_count(); ++i) {
    if (off[i]) continue;
    const Line& l = net.lines()[i];
    const Rational flow = l.susceptance * (op.theta.at(l.b) - op.theta.at(l.a));
    if (l.capacity.is_finite() && l.capacity.value() < flow.abs()) {
      flag(Violation::Kind::Capacity, l.id, "|flow| " + flow.abs().to_string() + " > " + l.capacity.to_string());
    }
    outflow[net.from(i)] += flow;
    outflow[net.to(i)] -= flow;
  }

  for (std::size_t i = 0; i < net.bus_count(); ++i) {
    const Bus& b = net.buses()[i];
    const Rational& load = op.pload.at(b.id);
    const Rational& gen = op.pgen.at(b.id);
    if (ExtRational(load) < b.plmin || b.plmax < ExtRational(load)) {
      flag(Violation::Kind::LoadBounds, b.id,
           "pload " + load.to_string() + " outside [" + b.plmin.to_string() + ", " + b.plmax.to_string() + "]");
    }
    if (gen.sign() < 0 || b.pgmax < ExtRational(gen)) {
      flag(Violation::Kind::GenerationBounds, b.id,
           "pgen " + gen.to_string() + " outside [0, " + b.pgmax.to_string() + "]");
    }
    const Rational net_injection = gen - load;
    if (outflow[i] != net_injection) {
      flag(Violation::Kind::Balance, b.id,
           "outflow " + outflow[i].to_string() + " != pgen - pload " + net_injection.to_string());
    }
  }
  return report;
}

Rational total_load(const OperatingPoint& op) {
  Rational sum;
  for (const auto& [id, v] : op.pload) sum += v;
  return sum;
}

Rational total_generation(const OperatingPoint& op) {
  Rational sum;
  for (const auto& [id, v] : op.pgen) sum += v;
  return sum;
}

Rational total_cost(const Network& net, const OperatingPoint& op) {
  Rational sum;
  for (const auto& [id, v] : op.pgen) {
    if (v.is_zero()) continue;
    sum += net.bus(id).cost.value() * v;
  }
  return sum;
}

std::vector<std::vector<std::string>> active_components(const Network& net, const SwitchSet& switched) {
  std::vector<std::size_t> parent(net.bus_count());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  const auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < net.line_count(); ++i) {
    if (switched.count(net.lines()[i].id)) continue;
    parent[find(net.from(i))] = find(net.to(i));
  }
  std::map<std::size_t, std::vector<std::string>> groups;
  for (std::size_t b : net.buses_by_id()) {
    groups[find(b)].push_back(net.buses()[b].id);
  }
  std::vector<std::vector<std::string>> out;
  for (auto& [root, ids] : groups) out.push_back(std::move(ids));
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.front() < y.front(); });
  return out;
}

}  // namespace ldcswitch
