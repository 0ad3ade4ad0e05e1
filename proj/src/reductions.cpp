#include "ldcswitch/reductions.hpp"

#include <algorithm>
#include <set>

namespace ldcswitch {

namespace {

const ExtRational kInf = ExtRational::infinity();

// Accumulates buses and lines; lines get the default "a-b" id.
struct Builder {
  std::vector<Bus> buses;
  std::vector<Line> lines;
  ConstructionReport report;

  Bus& bus(const std::string& id) {
    buses.push_back({id, 0, 0, 0, 0});
    return buses.back();
  }
  void line(const std::string& a, const std::string& b, ExtRational capacity, Rational susceptance) {
    lines.push_back({default_line_id(a, b), a, b, std::move(capacity), std::move(susceptance), true});
  }
  void name(const std::string& symbol, const std::string& id) { report.names[symbol] = id; }
  void repair(std::string original, std::string adopted, std::string reason) {
    report.repairs.push_back({std::move(original), std::move(adopted), std::move(reason)});
  }
  ConstructionReport finish() {
    report.network = Network(std::move(buses), std::move(lines));
    return std::move(report);
  }
};

// Switch gadget for x with connector bus v (created by the caller).
void add_sch(Builder& b, const Rational& x, const std::string& prefix, const std::string& v) {
  const std::string g = prefix + "g";
  const std::string l = prefix + "l";
  b.bus(g).pgmax = x * 3;
  Bus& load = b.bus(l);
  load.plmin = x * 3;
  load.plmax = x * 3;
  b.line(g, l, x * 2, 1);
  b.line(g, v, x, 1);
  b.line(v, l, x, 1);
}

std::string str(std::int64_t v) { return std::to_string(v); }

}  // namespace

void validate(const SubsetSumInstance& instance) {
  if (instance.values.empty()) throw InstanceError("subset sum: empty value list");
  for (std::int64_t v : instance.values) {
    if (v < 1) throw InstanceError("subset sum: values must be positive, got " + str(v));
  }
  if (instance.target < 1) throw InstanceError("subset sum: target must be positive, got " + str(instance.target));
}

void validate(const GraphInstance& instance) {
  std::set<std::string> vertices;
  for (const std::string& v : instance.vertices) {
    if (v.empty()) throw InstanceError("graph: empty vertex name");
    if (!vertices.insert(v).second) throw InstanceError("graph: duplicate vertex '" + v + "'");
  }
  if (!vertices.count(instance.a)) throw InstanceError("graph: endpoint a '" + instance.a + "' is not a vertex");
  if (!vertices.count(instance.b)) throw InstanceError("graph: endpoint b '" + instance.b + "' is not a vertex");
  if (instance.a == instance.b) throw InstanceError("graph: a and b must differ");
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& [u, v] : instance.edges) {
    if (!vertices.count(u) || !vertices.count(v)) throw InstanceError("graph: edge " + u + "-" + v + " uses an unknown vertex");
    if (u == v) throw InstanceError("graph: self-loop at '" + u + "'");
    if (!seen.insert(std::minmax(u, v)).second) throw InstanceError("graph: repeated edge " + u + "-" + v);
  }
}

void validate(const M3daInstance& instance) {
  const std::size_t n = instance.x.size();
  if (n == 0) throw InstanceError("m3da: the sets must be nonempty");
  if (instance.y.size() != n || instance.w.size() != n) throw InstanceError("m3da: X, Y and W must have equal size");
  std::set<std::string> symbols;
  for (const auto* set : {&instance.x, &instance.y, &instance.w}) {
    for (const std::string& s : *set) {
      if (s.empty()) throw InstanceError("m3da: empty symbol");
      if (!symbols.insert(s).second) throw InstanceError("m3da: symbol '" + s + "' appears twice");
    }
  }
  if (symbols.count("l")) throw InstanceError("m3da: symbol 'l' is reserved for the load bus");
  if (instance.cost.size() != n * n * n) {
    throw InstanceError("m3da: expected " + std::to_string(n * n * n) + " triple costs, got " +
                        std::to_string(instance.cost.size()));
  }
  for (std::int64_t c : instance.cost) {
    if (c < 0) throw InstanceError("m3da: costs must be nonnegative, got " + str(c));
  }
}

ConstructionReport build_sch(const Rational& x, SchMode mode, bool literal) {
  if (x.sign() <= 0) throw InstanceError("switch gadget: x must be positive, got " + x.to_string());
  Builder b;
  b.bus("v");
  add_sch(b, x, "", "v");
  Bus& v = b.buses.front();
  if (mode == SchMode::Plus) {
    if (literal) {
      v.plmax = kInf;
    } else {
      v.pgmax = kInf;
      b.repair("plmax(v) = inf", "pgmax(v) = inf", "v is an unbounded generator; plmax bounds a load");
    }
  } else if (mode == SchMode::Minus) {
    v.plmax = kInf;
  }
  for (const char* id : {"g", "l", "v"}) b.name(id, id);
  b.name("gl", "g-l");
  b.name("gv", "g-v");
  b.name("vl", "v-l");
  return b.finish();
}

ConstructionReport build_cactus(const SubsetSumInstance& instance, bool literal) {
  validate(instance);
  const std::int64_t w = instance.target;
  const std::size_t n = instance.values.size();
  Builder b;
  Bus& g = b.bus("g");
  if (literal) {
    g.pgmax = Rational(2 + w);
  } else {
    g.pgmax = Rational(3 + 2 * w);
    b.repair("pgmax(g) = 2+w", "pgmax(g) = 3+2w", "g feeds both g-l (2+w) and g-x0 (w+1)");
  }
  Bus& l = b.bus("l");
  l.plmin = Rational(3 + w);
  l.plmax = Rational(3 + w);
  b.bus("x0");
  b.repair("bus v0", "v0 = x0", "v0 is used by the lines g-v0 and v0-l but never declared");
  b.line("g", "l", Rational(2 + w), 1);
  b.line("g", "x0", Rational(w + 1), 1);
  b.line("x0", "l", 1, 1);
  for (const char* id : {"g", "l", "x0"}) b.name(id, id);
  b.name("v0", "x0");
  for (std::size_t i = 1; i <= n; ++i) {
    const std::string xi = "x" + std::to_string(i);
    const std::string vi = "v" + std::to_string(i);
    b.bus(xi);
    b.bus(vi);
    b.line("x" + std::to_string(i - 1), xi, Rational(w), 1);
    b.line(xi, vi, kInf, 1);
    const std::string prefix = "s" + std::to_string(i) + ".";
    add_sch(b, Rational(instance.values[i - 1]), prefix, vi);
    b.name(xi, xi);
    b.name(vi, vi);
    b.name("Sch(x" + std::to_string(i) + ")", prefix);
  }
  return b.finish();
}

std::int64_t tree_m(const SubsetSumInstance& instance) {
  std::int64_t m = 1;
  for (std::int64_t v : instance.values) m += v;
  return m;
}

ConstructionReport build_two_level_tree(const SubsetSumInstance& instance, bool literal) {
  validate(instance);
  const std::int64_t w = instance.target;
  const std::int64_t m = tree_m(instance);
  const std::size_t n = instance.values.size() + 1;
  const auto a = [](std::size_t i) { return "a" + std::to_string(i); };
  const auto l = [](std::size_t i) { return "l" + std::to_string(i); };
  std::vector<std::int64_t> value(n + 2, 0);
  value[1] = 1;
  for (std::size_t i = 2; i <= n; ++i) value[i] = instance.values[i - 2];
  value[n + 1] = m + 1;
  const std::string gn = "g" + std::to_string(n + 1);

  Builder b;
  b.bus("g").pgmax = kInf;
  b.bus("g1");
  b.bus("t");
  b.bus(gn);
  for (std::size_t i = 1; i <= n + 1; ++i) {
    b.bus(a(i));
    b.bus(l(i)).plmax = Rational(value[i]);
  }

  b.line("g", "g1", Rational(m + 1), Rational(2 * m + 2));
  b.line("g1", a(1), Rational(m + 1), Rational(2 * m + 2));
  b.line("g", "t", Rational(w), Rational(w));
  b.line("g", gn, 1, Rational(2, static_cast<std::int64_t>(n + 1)));
  b.line(gn, a(n + 1), 1, Rational(2, static_cast<std::int64_t>(n + 1)));
  for (std::size_t i = literal ? 1 : 2; i <= n; ++i) {
    const auto k = static_cast<std::int64_t>(literal ? i : i - 1);
    b.line("t", a(i), Rational(value[i]), Rational(value[i], k));
  }
  for (std::size_t i = 1; i <= n + 1; ++i) b.line(a(i), l(i), Rational(value[i]), 1);
  for (std::size_t i = 2; i <= n + 1; ++i) b.line(a(i - 1), a(i), Rational(m), Rational(m));

  b.repair("line p-a_i", "t-a_i", "p is never declared; the lines are later called ta_i");
  b.repair("a_1, a_{n+1} undeclared", "a_1 = 1, a_{n+1} = m+1", "fixed by the capacities of a_1-l_1 and a_{n+1}-l_{n+1}");
  b.repair("a_{i-1}-a_i for 1 <= i <= n", "a_{i-1}-a_i for 2 <= i <= n+1", "a_0 does not exist");
  if (!literal) {
    b.repair("susceptance(t-a_i) = a_i/i for 1 <= i <= n", "susceptance(t-a_i) = a_i/(i-1) for 2 <= i <= n",
             "theta(t) = 1 and theta(a_i) = i, so the congested line needs a_i/(i-1)");
  }

  TreeAnnotation tree;
  tree.root = "g";
  tree.levels = {{"g"}, {"g1", "t", gn}, {}, {}};
  tree.tree_edges = {{"g", "g1"}, {"g", "t"}, {"g", gn}, {"g1", a(1)}};
  for (std::size_t i = 1; i <= n + 1; ++i) {
    tree.levels[2].push_back(a(i));
    tree.levels[3].push_back(l(i));
    if (i >= 2 && i <= n) tree.tree_edges.emplace_back("t", a(i));
    tree.tree_edges.emplace_back(a(i), l(i));
  }
  tree.tree_edges.emplace_back(gn, a(n + 1));
  b.report.tree = std::move(tree);

  for (const std::string& id : {std::string("g"), std::string("g1"), std::string("t"), gn}) b.name(id, id);
  for (std::size_t i = 1; i <= n + 1; ++i) {
    b.name(a(i), a(i));
    b.name(l(i), l(i));
  }
  return b.finish();
}

namespace {

void check_connected(const GraphInstance& instance) {
  std::map<std::string, std::vector<std::string>> adj;
  for (const auto& [u, v] : instance.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::set<std::string> seen = {instance.a};
  std::vector<std::string> stack = {instance.a};
  while (!stack.empty()) {
    const std::string u = stack.back();
    stack.pop_back();
    for (const std::string& v : adj[u]) {
      if (seen.insert(v).second) stack.push_back(v);
    }
  }
  if (!seen.count(instance.b)) throw InstanceError("graph: a and b are not connected");
}

ConstructionReport path_gadget(const GraphInstance& instance, bool literal, bool with_second_generator) {
  validate(instance);
  for (const std::string& v : instance.vertices) {
    if (v == "g" || v == "l" || v == "g'" || v == "l'") {
      throw InstanceError("graph: vertex name '" + v + "' is reserved for the gadget");
    }
  }
  check_connected(instance);
  const auto n = static_cast<std::int64_t>(instance.vertices.size());

  Builder b;
  for (const std::string& v : instance.vertices) {
    b.bus(v);
    b.name(v, v);
  }
  b.bus("g").pgmax = kInf;
  Bus& l = b.bus("l");
  l.plmax = kInf;
  if (with_second_generator || literal) {
    l.plmin = 3;
  } else {
    b.repair("plmin(l) = 3", "plmin(l) = 0",
             "used without minimum demand; once g' and l' are gone at most 2 can reach l");
  }
  for (const auto& [u, v] : instance.edges) b.line(u, v, 1, 1);
  b.line("g", instance.a, 1, 1);
  b.line(instance.b, "l", 1, 1);
  if (literal) {
    b.line("g", "l", Rational(1, n + 1), 1);
  } else {
    b.line("g", "l", 1, Rational(1, n + 1));
    b.repair("g-l: capacity 1/(n+1), susceptance 1", "g-l: capacity 1, susceptance 1/(n+1)",
             "flow(g-l) <= (t+2)/(n+1) must be reachable on a single path");
  }
  for (const char* id : {"g", "l"}) b.name(id, id);
  if (with_second_generator) {
    b.bus("g'").pgmax = kInf;
    b.bus("l'").plmax = kInf;
    b.line("g'", "l'", Rational(n), Rational(n));
    b.line("g'", "l", 1, 1);
    b.line("l'", "l", 1, 1);
    for (const char* id : {"g'", "l'"}) b.name(id, id);
  }
  return b.finish();
}

}  // namespace

ConstructionReport build_longest_path(const GraphInstance& instance, bool literal) {
  return path_gadget(instance, literal, true);
}

ConstructionReport build_hamiltonian(const GraphInstance& instance, bool literal) {
  return path_gadget(instance, literal, false);
}

std::string m3da_triple_bus(const M3daInstance& instance, std::size_t i, std::size_t j, std::size_t k) {
  return "t(" + instance.x[i] + "," + instance.y[j] + "," + instance.w[k] + ")";
}

ConstructionReport build_m3da(const M3daInstance& instance, bool literal) {
  validate(instance);
  const std::size_t n = instance.size();
  const auto triples = static_cast<std::int64_t>(n * n * n);
  const auto elements = static_cast<std::int64_t>(3 * n);
  Builder b;
  Bus& l = b.bus("l");
  const Rational demand(literal ? 3 * triples + elements : 5 * triples + elements);
  l.plmin = demand;
  l.plmax = demand;
  b.name("l", "l");
  for (const auto* set : {&instance.x, &instance.y, &instance.w}) {
    for (const std::string& r : *set) {
      b.bus(r);
      b.line(r, "l", 1, 1);
      b.name(r, r);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const std::string t = m3da_triple_bus(instance, i, j, k);
        Bus& tb = b.bus(t);
        tb.pgmax = 3;
        tb.cost = Rational(instance.d(i, j, k), 3);
        b.bus(t + ".g").pgmax = 5;
        b.bus(t + ".d");
        b.line(t, t + ".g", literal ? 3 : 5, 1);
        b.line(t, "l", 5, 1);
        b.line(t, t + ".d", 3, 1);
        for (const std::string& r : {instance.x[i], instance.y[j], instance.w[k]}) b.line(t + ".d", r, 1, 1);
        b.name(t, t);
      }
    }
  }
  if (!literal) {
    b.repair("capacity(t-t_g) = 3", "capacity(t-t_g) = 5", "t_g delivers 5 over this line in the exhibited solution");
    b.repair("plmin(l) = plmax(l) = 3|T|+|R|", "plmin(l) = plmax(l) = 5|T|+|R|",
             "every line at l is congested: |T| lines of capacity 5 and |R| of capacity 1");
  }
  return b.finish();
}

OperatingPoint m3da_assignment_point(const M3daInstance& instance,
                                     const std::vector<std::pair<std::size_t, std::size_t>>& assignment,
                                     bool literal) {
  validate(instance);
  const std::size_t n = instance.size();
  if (assignment.size() != n) throw InstanceError("m3da: assignment must cover every element of X");
  const auto triples = static_cast<std::int64_t>(n * n * n);
  const auto elements = static_cast<std::int64_t>(3 * n);
  OperatingPoint op;
  const auto set = [&](const std::string& id, Rational theta, Rational gen, Rational load) {
    op.theta[id] = std::move(theta);
    op.pgen[id] = std::move(gen);
    op.pload[id] = std::move(load);
  };
  set("l", 5, 0, Rational(literal ? 3 * triples + elements : 5 * triples + elements));
  for (const auto* s : {&instance.x, &instance.y, &instance.w}) {
    for (const std::string& r : *s) set(r, 4, 0, 0);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const std::string t = m3da_triple_bus(instance, i, j, k);
        const bool chosen = assignment[i] == std::make_pair(j, k);
        set(t, 0, chosen ? 3 : 0, 0);
        set(t + ".g", -5, 5, 0);
        // An unused t_d sits at the element angle so its element lines stay idle.
        set(t + ".d", chosen || literal ? 3 : 4, 0, 0);
        if (!chosen) op.switched.insert(default_line_id(t, t + ".d"));
      }
    }
  }
  return op;
}

ConstructionReport msf_to_ots(const Network& net) {
  std::vector<Bus> buses = net.buses();
  for (Bus& b : buses) {
    const bool generator = b.pgmax.sign() > 0;
    const bool load = b.plmax.sign() > 0;
    if (generator && load) throw InstanceError("bus '" + b.id + "' is both a generator and a load");
    if (load) {
      if (b.plmax.is_infinite()) throw InstanceError("bus '" + b.id + "' has unbounded plmax");
      b.pgmax = b.plmax - b.plmin;
      b.plmin = b.plmax;
      b.cost = 1;
    } else {
      b.cost = 0;
    }
  }
  ConstructionReport report;
  report.network = Network(std::move(buses), net.lines());
  for (const Bus& b : net.buses()) report.names[b.id] = b.id;
  return report;
}

}  // namespace ldcswitch
