#include "ldcswitch/io.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace ldcswitch {

using nlohmann::json;

namespace {

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed document: ") + e.what());
  }
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing field \"" + key + "\"");
  return *it;
}

std::string text_field(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_string()) throw ParseError(where + "." + key + ": expected a string");
  return v.get<std::string>();
}

ExtRational number(const json& v, const std::string& where) {
  if (v.is_number_integer()) return ExtRational(v.get<std::int64_t>());
  if (!v.is_string()) throw ParseError(where + ": expected a \"p/q\" string, an integer or \"inf\"");
  try {
    return ExtRational::parse(v.get<std::string>());
  } catch (const std::exception& e) {
    throw ParseError(where + ": " + e.what());
  }
}

ExtRational optional_number(const json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) return ExtRational(0);
  return number(*it, where + "." + key);
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      throw ParseError(where + ": unknown field \"" + key + "\"");
    }
  }
}

const json& array_field(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_array()) throw ParseError(where + "." + key + ": expected a list");
  return v;
}

std::vector<std::string> string_list(const json& v, const std::string& where) {
  if (!v.is_array()) throw ParseError(where + ": expected a list");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_string()) throw ParseError(where + "[" + std::to_string(i) + "]: expected a string");
    out.push_back(v[i].get<std::string>());
  }
  return out;
}

std::pair<std::string, std::string> string_pair(const json& v, const std::string& where) {
  const std::vector<std::string> p = string_list(v, where);
  if (p.size() != 2) throw ParseError(where + ": expected two names");
  return {p[0], p[1]};
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace

Network parse_network(const std::string& text) {
  const json doc = parse_document(text);
  check_keys(doc, {"buses", "lines"}, "network");
  std::vector<Bus> buses;
  const json& bus_list = array_field(doc, "buses", "network");
  for (std::size_t i = 0; i < bus_list.size(); ++i) {
    const std::string where = "buses[" + std::to_string(i) + "]";
    const json& b = bus_list[i];
    check_keys(b, {"id", "plmin", "plmax", "pgmax", "cost"}, where);
    buses.push_back({text_field(b, "id", where), optional_number(b, "plmin", where), optional_number(b, "plmax", where),
                     optional_number(b, "pgmax", where), optional_number(b, "cost", where)});
  }
  std::vector<Line> lines;
  if (doc.contains("lines")) {
    const json& line_list = array_field(doc, "lines", "network");
    for (std::size_t i = 0; i < line_list.size(); ++i) {
      const std::string where = "lines[" + std::to_string(i) + "]";
      const json& l = line_list[i];
      check_keys(l, {"id", "a", "b", "capacity", "susceptance", "switchable"}, where);
      Line line;
      if (l.contains("id")) line.id = text_field(l, "id", where);
      line.a = text_field(l, "a", where);
      line.b = text_field(l, "b", where);
      line.capacity = number(field(l, "capacity", where), where + ".capacity");
      const ExtRational s = number(field(l, "susceptance", where), where + ".susceptance");
      if (s.is_infinite()) throw ParseError(where + ".susceptance: must be finite");
      line.susceptance = s.value();
      if (l.contains("switchable")) {
        if (!l["switchable"].is_boolean()) throw ParseError(where + ".switchable: expected true or false");
        line.switchable = l["switchable"].get<bool>();
      }
      lines.push_back(std::move(line));
    }
  }
  try {
    return Network(std::move(buses), std::move(lines));
  } catch (const NetworkError& e) {
    throw ParseError(e.what());
  }
}

std::string write_network(const Network& net) {
  json doc;
  doc["buses"] = json::array();
  for (const Bus& b : net.buses()) {
    doc["buses"].push_back({{"id", b.id},
                            {"plmin", b.plmin.to_string()},
                            {"plmax", b.plmax.to_string()},
                            {"pgmax", b.pgmax.to_string()},
                            {"cost", b.cost.to_string()}});
  }
  doc["lines"] = json::array();
  for (const Line& l : net.lines()) {
    doc["lines"].push_back({{"id", l.id},
                            {"a", l.a},
                            {"b", l.b},
                            {"capacity", l.capacity.to_string()},
                            {"susceptance", l.susceptance.to_string()},
                            {"switchable", l.switchable}});
  }
  return dump(doc);
}

GraphInstance parse_graph(const std::string& text) {
  const json doc = parse_document(text);
  check_keys(doc, {"vertices", "edges", "a", "b"}, "graph");
  GraphInstance g;
  g.vertices = string_list(field(doc, "vertices", "graph"), "graph.vertices");
  const json& edges = array_field(doc, "edges", "graph");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    g.edges.push_back(string_pair(edges[i], "graph.edges[" + std::to_string(i) + "]"));
  }
  g.a = text_field(doc, "a", "graph");
  g.b = text_field(doc, "b", "graph");
  try {
    validate(g);
  } catch (const InstanceError& e) {
    throw ParseError(e.what());
  }
  return g;
}

std::string write_graph(const GraphInstance& graph) {
  json doc;
  doc["vertices"] = graph.vertices;
  doc["edges"] = json::array();
  for (const auto& [u, v] : graph.edges) doc["edges"].push_back({u, v});
  doc["a"] = graph.a;
  doc["b"] = graph.b;
  return dump(doc);
}

M3daInstance parse_m3da(const std::string& text) {
  const json doc = parse_document(text);
  check_keys(doc, {"X", "Y", "W", "d"}, "m3da");
  M3daInstance m;
  m.x = string_list(field(doc, "X", "m3da"), "m3da.X");
  m.y = string_list(field(doc, "Y", "m3da"), "m3da.Y");
  m.w = string_list(field(doc, "W", "m3da"), "m3da.W");
  const std::size_t n = m.x.size();
  if (m.y.size() != n || m.w.size() != n || n == 0) throw ParseError("m3da: X, Y and W must be nonempty and of equal size");
  const auto index = [](const std::vector<std::string>& set, const std::string& s, const std::string& where) {
    const auto it = std::find(set.begin(), set.end(), s);
    if (it == set.end()) throw ParseError(where + ": undeclared symbol '" + s + "'");
    return static_cast<std::size_t>(it - set.begin());
  };
  std::vector<std::optional<std::int64_t>> cost(n * n * n);
  const json& d = array_field(doc, "d", "m3da");
  for (std::size_t t = 0; t < d.size(); ++t) {
    const std::string where = "m3da.d[" + std::to_string(t) + "]";
    check_keys(d[t], {"x", "y", "w", "cost"}, where);
    const std::size_t i = index(m.x, text_field(d[t], "x", where), where + ".x");
    const std::size_t j = index(m.y, text_field(d[t], "y", where), where + ".y");
    const std::size_t k = index(m.w, text_field(d[t], "w", where), where + ".w");
    const ExtRational c = number(field(d[t], "cost", where), where + ".cost");
    if (c.is_infinite() || !c.value().is_integer()) throw ParseError(where + ".cost: expected an integer");
    auto& slot = cost[(i * n + j) * n + k];
    if (slot) throw ParseError(where + ": triple listed twice");
    slot = std::stoll(c.to_string());
  }
  for (std::size_t i = 0; i < cost.size(); ++i) {
    if (!cost[i]) {
      throw ParseError("m3da.d: missing triple (" + m.x[i / (n * n)] + "," + m.y[i / n % n] + "," + m.w[i % n] + ")");
    }
    m.cost.push_back(*cost[i]);
  }
  try {
    validate(m);
  } catch (const InstanceError& e) {
    throw ParseError(e.what());
  }
  return m;
}

std::string write_m3da(const M3daInstance& instance) {
  json doc;
  doc["X"] = instance.x;
  doc["Y"] = instance.y;
  doc["W"] = instance.w;
  doc["d"] = json::array();
  const std::size_t n = instance.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        doc["d"].push_back({{"x", instance.x[i]}, {"y", instance.y[j]}, {"w", instance.w[k]}, {"cost", instance.d(i, j, k)}});
      }
    }
  }
  return dump(doc);
}

TreeAnnotation parse_annotation(const std::string& text) {
  const json doc = parse_document(text);
  check_keys(doc, {"root", "tree_edges", "levels"}, "annotation");
  TreeAnnotation a;
  a.root = text_field(doc, "root", "annotation");
  const json& edges = array_field(doc, "tree_edges", "annotation");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    a.tree_edges.push_back(string_pair(edges[i], "annotation.tree_edges[" + std::to_string(i) + "]"));
  }
  const json& levels = array_field(doc, "levels", "annotation");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    a.levels.push_back(string_list(levels[i], "annotation.levels[" + std::to_string(i) + "]"));
  }
  return a;
}

std::string write_annotation(const TreeAnnotation& annotation) {
  json doc;
  doc["root"] = annotation.root;
  doc["tree_edges"] = json::array();
  for (const auto& [p, c] : annotation.tree_edges) doc["tree_edges"].push_back({p, c});
  doc["levels"] = annotation.levels;
  return dump(doc);
}

namespace {

json point_json(const OperatingPoint& op) {
  json doc;
  doc["switched"] = json::array();
  for (const std::string& id : op.switched) doc["switched"].push_back(id);
  doc["buses"] = json::array();
  for (const auto& [id, theta] : op.theta) {
    const auto gen = op.pgen.find(id);
    const auto load = op.pload.find(id);
    doc["buses"].push_back({{"id", id},
                            {"theta", theta.to_string()},
                            {"pgen", gen == op.pgen.end() ? "0" : gen->second.to_string()},
                            {"pload", load == op.pload.end() ? "0" : load->second.to_string()}});
  }
  return doc;
}

// Left-aligned columns separated by two spaces.
std::string table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    width.resize(std::max(width.size(), row.size()), 0);
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      line += row[c];
      if (c + 1 < row.size()) line += std::string(width[c] - row[c].size() + 2, ' ');
    }
    out += line + "\n";
  }
  return out;
}

}  // namespace

std::string write_operating_point(const OperatingPoint& op) { return dump(point_json(op)); }

std::string render_operating_point(const OperatingPoint& op) {
  std::string out = "switched: {";
  bool first = true;
  for (const std::string& id : op.switched) {
    out += (first ? "" : ", ") + id;
    first = false;
  }
  out += "}\n";
  std::vector<std::vector<std::string>> rows = {{"bus", "theta", "pgen", "pload"}};
  for (const auto& [id, theta] : op.theta) {
    const auto gen = op.pgen.find(id);
    const auto load = op.pload.find(id);
    rows.push_back({id, theta.to_string(), gen == op.pgen.end() ? "0" : gen->second.to_string(),
                    load == op.pload.end() ? "0" : load->second.to_string()});
  }
  return out + table(rows);
}

std::string render_report(const VerificationReport& report) {
  std::size_t matched = 0;
  for (const InstanceResult& r : report.instances) matched += r.match;
  std::ostringstream out;
  out << "verify " << report.theorem << ": " << report.instances.size() << " instances, " << matched << " match, "
      << report.instances.size() - matched << " mismatch\n";
  std::vector<std::vector<std::string>> rows = {{"#", "instance", "solver", "oracle", "match"}};
  for (std::size_t i = 0; i < report.instances.size(); ++i) {
    const InstanceResult& r = report.instances[i];
    rows.push_back({std::to_string(i + 1), r.instance, r.solver, r.oracle, r.match ? "yes" : "NO"});
  }
  out << table(rows);
  for (const std::string& f : report.findings) out << "finding: " << f << "\n";
  for (std::size_t i = 0; i < report.instances.size(); ++i) {
    const InstanceResult& r = report.instances[i];
    if (r.match && r.invariant_failures.empty()) continue;
    out << "\n#" << i + 1 << " " << r.instance << "\n";
    if (!r.match) {
      out << "  mismatch: " << r.detail << "\n";
      out << "  oracle witness: " << r.oracle_witness << "\n";
      if (r.witness) {
        std::istringstream lines(render_operating_point(*r.witness));
        out << "  solver witness:\n";
        for (std::string line; std::getline(lines, line);) out << "    " << line << "\n";
      } else {
        out << "  solver witness: none\n";
      }
    }
    for (const std::string& f : r.invariant_failures) out << "  invariant violated: " << f << "\n";
  }
  out << "summary: " << (report.all_match() ? "all-match" : "MISMATCH")
      << (report.invariants_hold() ? "" : ", solver invariants violated") << "\n";
  return out.str();
}

std::string render_report_structured(const VerificationReport& report) {
  json doc;
  doc["theorem"] = report.theorem;
  doc["all_match"] = report.all_match();
  doc["invariants_hold"] = report.invariants_hold();
  doc["findings"] = report.findings;
  doc["instances"] = json::array();
  for (const InstanceResult& r : report.instances) {
    json item = {{"instance", r.instance},
                 {"solver", r.solver},
                 {"oracle", r.oracle},
                 {"match", r.match},
                 {"oracle_witness", r.oracle_witness},
                 {"invariant_failures", r.invariant_failures}};
    if (!r.match) item["detail"] = r.detail;
    if (r.witness) item["witness"] = point_json(*r.witness);
    doc["instances"].push_back(std::move(item));
  }
  return dump(doc);
}

}  // namespace ldcswitch
