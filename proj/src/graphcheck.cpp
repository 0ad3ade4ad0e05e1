#include "ldcswitch/graphcheck.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace ldcswitch {

std::size_t max_degree(const Network& net) {
  std::size_t best = 0;
  for (std::size_t b = 0; b < net.bus_count(); ++b) best = std::max(best, net.incident(b).size());
  return best;
}

namespace {

std::size_t other_end(const Network& net, std::size_t line, std::size_t bus) {
  return net.from(line) == bus ? net.to(line) : net.from(line);
}

// Biconnected blocks as lists of line indices (Hopcroft-Tarjan with an edge stack).
std::vector<std::vector<std::size_t>> blocks_of(const Network& net) {
  const std::size_t n = net.bus_count();
  std::vector<std::size_t> disc(n, 0);
  std::vector<std::size_t> low(n, 0);
  std::size_t clock = 0;
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> out;

  std::function<void(std::size_t, std::size_t)> visit = [&](std::size_t u, std::size_t via) {
    disc[u] = low[u] = ++clock;
    for (std::size_t l : net.incident(u)) {
      if (l == via) continue;
      const std::size_t v = other_end(net, l, u);
      if (disc[v] == 0) {
        stack.push_back(l);
        visit(v, l);
        low[u] = std::min(low[u], low[v]);
        if (low[v] >= disc[u]) {
          std::vector<std::size_t> block;
          for (;;) {
            const std::size_t e = stack.back();
            stack.pop_back();
            block.push_back(e);
            if (e == l) break;
          }
          std::sort(block.begin(), block.end());
          out.push_back(std::move(block));
        }
      } else if (disc[v] < disc[u]) {
        stack.push_back(l);
        low[u] = std::min(low[u], disc[v]);
      }
    }
  };
  for (std::size_t b = 0; b < n; ++b) {
    if (disc[b] == 0) visit(b, net.line_count());
  }
  return out;
}

}  // namespace

StructureVerdict is_cactus(const Network& net) {
  StructureVerdict verdict;
  verdict.predicate = "cactus";
  if (net.bus_count() == 0) {
    verdict.holds = true;
    return verdict;
  }

  std::vector<char> reached(net.bus_count(), 0);
  std::vector<std::size_t> todo = {0};
  reached[0] = 1;
  while (!todo.empty()) {
    const std::size_t u = todo.back();
    todo.pop_back();
    for (std::size_t l : net.incident(u)) {
      const std::size_t v = other_end(net, l, u);
      if (!reached[v]) {
        reached[v] = 1;
        todo.push_back(v);
      }
    }
  }
  for (std::size_t b : net.buses_by_id()) {
    if (!reached[b]) {
      verdict.witness = net.buses()[b].id;
      return verdict;
    }
  }

  for (const std::vector<std::size_t>& block : blocks_of(net)) {
    std::map<std::size_t, std::size_t> degree;
    for (std::size_t l : block) {
      ++degree[net.from(l)];
      ++degree[net.to(l)];
    }
    if (block.size() > degree.size()) {
      // Every line of such a block lies on two cycles; report a chord when there is one.
      std::size_t pick = block.front();
      for (std::size_t l : block) {
        if (degree[net.from(l)] >= 3 && degree[net.to(l)] >= 3) {
          pick = l;
          break;
        }
      }
      verdict.witness = net.lines()[pick].id;
      verdict.blocks.clear();
      return verdict;
    }
    std::vector<std::string> ids;
    for (const auto& [bus, d] : degree) ids.push_back(net.buses()[bus].id);
    std::sort(ids.begin(), ids.end());
    verdict.blocks.push_back(std::move(ids));
  }
  std::sort(verdict.blocks.begin(), verdict.blocks.end());
  verdict.holds = true;
  return verdict;
}

StructureVerdict validate_two_level_tree(const Network& net, const TreeAnnotation& annotation, std::size_t max_level) {
  const std::size_t n = net.bus_count();
  std::vector<std::size_t> level(n, n);
  std::vector<std::size_t> position(n, 0);
  for (std::size_t k = 0; k < annotation.levels.size(); ++k) {
    for (std::size_t p = 0; p < annotation.levels[k].size(); ++p) {
      const std::string& id = annotation.levels[k][p];
      const auto b = net.find_bus(id);
      if (!b) throw AnnotationError("annotation names unknown bus '" + id + "'");
      if (level[*b] != n) throw AnnotationError("bus '" + id + "' appears twice in the level order");
      level[*b] = k;
      position[*b] = p;
    }
  }
  for (std::size_t b = 0; b < n; ++b) {
    if (level[b] == n) throw AnnotationError("bus '" + net.buses()[b].id + "' is missing from the level order");
  }
  if (annotation.levels.empty() || annotation.levels[0] != std::vector<std::string>{annotation.root}) {
    throw AnnotationError("level 0 must consist of the root alone");
  }

  std::vector<std::optional<std::size_t>> parent(n);
  std::vector<std::size_t> children(n, 0);
  std::vector<char> tree_line(net.line_count(), 0);
  for (const auto& [p, c] : annotation.tree_edges) {
    const auto pb = net.find_bus(p);
    const auto cb = net.find_bus(c);
    const auto line = net.line_between(p, c);
    if (!pb || !cb || !line) throw AnnotationError("tree edge " + p + "-" + c + " is not a line of the network");
    if (level[*cb] != level[*pb] + 1) throw AnnotationError("tree edge " + p + "-" + c + " does not go one level down");
    if (parent[*cb]) throw AnnotationError("bus '" + c + "' has two parents");
    parent[*cb] = *pb;
    ++children[*pb];
    tree_line[*line] = 1;
  }
  for (std::size_t b = 0; b < n; ++b) {
    if (level[b] > 0 && !parent[b]) throw AnnotationError("bus '" + net.buses()[b].id + "' has no parent");
  }

  StructureVerdict verdict;
  verdict.predicate = "two-level-tree";
  const auto fail = [&](std::string witness) {
    verdict.witness = std::move(witness);
    return verdict;
  };
  for (std::size_t b : net.buses_by_id()) {
    if (children[b] == 0 && net.buses()[b].plmax.sign() <= 0) return fail(net.buses()[b].id);
  }
  const std::size_t root = *net.find_bus(annotation.root);
  if (net.buses()[root].pgmax.sign() <= 0) return fail(annotation.root);
  for (std::size_t b : net.buses_by_id()) {
    if (b != root && net.buses()[b].pgmax.sign() > 0) return fail(net.buses()[b].id);
  }
  for (std::size_t k = 1; k < annotation.levels.size(); ++k) {
    for (std::size_t p = 1; p < annotation.levels[k].size(); ++p) {
      const std::size_t prev = *net.find_bus(annotation.levels[k][p - 1]);
      const std::size_t cur = *net.find_bus(annotation.levels[k][p]);
      if (position[*parent[cur]] < position[*parent[prev]]) return fail(annotation.levels[k][p]);
    }
  }
  for (std::size_t l = 0; l < net.line_count(); ++l) {
    if (tree_line[l]) continue;
    const std::size_t u = net.from(l);
    const std::size_t v = net.to(l);
    const std::size_t gap = position[u] > position[v] ? position[u] - position[v] : position[v] - position[u];
    if (level[u] != level[v] || level[u] > max_level || gap != 1) return fail(net.lines()[l].id);
  }
  verdict.holds = true;
  return verdict;
}

bool euler_planarity_necessary(const Network& net) {
  std::vector<std::size_t> parent(net.bus_count());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  const std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (std::size_t l = 0; l < net.line_count(); ++l) parent[find(net.from(l))] = find(net.to(l));
  std::map<std::size_t, std::pair<std::size_t, std::size_t>> count;  // buses, lines
  for (std::size_t b = 0; b < net.bus_count(); ++b) ++count[find(b)].first;
  for (std::size_t l = 0; l < net.line_count(); ++l) ++count[find(net.from(l))].second;
  for (const auto& [root, c] : count) {
    if (c.first >= 3 && c.second + 6 > 3 * c.first) return false;
  }
  return true;
}

}  // namespace ldcswitch
