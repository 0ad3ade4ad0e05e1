#include "ldcswitch/oracles.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>

namespace ldcswitch {

SubsetSumAnswer subset_sum_solvable(const SubsetSumInstance& instance) {
  validate(instance);
  const auto target = static_cast<std::size_t>(instance.target);
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  // via[s]: index of the value that first reached sum s.
  std::vector<std::size_t> via(target + 1, kNone);
  std::vector<char> reach(target + 1, 0);
  reach[0] = 1;
  for (std::size_t i = 0; i < instance.values.size(); ++i) {
    const auto v = static_cast<std::size_t>(instance.values[i]);
    if (v > target) continue;
    for (std::size_t s = target; s >= v; --s) {
      if (!reach[s] && reach[s - v]) {
        reach[s] = 1;
        via[s] = i;
      }
      if (s == v) break;
    }
  }
  SubsetSumAnswer answer;
  if (!reach[target]) return answer;
  answer.solvable = true;
  std::vector<std::size_t> picked;
  for (std::size_t s = target; s > 0; s -= static_cast<std::size_t>(instance.values[via[s]])) picked.push_back(via[s]);
  std::sort(picked.begin(), picked.end());
  for (std::size_t i : picked) answer.subset.push_back(instance.values[i]);
  return answer;
}

namespace {

struct Adjacency {
  std::vector<std::vector<std::size_t>> next;
  std::size_t a = 0;
  std::size_t b = 0;
};

Adjacency adjacency(const GraphInstance& instance) {
  validate(instance);
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < instance.vertices.size(); ++i) index[instance.vertices[i]] = i;
  Adjacency adj;
  adj.next.resize(instance.vertices.size());
  for (const auto& [u, v] : instance.edges) {
    adj.next[index[u]].push_back(index[v]);
    adj.next[index[v]].push_back(index[u]);
  }
  for (auto& n : adj.next) std::sort(n.begin(), n.end());
  adj.a = index[instance.a];
  adj.b = index[instance.b];
  return adj;
}

}  // namespace

PathAnswer longest_path(const GraphInstance& instance) {
  const Adjacency adj = adjacency(instance);
  std::vector<char> on_path(adj.next.size(), 0);
  std::vector<std::size_t> path = {adj.a};
  std::vector<std::size_t> best;
  on_path[adj.a] = 1;

  const auto search = [&](auto&& self, std::size_t u) -> void {
    if (u == adj.b) {
      if (path.size() > best.size()) best = path;
      return;
    }
    for (std::size_t v : adj.next[u]) {
      if (on_path[v]) continue;
      on_path[v] = 1;
      path.push_back(v);
      self(self, v);
      path.pop_back();
      on_path[v] = 0;
    }
  };
  search(search, adj.a);
  if (best.empty()) throw InstanceError("graph: a and b are not connected");

  PathAnswer answer;
  answer.length = best.size() - 1;
  for (std::size_t v : best) answer.path.push_back(instance.vertices[v]);
  return answer;
}

bool ham_path_exists(const GraphInstance& instance) {
  return longest_path(instance).length + 1 == instance.vertices.size();
}

AssignmentAnswer m3da_min(const M3daInstance& instance) {
  validate(instance);
  const std::size_t n = instance.size();
  if (n > kM3daOracleLimit) {
    throw InstanceError("m3da oracle: size " + std::to_string(n) + " exceeds the limit of " +
                        std::to_string(kM3daOracleLimit));
  }
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  AssignmentAnswer best;
  bool found = false;
  do {
    std::vector<std::size_t> q(n);
    std::iota(q.begin(), q.end(), std::size_t{0});
    do {
      std::int64_t cost = 0;
      for (std::size_t i = 0; i < n; ++i) cost += instance.d(i, p[i], q[i]);
      if (!found || cost < best.cost) {
        found = true;
        best.cost = cost;
        best.assignment.clear();
        for (std::size_t i = 0; i < n; ++i) best.assignment.emplace_back(p[i], q[i]);
      }
    } while (std::next_permutation(q.begin(), q.end()));
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

}  // namespace ldcswitch
