#include "ldcswitch/solvers.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <thread>
#include <unordered_map>

namespace ldcswitch {

namespace {

// Subsets are evaluated in rounds of this many; pruning and caching only use
// what was known at the start of a round, so results and stats do not depend
// on the worker count.
constexpr std::size_t kRoundSize = 512;

bool is_terminal(const Bus& b) { return b.pgmax.sign() > 0 || b.plmax.sign() > 0; }

std::vector<char> switched_flags(const Network& net, const SwitchSet& switched) {
  std::vector<char> off(net.line_count(), 0);
  for (const std::string& id : switched) {
    const auto l = net.find_line(id);
    if (!l) throw NetworkError("switched line '" + id + "' is not in the network");
    if (!net.lines()[*l].switchable) throw NetworkError("line '" + id + "' is not switchable");
    off[*l] = 1;
  }
  return off;
}

SwitchSet switch_set_of(const Network& net, const std::vector<char>& off) {
  SwitchSet s;
  for (std::size_t i = 0; i < off.size(); ++i) {
    if (off[i]) s.insert(net.lines()[i].id);
  }
  return s;
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

// Builds the LP over the buses flagged in bus_in, using the lines flagged in
// line_in (which must join buses in bus_in).
TopologyLp build_lp(const Network& net, const std::vector<char>& bus_in, const std::vector<char>& line_in,
                    Objective objective) {
  TopologyLp out;
  const std::size_t nb = net.bus_count();
  out.theta.assign(nb, 0);
  out.pgen.assign(nb, std::nullopt);
  out.pload.assign(nb, std::nullopt);

  UnionFind uf(nb);
  for (std::size_t l = 0; l < net.line_count(); ++l) {
    if (line_in[l]) uf.unite(net.from(l), net.to(l));
  }
  std::vector<std::size_t> anchor_of(nb, nb);
  for (std::size_t b : net.buses_by_id()) {
    if (!bus_in[b]) continue;
    const std::size_t root = uf.find(b);
    if (anchor_of[root] == nb) {
      anchor_of[root] = b;
      out.anchors.push_back(b);
    }
  }

  LinearProgram& lp = out.lp;
  for (std::size_t b = 0; b < nb; ++b) {
    if (!bus_in[b]) continue;
    const Bus& bus = net.buses()[b];
    const bool anchored = anchor_of[uf.find(b)] == b;
    out.theta[b] = lp.add_variable("theta[" + bus.id + "]", anchored ? Bound(Rational()) : std::nullopt,
                                   anchored ? Bound(Rational()) : std::nullopt);
    if (bus.pgmax.sign() > 0) {
      out.pgen[b] = lp.add_variable("pgen[" + bus.id + "]", Rational(),
                                    bus.pgmax.is_finite() ? Bound(bus.pgmax.value()) : std::nullopt);
    }
    if (bus.plmax.sign() > 0) {
      out.pload[b] = lp.add_variable("pload[" + bus.id + "]", bus.plmin.value(),
                                     bus.plmax.is_finite() ? Bound(bus.plmax.value()) : std::nullopt);
    }
  }

  for (std::size_t l = 0; l < net.line_count(); ++l) {
    if (!line_in[l]) continue;
    const Line& line = net.lines()[l];
    if (line.capacity.is_infinite()) continue;
    const std::vector<Term> flow = {{out.theta[net.to(l)], line.susceptance}, {out.theta[net.from(l)], -line.susceptance}};
    lp.add_constraint(flow, Relation::LessEqual, line.capacity.value());
    lp.add_constraint(flow, Relation::GreaterEqual, -line.capacity.value());
  }

  for (std::size_t b = 0; b < nb; ++b) {
    if (!bus_in[b]) continue;
    std::vector<Term> terms;
    Rational self;
    for (std::size_t l : net.incident(b)) {
      if (!line_in[l]) continue;
      const Rational& s = net.lines()[l].susceptance;
      const std::size_t other = net.from(l) == b ? net.to(l) : net.from(l);
      terms.push_back({out.theta[other], s});
      self -= s;
    }
    if (!terms.empty()) terms.push_back({out.theta[b], self});
    if (out.pgen[b]) terms.push_back({*out.pgen[b], -1});
    if (out.pload[b]) terms.push_back({*out.pload[b], 1});
    if (terms.empty()) continue;
    lp.add_constraint(std::move(terms), Relation::Equal, 0);
  }

  std::vector<Term> obj;
  for (std::size_t b = 0; b < nb; ++b) {
    if (!bus_in[b]) continue;
    if (objective == Objective::MaxLoad && out.pload[b]) obj.push_back({*out.pload[b], 1});
    if (objective == Objective::MinCost && out.pgen[b]) {
      const ExtRational& cost = net.buses()[b].cost;
      if (cost.is_infinite()) throw NetworkError("bus '" + net.buses()[b].id + "' has infinite cost");
      if (cost.sign() != 0) obj.push_back({*out.pgen[b], cost.value()});
    }
  }
  lp.set_objective(objective == Objective::MaxLoad ? Sense::Maximize : Sense::Minimize, std::move(obj));
  return out;
}

TopologyLp build_full_lp(const Network& net, const std::vector<char>& off, Objective objective) {
  std::vector<char> bus_in(net.bus_count(), 1);
  std::vector<char> line_in(net.line_count());
  for (std::size_t l = 0; l < net.line_count(); ++l) line_in[l] = !off[l];
  return build_lp(net, bus_in, line_in, objective);
}

struct ComponentResult {
  bool feasible = false;
  ExtRational value;
};

bool better(Objective objective, const ExtRational& candidate, const ExtRational& incumbent) {
  return objective == Objective::MaxLoad ? incumbent < candidate : candidate < incumbent;
}

// A connected piece of one switching, reduced to what matters for the LP.
struct Piece {
  std::vector<char> bus_in;
  std::vector<char> line_in;
  std::string key;
};

class Enumerator {
 public:
  Enumerator(const Network& net, Objective objective, const EnumerationLimit& limit)
      : net_(net), objective_(objective), limit_(limit) {
    if (net.switchable_by_id().size() > limit.cap) {
      throw EnumerationCapExceeded(std::to_string(net.switchable_by_id().size()) +
                                   " switchable lines exceed the enumeration cap of " + std::to_string(limit.cap));
    }
  }

  SolveResult run() {
    const std::vector<std::size_t>& order = net_.switchable_by_id();
    std::vector<std::vector<std::size_t>> round;
    bool stop = false;
    for_each_switch_set(order.size(), [&](std::span<const std::size_t> pick) {
      round.emplace_back(pick.begin(), pick.end());
      if (round.size() == kRoundSize) {
        stop = process(round);
        round.clear();
      }
      return !stop;
    });
    if (!stop && !round.empty()) process(round);

    SolveResult result;
    result.stats = stats_;
    if (!best_) return result;

    std::vector<char> off(net_.line_count(), 0);
    for (std::size_t i : *best_) off[order[i]] = 1;
    finish(result, off, best_value_);
    return result;
  }

  // Solves the full LP of one switching for the witness.
  void finish(SolveResult& result, const std::vector<char>& off, const ExtRational& expected) {
    const SwitchSet switched = switch_set_of(net_, off);
    TopologyLp tl = build_full_lp(net_, off, objective_);
    LpOutcome outcome = solve_lp(tl.lp);
    ++result.stats.lps_solved;
    if (outcome.status == LpOutcome::Status::Unbounded) {
      result.value = ExtRational::infinity();
      tl = build_full_lp(net_, off, Objective::Feasibility);
      outcome = solve_lp(tl.lp);
      ++result.stats.lps_solved;
    } else if (outcome.status == LpOutcome::Status::Optimal) {
      result.value = outcome.value;
    }
    if (outcome.status != LpOutcome::Status::Optimal) {
      throw std::logic_error("witness LP disagrees with the enumeration verdict");
    }
    if (objective_ != Objective::Feasibility && result.value != expected) {
      throw std::logic_error("witness LP value " + result.value.to_string() + " differs from " + expected.to_string());
    }
    if (objective_ == Objective::Feasibility) result.value = Rational();
    result.status = SolveResult::Status::Optimal;
    result.witness = tl.to_operating_point(net_, switched, outcome.assignment);
  }

 private:
  struct Evaluation {
    bool pruned = false;
    std::vector<std::string> keys;
  };

  // Returns true when enumeration can stop.
  bool process(const std::vector<std::vector<std::size_t>>& round) {
    const std::vector<std::size_t>& order = net_.switchable_by_id();
    std::vector<Evaluation> evals(round.size());
    std::vector<Piece> missing;
    std::unordered_map<std::string, std::size_t> missing_index;

    for (std::size_t s = 0; s < round.size(); ++s) {
      std::vector<char> off(net_.line_count(), 0);
      for (std::size_t i : round[s]) off[order[i]] = 1;
      evals[s] = evaluate(off, missing, missing_index);
    }
    stats_.subsets_explored += round.size();

    std::vector<ComponentResult> solved(missing.size());
    solve_pieces(missing, solved);
    stats_.lps_solved += missing.size();
    for (std::size_t i = 0; i < missing.size(); ++i) cache_.emplace(std::move(missing[i].key), solved[i]);

    for (std::size_t s = 0; s < round.size(); ++s) {
      if (evals[s].pruned) {
        ++stats_.subsets_pruned;
        continue;
      }
      bool feasible = true;
      ExtRational value;
      for (const std::string& key : evals[s].keys) {
        const ComponentResult& r = cache_.at(key);
        if (!r.feasible) {
          feasible = false;
          break;
        }
        value = saturating_add(value, r.value);
      }
      if (!feasible) continue;
      if (!best_ || better(objective_, value, best_value_)) {
        best_ = round[s];
        best_value_ = value;
        if (objective_ == Objective::Feasibility) return true;
      }
    }
    return false;
  }

  Evaluation evaluate(const std::vector<char>& off, std::vector<Piece>& missing,
                      std::unordered_map<std::string, std::size_t>& missing_index) {
    Evaluation ev;
    const std::size_t nb = net_.bus_count();
    UnionFind uf(nb);
    std::vector<ExtRational> incident_cap(nb);
    for (std::size_t l = 0; l < net_.line_count(); ++l) {
      if (off[l]) continue;
      uf.unite(net_.from(l), net_.to(l));
      incident_cap[net_.from(l)] = saturating_add(incident_cap[net_.from(l)], net_.lines()[l].capacity);
      incident_cap[net_.to(l)] = saturating_add(incident_cap[net_.to(l)], net_.lines()[l].capacity);
    }

    // Necessary conditions: each bus and each component must be able to
    // cover its minimum demand.
    std::vector<ExtRational> comp_plmin(nb);
    std::vector<ExtRational> comp_pgmax(nb);
    std::vector<ExtRational> comp_served(nb);
    for (std::size_t b = 0; b < nb; ++b) {
      const Bus& bus = net_.buses()[b];
      if (saturating_add(bus.pgmax, incident_cap[b]) < bus.plmin) {
        ev.pruned = true;
        return ev;
      }
      const std::size_t root = uf.find(b);
      comp_plmin[root] = comp_plmin[root] + bus.plmin;
      comp_pgmax[root] = saturating_add(comp_pgmax[root], bus.pgmax);
      if (bus.plmax.sign() > 0) {
        comp_served[root] = saturating_add(comp_served[root], min(bus.plmax, saturating_add(bus.pgmax, incident_cap[b])));
      }
    }
    ExtRational bound;
    for (std::size_t b = 0; b < nb; ++b) {
      if (uf.find(b) != b) continue;
      if (comp_pgmax[b] < comp_plmin[b]) {
        ev.pruned = true;
        return ev;
      }
      bound = saturating_add(bound, min(comp_pgmax[b], comp_served[b]));
    }
    if (objective_ == Objective::MaxLoad && limit_.bound_pruning && best_ && bound <= best_value_) {
      ev.pruned = true;
      return ev;
    }

    // Strip buses that can carry no flow: non-terminal buses with at most
    // one active line, repeatedly.
    std::vector<std::size_t> degree(nb, 0);
    for (std::size_t l = 0; l < net_.line_count(); ++l) {
      if (off[l]) continue;
      ++degree[net_.from(l)];
      ++degree[net_.to(l)];
    }
    std::vector<char> removed(nb, 0);
    std::vector<std::size_t> queue;
    for (std::size_t b = 0; b < nb; ++b) {
      if (degree[b] <= 1 && !is_terminal(net_.buses()[b])) queue.push_back(b);
    }
    while (!queue.empty()) {
      const std::size_t b = queue.back();
      queue.pop_back();
      if (removed[b]) continue;
      removed[b] = 1;
      for (std::size_t l : net_.incident(b)) {
        if (off[l]) continue;
        const std::size_t other = net_.from(l) == b ? net_.to(l) : net_.from(l);
        if (removed[other]) continue;
        if (--degree[other] <= 1 && !is_terminal(net_.buses()[other])) queue.push_back(other);
      }
    }

    std::unordered_map<std::size_t, Piece> pieces;
    for (std::size_t b : net_.buses_by_id()) {
      if (removed[b]) continue;
      Piece& p = pieces[uf.find(b)];
      if (p.bus_in.empty()) {
        p.bus_in.assign(nb, 0);
        p.line_in.assign(net_.line_count(), 0);
      }
      p.bus_in[b] = 1;
    }
    for (std::size_t l = 0; l < net_.line_count(); ++l) {
      if (off[l] || removed[net_.from(l)] || removed[net_.to(l)]) continue;
      pieces[uf.find(net_.from(l))].line_in[l] = 1;
    }
    std::vector<std::size_t> roots;
    for (const auto& [root, p] : pieces) roots.push_back(root);
    std::sort(roots.begin(), roots.end());
    for (std::size_t root : roots) {
      Piece& p = pieces[root];
      p.key.reserve(nb + net_.line_count() + 1);
      p.key.append(p.bus_in.begin(), p.bus_in.end());
      p.key.push_back('|');
      p.key.append(p.line_in.begin(), p.line_in.end());
      ev.keys.push_back(p.key);
      if (cache_.count(p.key) || missing_index.count(p.key)) continue;
      missing_index.emplace(p.key, missing.size());
      missing.push_back(std::move(p));
    }
    return ev;
  }

  ComponentResult solve_piece(const Piece& p) const {
    const TopologyLp tl = build_lp(net_, p.bus_in, p.line_in, objective_);
    const LpOutcome outcome = solve_lp(tl.lp);
    switch (outcome.status) {
      case LpOutcome::Status::Infeasible:
        return {false, {}};
      case LpOutcome::Status::Unbounded:
        return {true, ExtRational::infinity()};
      case LpOutcome::Status::Optimal:
        break;
    }
    return {true, outcome.value};
  }

  void solve_pieces(const std::vector<Piece>& pieces, std::vector<ComponentResult>& out) const {
    const std::size_t workers = std::min<std::size_t>(std::max(1u, limit_.jobs), pieces.size());
    if (workers <= 1) {
      for (std::size_t i = 0; i < pieces.size(); ++i) out[i] = solve_piece(pieces[i]);
      return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < workers; ++w) {
      threads.emplace_back([&]() {
        for (std::size_t i = next++; i < pieces.size(); i = next++) out[i] = solve_piece(pieces[i]);
      });
    }
    for (std::thread& t : threads) t.join();
  }

  const Network& net_;
  Objective objective_;
  EnumerationLimit limit_;
  std::unordered_map<std::string, ComponentResult> cache_;
  std::optional<std::vector<std::size_t>> best_;
  ExtRational best_value_;
  SolveStats stats_;
};

}  // namespace

OperatingPoint TopologyLp::to_operating_point(const Network& net, const SwitchSet& switched,
                                              std::span<const Rational> assignment) const {
  OperatingPoint op;
  op.switched = switched;
  for (std::size_t b = 0; b < net.bus_count(); ++b) {
    const std::string& id = net.buses()[b].id;
    op.theta[id] = assignment[theta[b]];
    op.pgen[id] = pgen[b] ? assignment[*pgen[b]] : Rational();
    op.pload[id] = pload[b] ? assignment[*pload[b]] : Rational();
  }
  return op;
}

TopologyLp build_topology_lp(const Network& net, const SwitchSet& switched, Objective objective) {
  return build_full_lp(net, switched_flags(net, switched), objective);
}

LinearProgram build_fixed_topology_lp(const Network& net, const SwitchSet& switched, Objective objective) {
  return build_topology_lp(net, switched, objective).lp;
}

SolveResult solve_mpf(const Network& net) {
  SolveResult result;
  const std::vector<char> off(net.line_count(), 0);
  TopologyLp tl = build_full_lp(net, off, Objective::MaxLoad);
  LpOutcome outcome = solve_lp(tl.lp);
  result.stats = {1, 1, 0};
  if (outcome.status == LpOutcome::Status::Infeasible) return result;
  if (outcome.status == LpOutcome::Status::Unbounded) {
    result.value = ExtRational::infinity();
    tl = build_full_lp(net, off, Objective::Feasibility);
    outcome = solve_lp(tl.lp);
    ++result.stats.lps_solved;
  } else {
    result.value = outcome.value;
  }
  result.status = SolveResult::Status::Optimal;
  result.witness = tl.to_operating_point(net, {}, outcome.assignment);
  return result;
}

SolveResult solve_msf(const Network& net, const EnumerationLimit& limit) {
  return Enumerator(net, Objective::MaxLoad, limit).run();
}

SolveResult solve_ots(const Network& net, const EnumerationLimit& limit) {
  return Enumerator(net, Objective::MinCost, limit).run();
}

SolveResult solve_feas(const Network& net, const EnumerationLimit& limit) {
  return Enumerator(net, Objective::Feasibility, limit).run();
}

bool decide_msf(const Network& net, const Rational& x, const EnumerationLimit& limit) {
  const SolveResult r = solve_msf(net, limit);
  return r.feasible() && ExtRational(x) <= r.value;
}

bool decide_ots(const Network& net, const Rational& x, const EnumerationLimit& limit) {
  const SolveResult r = solve_ots(net, limit);
  return r.feasible() && r.value <= ExtRational(x);
}

ExtRational upper_bound_msf(const Network& net) {
  ExtRational supply;
  ExtRational served;
  for (std::size_t b = 0; b < net.bus_count(); ++b) {
    const Bus& bus = net.buses()[b];
    supply = saturating_add(supply, bus.pgmax);
    if (bus.plmax.sign() <= 0) continue;
    ExtRational reach = bus.pgmax;
    for (std::size_t l : net.incident(b)) reach = saturating_add(reach, net.lines()[l].capacity);
    served = saturating_add(served, min(bus.plmax, reach));
  }
  return min(supply, served);
}

}  // namespace ldcswitch
