#include <doctest.h>

#include <random>

#include "ldcswitch/solvers.hpp"

using namespace ldcswitch;

namespace {

const ExtRational kInf = ExtRational::infinity();

Network sch1(ExtRational pgmax_v = 0) {
  return Network({{"g", 0, 0, 3, 0}, {"l", 3, 3, 0, 0}, {"v", 0, 0, pgmax_v, 0}},
                 {{"gl", "g", "l", 2, 1}, {"gv", "g", "v", 1, 1}, {"vl", "v", "l", 1, 1}});
}

Network two_generators() {
  return Network({{"g1", 0, 0, 5, 1}, {"g2", 0, 0, 5, 2}, {"l", 3, 3, 0, 0}},
                 {{"a", "g1", "l", 5, 1}, {"b", "g2", "l", 5, 1}});
}

void check_witness(const Network& net, const SolveResult& r, Objective objective) {
  REQUIRE(r.feasible());
  CHECK(check_feasible(net, r.witness).valid());
  if (objective == Objective::MaxLoad && r.value.is_finite()) CHECK(ExtRational(total_load(r.witness)) == r.value);
  if (objective == Objective::MinCost) CHECK(ExtRational(total_cost(net, r.witness)) == r.value);
}

// Plain enumeration without screens, pruning or caching.
std::optional<ExtRational> brute_force(const Network& net, Objective objective) {
  std::optional<ExtRational> best;
  const auto& order = net.switchable_by_id();
  for_each_switch_set(order.size(), [&](std::span<const std::size_t> pick) {
    SwitchSet s;
    for (std::size_t i : pick) s.insert(net.lines()[order[i]].id);
    const LpOutcome out = solve_lp(build_fixed_topology_lp(net, s, objective));
    if (out.status == LpOutcome::Status::Infeasible) return true;
    const ExtRational v = out.status == LpOutcome::Status::Unbounded ? kInf : ExtRational(out.value);
    if (!best || (objective == Objective::MaxLoad ? *best < v : v < *best)) best = v;
    return true;
  });
  return best;
}

Network random_network(std::mt19937_64& rng) {
  const auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  const std::vector<ExtRational> values = {1, 2, 3, Rational(1, 2)};
  const std::vector<ExtRational> bounds = {0, 1, 2, kInf};
  const std::size_t n = 2 + pick(5);
  std::vector<Bus> buses;
  for (std::size_t i = 0; i < n; ++i) {
    const ExtRational plmin = pick(3) == 0 ? bounds[pick(3)] : ExtRational(0);
    ExtRational plmax = bounds[pick(4)];
    if (plmax < plmin) plmax = plmin;
    buses.push_back({"b" + std::to_string(i), plmin, plmax, bounds[pick(4)], Rational(static_cast<int>(pick(3)))});
  }
  std::vector<Line> lines;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n && lines.size() < 8; ++j) {
      if (pick(2)) continue;
      lines.push_back({"", buses[i].id, buses[j].id, pick(6) == 0 ? kInf : values[pick(4)], values[pick(4)].value(),
                       pick(5) != 0});
    }
  }
  return Network(std::move(buses), std::move(lines));
}

}  // namespace

TEST_CASE("fixed-topology LP layout") {
  const LinearProgram lp = build_fixed_topology_lp(sch1(), {}, Objective::MaxLoad);
  std::size_t theta = 0;
  std::size_t fixed = 0;
  std::size_t power = 0;
  for (const Variable& v : lp.variables()) {
    if (v.name.rfind("theta", 0) == 0) {
      ++theta;
      fixed += v.lower && v.upper;
    } else {
      ++power;
    }
  }
  CHECK(theta == 3);
  CHECK(fixed == 1);
  CHECK(power == 2);
  std::size_t inequalities = 0;
  std::size_t equalities = 0;
  for (const Constraint& c : lp.constraints()) (c.relation == Relation::Equal ? equalities : inequalities)++;
  CHECK(inequalities == 6);
  CHECK(equalities == 3);
  CHECK(lp.find("theta[g]"));
  CHECK(lp.variables()[*lp.find("theta[g]")].upper == Bound(Rational()));

  const Network inf_line({{"a", 0, 1, 0, 0}, {"b", 0, 0, 1, 0}}, {{"ab", "a", "b", kInf, 1}});
  const LinearProgram lp2 = build_fixed_topology_lp(inf_line, {}, Objective::Feasibility);
  for (const Constraint& c : lp2.constraints()) CHECK(c.relation == Relation::Equal);

  CHECK_THROWS_AS(build_fixed_topology_lp(sch1(), {"nope"}, Objective::MaxLoad), NetworkError);
  const Network fixed_line({{"a"}, {"b"}}, {{"ab", "a", "b", 1, 1, false}});
  CHECK_THROWS_AS(build_fixed_topology_lp(fixed_line, {"ab"}, Objective::MaxLoad), NetworkError);

  // switching splits the anchors
  const TopologyLp tl = build_topology_lp(sch1(), {"gl", "vl"}, Objective::MaxLoad);
  CHECK(tl.anchors.size() == 2);
}

TEST_CASE("maximum power flow") {
  const SolveResult r = solve_mpf(sch1());
  CHECK(r.value == ExtRational(3));
  check_witness(sch1(), r, Objective::MaxLoad);

  const Network pair({{"g", 0, 0, 5, 0}, {"l", 0, 5, 0, 0}}, {{"gl", "g", "l", 2, 1}});
  CHECK(solve_mpf(pair).value == ExtRational(2));

  const Network isolated({{"a", 0, 4, 1, 0}, {"b", 0, 2, 3, 0}, {"c", 0, 1, 0, 0}}, {});
  CHECK(solve_mpf(isolated).value == ExtRational(3));

  const Network unbounded({{"a", 0, kInf, kInf, 0}}, {});
  const SolveResult u = solve_mpf(unbounded);
  CHECK(u.value.is_infinite());
  CHECK(check_feasible(unbounded, u.witness).valid());

  const Network stuck({{"a", 1, 1, 0, 0}}, {});
  CHECK_FALSE(solve_mpf(stuck).feasible());
}

TEST_CASE("maximum switching flow") {
  const Network plus = sch1(kInf);
  const SolveResult r = solve_msf(plus);
  CHECK(r.value == ExtRational(3));
  check_witness(plus, r, Objective::MaxLoad);
  CHECK(r.witness.switched.empty());

  const Network pair({{"g", 0, 0, 5, 0}, {"l", 0, 5, 0, 0}}, {{"gl", "g", "l", 2, 1}});
  CHECK(solve_msf(pair).value == ExtRational(2));

  const Network infeasible({{"g", 0, 0, 1, 0}, {"l", 2, 2, 0, 0}}, {{"gl", "g", "l", 5, 1}});
  const SolveResult bad = solve_msf(infeasible);
  CHECK_FALSE(bad.feasible());
  CHECK(bad.stats.subsets_explored == 2);

  // The loop through v caps the served load at 9/4; opening it frees g-l.
  const Network braess({{"g", 0, 0, 3, 0}, {"l", 0, 3, 0, 0}, {"v", 0, 0, 0, 0}},
                       {{"gl", "g", "l", 3, 1}, {"gv", "g", "v", 1, 1}, {"vl", "v", "l", 1, 4}});
  CHECK(solve_mpf(braess).value == ExtRational(Rational(9, 4)));
  const SolveResult b = solve_msf(braess);
  check_witness(braess, b, Objective::MaxLoad);
  CHECK(b.value == ExtRational(3));
  CHECK(b.witness.switched == SwitchSet{"gv"});

  EnumerationLimit tight;
  tight.cap = 2;
  CHECK_THROWS_AS(solve_msf(braess, tight), EnumerationCapExceeded);
}

TEST_CASE("optimal transmission switching") {
  const SolveResult r = solve_ots(two_generators());
  CHECK(r.value == ExtRational(3));
  check_witness(two_generators(), r, Objective::MinCost);
  CHECK(r.witness.pgen.at("g1") == Rational(3));

  const Network infeasible({{"g", 0, 0, 1, 1}, {"l", 2, 2, 0, 0}}, {{"gl", "g", "l", 5, 1}});
  CHECK_FALSE(solve_ots(infeasible).feasible());
}

TEST_CASE("feasibility search") {
  CHECK(solve_feas(Network({}, {})).feasible());
  CHECK(solve_feas(Network({}, {})).witness.theta.empty());

  // Serving 3 with the loop closed would push 4/3 over g-v.
  const Network net({{"g", 0, 0, 3, 0}, {"l", 3, 3, 0, 0}, {"v", 0, 0, 0, 0}},
                    {{"gl", "g", "l", 3, 1}, {"gv", "g", "v", 1, 1}, {"vl", "v", "l", 1, 4}});
  const SolveResult r = solve_feas(net);
  check_witness(net, r, Objective::Feasibility);
  CHECK(r.value == ExtRational(0));

  const Network never({{"g", 0, 0, 1, 0}, {"l", 2, 2, 0, 0}}, {{"gl", "g", "l", 5, 1}});
  CHECK_FALSE(solve_feas(never).feasible());
}

TEST_CASE("decision versions") {
  CHECK(decide_msf(sch1(), 3));
  CHECK_FALSE(decide_msf(sch1(), Rational(7, 2)));
  CHECK(decide_ots(two_generators(), 3));
  CHECK_FALSE(decide_ots(two_generators(), Rational(5, 2)));
  const Network never({{"g", 0, 0, 1, 0}, {"l", 2, 2, 0, 0}}, {{"gl", "g", "l", 5, 1}});
  CHECK_FALSE(decide_msf(never, 0));
  CHECK_FALSE(decide_ots(never, 100));
}

TEST_CASE("load upper bound") {
  CHECK(upper_bound_msf(sch1()) == ExtRational(3));
  const Network pair({{"g", 0, 0, 5, 0}, {"l", 0, 5, 0, 0}}, {{"gl", "g", "l", 2, 1}});
  CHECK(upper_bound_msf(pair) == ExtRational(2));
  const Network single({{"l", 0, 4, 1, 0}}, {});
  CHECK(upper_bound_msf(single) == ExtRational(1));
}

TEST_CASE("switch sets come by size then index") {
  std::vector<std::vector<std::size_t>> seen;
  for_each_switch_set(3, [&](std::span<const std::size_t> s) {
    seen.emplace_back(s.begin(), s.end());
    return true;
  });
  const std::vector<std::vector<std::size_t>> expected = {{}, {0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}, {0, 1, 2}};
  CHECK(seen == expected);
}

TEST_CASE("solvers agree with plain enumeration on random networks") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 150; ++round) {
    const Network net = random_network(rng);
    CAPTURE(round);
    const SolveResult msf = solve_msf(net);
    const auto msf_ref = brute_force(net, Objective::MaxLoad);
    REQUIRE(msf.feasible() == msf_ref.has_value());
    const SolveResult feas = solve_feas(net);
    CHECK(feas.feasible() == msf.feasible());
    if (!msf.feasible()) continue;
    CHECK(msf.value == *msf_ref);
    check_witness(net, msf, Objective::MaxLoad);
    check_witness(net, feas, Objective::Feasibility);

    const SolveResult mpf = solve_mpf(net);
    if (mpf.feasible()) CHECK(mpf.value <= msf.value);
    CHECK(msf.value <= upper_bound_msf(net));

    bool finite_costs = true;
    for (const Bus& b : net.buses()) finite_costs = finite_costs && b.cost.is_finite();
    if (finite_costs) {
      const SolveResult ots = solve_ots(net);
      CHECK(ots.value == *brute_force(net, Objective::MinCost));
      check_witness(net, ots, Objective::MinCost);
    }

    EnumerationLimit no_prune;
    no_prune.bound_pruning = false;
    CHECK(solve_msf(net, no_prune).value == msf.value);

    EnumerationLimit threaded;
    threaded.jobs = 3;
    const SolveResult again = solve_msf(net, threaded);
    CHECK(again.value == msf.value);
    CHECK(again.witness == msf.witness);
    CHECK(again.stats == msf.stats);
  }
}
