// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ldcswitch/cli.hpp"
#include "ldcswitch/io.hpp"
#include "ldcswitch/oracles.hpp"
#include "ldcswitch/reductions.hpp"
#include "ldcswitch/solvers.hpp"
#include "ldcswitch/verify.hpp"

using namespace ldcswitch;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("failed: " + what);
    }
  }
};

// Reports of criteria 1-7, kept for the invariant and rerun checks.
struct Run {
  std::string label;
  std::function<VerificationReport(const VerifyOptions&)> make;
  VerificationReport report;
};

std::vector<Run> runs;

const VerificationReport& record(const std::string& label, std::function<VerificationReport(const VerifyOptions&)> make) {
  Run r{label, std::move(make), {}};
  r.report = r.make(VerifyOptions{});
  runs.push_back(std::move(r));
  return runs.back().report;
}

void summarize(const VerificationReport& report, Outcome& out) {
  std::size_t matched = 0;
  for (const InstanceResult& r : report.instances) matched += r.match;
  out.notes.push_back(report.theorem + ": " + std::to_string(matched) + "/" + std::to_string(report.instances.size()) +
                      " match");
  for (const InstanceResult& r : report.instances) {
    if (!r.match) out.notes.push_back("mismatch " + r.instance + ": " + r.detail);
  }
  out.require(report.all_match(), report.theorem + " all-match");
}

Outcome sch() {
  Outcome out;
  summarize(record("sch", [](const VerifyOptions& o) { return verify_sch({1, 2, Rational(5, 2)}, o); }), out);
  return out;
}

Outcome cacti() {
  Outcome out;
  const std::vector<SubsetSumInstance> instances = cactus_instances({4, 3, 6});
  out.notes.push_back(std::to_string(instances.size()) + " instances");
  summarize(record("cacti", [instances](const VerifyOptions& o) { return verify_cacti(instances, o); }), out);
  out.require(solve_feas(build_cactus({{1, 2, 3}, 5}).network).feasible(), "({1,2,3},5) feasible");
  return out;
}

Outcome tree() {
  Outcome out;
  const SubsetSumInstance example{{2, 1, 3}, 5};
  const ConstructionReport built = build_two_level_tree(example);
  const SolveResult msf = solve_msf(built.network);
  out.notes.push_back("MSF({2,1,3},5) = " + msf.value.to_string() + ", m = " + std::to_string(tree_m(example)));
  out.require(msf.feasible() && msf.value == ExtRational(14), "MSF = 14");
  out.require(validate_two_level_tree(built.network, *built.tree).holds, "generated tree validates");

  const std::vector<SubsetSumInstance> instances = default_tree_instances();
  std::size_t unsolvable = 0;
  for (const SubsetSumInstance& i : instances) unsolvable += !subset_sum_solvable(i).solvable;
  out.notes.push_back(std::to_string(unsolvable) + " unsolvable instances");
  out.require(unsolvable >= 2, "unsolvable instances present");
  summarize(record("tree", [instances](const VerifyOptions& o) { return verify_tree(instances, o); }), out);
  return out;
}

Outcome longest() {
  Outcome out;
  const std::vector<GraphInstance> graphs = connected_graphs(5);
  const VerificationReport& report =
      record("longest-path", [graphs](const VerifyOptions& o) { return verify_longest_path(graphs, o); });
  summarize(report, out);
  for (const std::string& f : report.findings) out.notes.push_back(f);
  return out;
}

Outcome hamiltonian() {
  Outcome out;
  const std::vector<GraphInstance> graphs = connected_graphs(5);
  summarize(record("hamiltonian", [graphs](const VerifyOptions& o) { return verify_hamiltonian(graphs, o); }), out);
  return out;
}

Outcome m3da() {
  Outcome out;
  const VerificationReport& report = record("m3da", [](const VerifyOptions& o) {
    return verify_m3da(default_m3da_instances(), m3da_witness_instances(42, 3), o);
  });
  summarize(report, out);
  const M3daInstance seven{{"x"}, {"y"}, {"w"}, {7}};
  const SolveResult ots = solve_ots(build_m3da(seven).network);
  out.notes.push_back("OTS(d = 7) = " + ots.value.to_string() + " after " + std::to_string(ots.stats.subsets_explored) +
                      " subsets");
  out.require(ots.value == ExtRational(7) && ots.stats.subsets_explored == 512, "full enumeration gives 7");
  return out;
}

Outcome random() {
  Outcome out;
  summarize(record("feas-msf", [](const VerifyOptions& o) { return verify_feas_msf(42, 20, o); }), out);
  summarize(record("mots", [](const VerifyOptions& o) { return verify_mots(42, 20, o); }), out);
  return out;
}

Outcome invariants() {
  Outcome out;
  for (const Run& r : runs) {
    out.require(r.report.invariants_hold(), r.label + " solver invariants");
  }
  VerifyOptions three;
  three.jobs = 3;
  for (const Run& r : runs) {
    const VerificationReport again = r.make(three);
    out.require(render_report(again) == render_report(r.report) &&
                    render_report_structured(again) == render_report_structured(r.report),
                r.label + " rerun with 3 workers is byte-identical");
  }

  // Solver-internal workers through the command line.
  const std::string path = (std::filesystem::temp_directory_path() / "ldcswitch_acceptance_tree.json").string();
  std::ostringstream sink;
  run({"gen", "tree2", "--set", "2,1,3", "--target", "5", "-o", path}, sink, sink);
  std::vector<std::string> outputs;
  for (const char* jobs : {"1", "1", "3"}) {
    std::ostringstream o;
    std::ostringstream e;
    const int code = run({"solve", "msf", path, "--jobs", jobs}, o, e);
    out.require(code == kExitOk, std::string("solve msf --jobs ") + jobs);
    outputs.push_back(o.str());
  }
  std::filesystem::remove(path);
  out.require(outputs[0] == outputs[1] && outputs[0] == outputs[2], "solve msf output independent of --jobs");
  out.notes.push_back(std::to_string(runs.size()) + " reports rerun");
  return out;
}

Outcome errata() {
  Outcome out;
  VerifyOptions strict;
  strict.literal = true;

  const VerificationReport sch = verify_sch({1, 2, Rational(5, 2)}, strict);
  const VerificationReport m3 = verify_m3da(default_m3da_instances(), m3da_witness_instances(42, 3), strict);
  out.require(!sch.all_match(), "strict sch reports mismatches");
  out.require(!m3.all_match(), "strict m3da reports mismatches");

  bool branch = false;
  bool capacity = false;
  bool demand = false;
  for (const InstanceResult& r : sch.instances) {
    branch |= !r.match && r.instance.find("switch {g-l}") != std::string::npos;
  }
  for (const InstanceResult& r : m3.instances) {
    capacity |= r.detail.find(".g (|flow| 5 > 3)") != std::string::npos;
    demand |= r.detail.find("balance at l ") != std::string::npos;
  }
  out.require(branch, "gadget switch branch shown");
  out.require(capacity, "t-t.g capacity shown");
  out.require(demand, "demand at l shown");

  std::size_t sch_miss = 0;
  std::size_t m3_miss = 0;
  for (const InstanceResult& r : sch.instances) sch_miss += !r.match;
  for (const InstanceResult& r : m3.instances) m3_miss += !r.match;
  out.notes.push_back("strict sch: " + std::to_string(sch_miss) + "/" + std::to_string(sch.instances.size()) +
                      " mismatch; strict m3da: " + std::to_string(m3_miss) + "/" + std::to_string(m3.instances.size()));

  // Repaired runs are the ones from criteria 1 and 6.
  for (const Run& r : runs) {
    if (r.label == "sch" || r.label == "m3da") out.require(r.report.all_match(), "repaired " + r.label + " all-match");
  }
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*check)();
    double limit_seconds;  // 0: none
  };
  const std::vector<Criterion> criteria = {
      {"switch gadget dichotomy", sch, 1},
      {"cactus feasibility iff subset sum", cacti, 300},
      {"two-level tree MSF", tree, 600},
      {"longest-path constant", longest, 0},
      {"Hamiltonian dichotomy", hamiltonian, 0},
      {"3-dimensional assignment OTS", m3da, 60},
      {"feasibility and MSF-to-OTS on random networks", random, 0},
      {"solver invariants and determinism", invariants, 0},
      {"strict parameters show the errata", errata, 0},
  };

  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criteria[i].check();
    } catch (const std::exception& e) {
      outcome.require(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criteria[i].limit_seconds > 0) {
      char limit[64];
      std::snprintf(limit, sizeof limit, "within %.0f s", criteria[i].limit_seconds);
      outcome.require(seconds < criteria[i].limit_seconds, limit);
    }
    char line[160];
    std::snprintf(line, sizeof line, "%s criterion %zu: %s (%.2f s)", outcome.pass ? "PASS" : "FAIL", i + 1,
                  criteria[i].name, seconds);
    std::cout << line << "\n";
    for (const std::string& n : outcome.notes) std::cout << "    " << n << "\n";
    all &= outcome.pass;
  }
  std::cout << (all ? "all criteria pass" : "some criteria fail") << "\n";
  return all ? 0 : 1;
}
