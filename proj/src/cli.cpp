#include "ldcswitch/cli.hpp"

#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ldcswitch/graphcheck.hpp"
#include "ldcswitch/io.hpp"
#include "ldcswitch/oracles.hpp"
#include "ldcswitch/reductions.hpp"
#include "ldcswitch/solvers.hpp"
#include "ldcswitch/verify.hpp"

namespace ldcswitch {

namespace {

// Bad file names and unreadable files count as usage errors.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file || !(file << text)) throw UsageError("cannot write " + path);
}

Rational parse_rational(const std::string& text, const std::string& what) {
  try {
    return Rational::parse(text);
  } catch (const std::exception& e) {
    throw UsageError(what + ": " + e.what());
  }
}

std::string stats_line(const SolveStats& s) {
  return "stats: explored " + std::to_string(s.subsets_explored) + ", lps " + std::to_string(s.lps_solved) +
         ", pruned " + std::to_string(s.subsets_pruned) + "\n";
}

struct GenFlags {
  std::string output;
  bool strict = false;
};

struct SolveFlags {
  std::string network;
  std::optional<std::string> decision;
  unsigned jobs = 1;
  std::size_t cap = 25;
  std::string format = "table";
};

struct VerifyFlags {
  std::uint64_t seed = 42;
  std::size_t count = 20;
  std::size_t witnesses = 3;
  bool strict = false;
  unsigned jobs = 1;
  std::size_t cap = 25;
  std::string format = "table";
  CactusSpace space;
  std::size_t max_vertices = 5;
  std::vector<std::string> xs = {"1", "2", "5/2"};
  std::vector<std::int64_t> set;
  std::optional<std::int64_t> target;
};

int emit_network(const ConstructionReport& report, const GenFlags& flags, std::ostream& out, std::ostream& err) {
  for (const Repair& r : report.repairs) err << "repair: " << r.original << " -> " << r.adopted << " (" << r.reason << ")\n";
  const std::string doc = write_network(report.network);
  if (flags.output.empty()) {
    out << doc;
  } else {
    write_file(flags.output, doc);
  }
  return kExitOk;
}

int solve(const std::string& problem, const SolveFlags& flags, std::ostream& out) {
  const Network net = parse_network(read_file(flags.network));
  EnumerationLimit limit;
  limit.cap = flags.cap;
  limit.jobs = flags.jobs;

  if (flags.decision) {
    const Rational x = parse_rational(*flags.decision, "--decision");
    bool yes = false;
    std::string question;
    if (problem == "msf") {
      yes = decide_msf(net, x, limit);
      question = "msf >= " + x.to_string();
    } else if (problem == "ots") {
      yes = decide_ots(net, x, limit);
      question = "ots <= " + x.to_string();
    } else {
      throw UsageError("--decision applies to msf and ots only");
    }
    out << question << ": " << (yes ? "yes" : "no") << "\n";
    return yes ? kExitOk : kExitNo;
  }

  SolveResult result;
  if (problem == "feas") {
    result = solve_feas(net, limit);
  } else if (problem == "msf") {
    result = solve_msf(net, limit);
  } else if (problem == "ots") {
    result = solve_ots(net, limit);
  } else {
    result = solve_mpf(net);
  }

  if (flags.format == "structured") {
    nlohmann::json doc;
    doc["problem"] = problem;
    doc["status"] = result.feasible() ? "feasible" : "infeasible";
    if (result.feasible()) {
      if (problem != "feas") doc["value"] = result.value.to_string();
      doc["witness"] = nlohmann::json::parse(write_operating_point(result.witness));
    }
    doc["stats"] = {{"subsets_explored", result.stats.subsets_explored},
                    {"lps_solved", result.stats.lps_solved},
                    {"subsets_pruned", result.stats.subsets_pruned}};
    out << doc.dump(2) << "\n";
  } else {
    if (!result.feasible()) {
      out << (problem == "feas" ? "infeasible" : problem + ": infeasible") << "\n";
    } else {
      out << (problem == "feas" ? "feasible" : problem + " = " + result.value.to_string()) << "\n";
      out << render_operating_point(result.witness);
    }
    out << stats_line(result.stats);
  }
  return result.feasible() ? kExitOk : kExitNo;
}

int check(const std::string& predicate, const std::string& path, const std::string& annotation, std::size_t bound,
          std::ostream& out) {
  const Network net = parse_network(read_file(path));
  if (predicate == "degree") {
    const std::size_t degree = max_degree(net);
    out << "max degree = " << degree << " (limit " << bound << "): " << (degree <= bound ? "yes" : "no") << "\n";
    return degree <= bound ? kExitOk : kExitNo;
  }
  if (predicate == "euler") {
    const bool holds = euler_planarity_necessary(net);
    out << "euler bound: " << (holds ? "yes" : "no") << "\n";
    return holds ? kExitOk : kExitNo;
  }
  StructureVerdict verdict;
  if (predicate == "cactus") {
    verdict = is_cactus(net);
  } else {
    if (annotation.empty()) throw UsageError("tree-level needs --annotation");
    try {
      verdict = validate_two_level_tree(net, parse_annotation(read_file(annotation)), bound);
    } catch (const AnnotationError& e) {
      throw UsageError(e.what());
    }
  }
  out << verdict.predicate << ": " << (verdict.holds ? "yes" : "no");
  if (!verdict.holds) out << " (" << verdict.witness << ")";
  out << "\n";
  for (const auto& block : verdict.blocks) {
    std::string line;
    for (const std::string& id : block) line += (line.empty() ? "" : " ") + id;
    out << "  block: " << line << "\n";
  }
  return verdict.holds ? kExitOk : kExitNo;
}

int verify(const std::string& theorem, const VerifyFlags& flags, std::ostream& out) {
  VerifyOptions options;
  options.literal = flags.strict;
  options.jobs = flags.jobs;
  options.cap = flags.cap;

  VerificationReport report;
  if (theorem == "sch") {
    std::vector<Rational> xs;
    for (const std::string& x : flags.xs) xs.push_back(parse_rational(x, "--x"));
    report = verify_sch(xs, options);
  } else if (theorem == "cacti" || theorem == "tree") {
    std::vector<SubsetSumInstance> instances;
    if (!flags.set.empty() || flags.target) {
      if (flags.set.empty() || !flags.target) throw UsageError("--set and --target go together");
      instances.push_back({flags.set, *flags.target});
    } else {
      instances = theorem == "cacti" ? cactus_instances(flags.space) : default_tree_instances();
    }
    report = theorem == "cacti" ? verify_cacti(instances, options) : verify_tree(instances, options);
  } else if (theorem == "longest-path") {
    report = verify_longest_path(connected_graphs(flags.max_vertices), options);
  } else if (theorem == "hamiltonian") {
    report = verify_hamiltonian(connected_graphs(flags.max_vertices), options);
  } else if (theorem == "m3da") {
    report = verify_m3da(default_m3da_instances(), m3da_witness_instances(flags.seed, flags.witnesses), options);
  } else if (theorem == "mots") {
    report = verify_mots(flags.seed, flags.count, options);
  } else {
    report = verify_feas_msf(flags.seed, flags.count, options);
  }
  out << (flags.format == "structured" ? render_report_structured(report) : render_report(report));
  return report.all_match() && report.invariants_hold() ? kExitOk : kExitMismatch;
}

SubsetSumInstance subset_sum(const std::vector<std::int64_t>& set, std::int64_t target) {
  SubsetSumInstance instance{set, target};
  validate(instance);
  return instance;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Switching problems on Linear DC power networks", "ldcswitch"};
  app.require_subcommand(1);
  std::function<int()> action;

  // gen
  CLI::App* gen = app.add_subcommand("gen", "Write the network of a reduction");
  gen->require_subcommand(1);
  GenFlags gen_flags;
  const auto gen_common = [&](CLI::App* sub) {
    sub->add_option("-o,--output", gen_flags.output, "Output file (default stdout)");
    sub->add_flag("--strict-paper", gen_flags.strict, "Use the textbook parameters without repairs");
  };

  std::string sch_x = "1";
  std::string sch_mode = "plain";
  CLI::App* gen_sch = gen->add_subcommand("sch", "Switch gadget");
  gen_sch->add_option("--x", sch_x, "Gadget value (p/q)");
  gen_sch->add_option("--mode", sch_mode)->check(CLI::IsMember({"plain", "plus", "minus"}));
  gen_common(gen_sch);
  gen_sch->callback([&] {
    action = [&] {
      const SchMode mode = sch_mode == "plus" ? SchMode::Plus : sch_mode == "minus" ? SchMode::Minus : SchMode::Plain;
      return emit_network(build_sch(parse_rational(sch_x, "--x"), mode, gen_flags.strict), gen_flags, out, err);
    };
  });

  std::vector<std::int64_t> ss_set;
  std::int64_t ss_target = 0;
  std::string annotation_out;
  for (const char* name : {"cactus", "tree2"}) {
    const bool tree = std::string(name) == "tree2";
    CLI::App* sub = gen->add_subcommand(name, tree ? "Two-level tree from subset sum" : "Cactus from subset sum");
    sub->add_option("--set", ss_set, "Comma-separated positive integers")->delimiter(',')->required();
    sub->add_option("--target", ss_target)->required();
    if (tree) sub->add_option("--annotation", annotation_out, "Also write the level annotation here");
    gen_common(sub);
    sub->callback([&, tree] {
      action = [&, tree] {
        const SubsetSumInstance instance = subset_sum(ss_set, ss_target);
        const ConstructionReport report =
            tree ? build_two_level_tree(instance, gen_flags.strict) : build_cactus(instance, gen_flags.strict);
        if (tree && !annotation_out.empty()) write_file(annotation_out, write_annotation(*report.tree));
        return emit_network(report, gen_flags, out, err);
      };
    });
  }

  std::string graph_file;
  for (const char* name : {"longest-path", "hamiltonian"}) {
    const bool ham = std::string(name) == "hamiltonian";
    CLI::App* sub = gen->add_subcommand(name, ham ? "Hamiltonian path gadget" : "Longest path gadget");
    sub->add_option("--graph", graph_file, "Graph file")->required();
    gen_common(sub);
    sub->callback([&, ham] {
      action = [&, ham] {
        const GraphInstance g = parse_graph(read_file(graph_file));
        return emit_network(ham ? build_hamiltonian(g, gen_flags.strict) : build_longest_path(g, gen_flags.strict),
                            gen_flags, out, err);
      };
    });
  }

  std::string m3da_file;
  CLI::App* gen_m3da = gen->add_subcommand("m3da", "Network from a 3-dimensional assignment instance");
  gen_m3da->add_option("--instance", m3da_file, "Assignment file")->required();
  gen_common(gen_m3da);
  gen_m3da->callback([&] {
    action = [&] {
      return emit_network(build_m3da(parse_m3da(read_file(m3da_file)), gen_flags.strict), gen_flags, out, err);
    };
  });

  std::string mots_file;
  CLI::App* gen_mots = gen->add_subcommand("mots", "Transmission switching network from a load-shedding one");
  gen_mots->add_option("network", mots_file, "Network file")->required();
  gen_common(gen_mots);
  gen_mots->callback([&] {
    action = [&] { return emit_network(msf_to_ots(parse_network(read_file(mots_file))), gen_flags, out, err); };
  });

  // solve
  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve a switching problem");
  std::string problem;
  SolveFlags solve_flags;
  solve_cmd->add_option("problem", problem)->required()->check(CLI::IsMember({"feas", "msf", "ots", "mpf"}));
  solve_cmd->add_option("network", solve_flags.network, "Network file")->required();
  solve_cmd->add_option("--decision", solve_flags.decision, "Threshold x: msf >= x or ots <= x");
  solve_cmd->add_option("--jobs", solve_flags.jobs)->check(CLI::Range(1u, 256u));
  solve_cmd->add_option("--cap", solve_flags.cap, "Most switchable lines to enumerate");
  solve_cmd->add_option("--format", solve_flags.format)->check(CLI::IsMember({"table", "structured"}));
  solve_cmd->callback([&] { action = [&] { return solve(problem, solve_flags, out); }; });

  // check
  CLI::App* check_cmd = app.add_subcommand("check", "Check a structural property");
  std::string predicate;
  std::string check_file;
  std::string check_annotation;
  std::size_t check_bound = 0;
  check_cmd->add_option("predicate", predicate)->required()->check(
      CLI::IsMember({"cactus", "degree", "tree-level", "euler"}));
  check_cmd->add_option("network", check_file, "Network file")->required();
  check_cmd->add_option("--annotation", check_annotation, "Level annotation (tree-level)");
  check_cmd->add_option("--max", check_bound, "Degree limit (default 3) or deepest level (default 2)");
  check_cmd->callback([&] {
    action = [&] {
      const std::size_t bound = check_bound != 0 ? check_bound : predicate == "degree" ? 3 : 2;
      return check(predicate, check_file, check_annotation, bound, out);
    };
  });

  // verify
  CLI::App* verify_cmd = app.add_subcommand("verify", "Compare a reduction against its oracle");
  std::string theorem;
  VerifyFlags vf;
  std::int64_t target = 0;
  verify_cmd->add_option("theorem", theorem)->required()->check(CLI::IsMember(
      {"sch", "cacti", "tree", "longest-path", "hamiltonian", "m3da", "mots", "feas-msf"}));
  verify_cmd->add_option("--seed", vf.seed);
  verify_cmd->add_option("--count", vf.count, "Random networks (mots, feas-msf)");
  verify_cmd->add_option("--witnesses", vf.witnesses, "Random 2x2x2 instances checked by witness (m3da)");
  verify_cmd->add_flag("--strict-paper", vf.strict, "Use the textbook parameters without repairs");
  verify_cmd->add_option("--jobs", vf.jobs)->check(CLI::Range(1u, 256u));
  verify_cmd->add_option("--cap", vf.cap);
  verify_cmd->add_option("--format", vf.format)->check(CLI::IsMember({"table", "structured"}));
  verify_cmd->add_option("--max-elem", vf.space.max_elem);
  verify_cmd->add_option("--max-card", vf.space.max_card);
  verify_cmd->add_option("--max-target", vf.space.max_target);
  verify_cmd->add_option("--max-vertices", vf.max_vertices);
  verify_cmd->add_option("--x", vf.xs, "Gadget values (sch)")->delimiter(',');
  verify_cmd->add_option("--set", vf.set, "Single subset-sum instance (cacti, tree)")->delimiter(',');
  CLI::Option* target_opt = verify_cmd->add_option("--target", target);
  verify_cmd->callback([&] {
    action = [&] {
      if (target_opt->count() > 0) vf.target = target;
      return verify(theorem, vf, out);
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    return action();
  } catch (const EnumerationCapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InstanceError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NetworkError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace ldcswitch
