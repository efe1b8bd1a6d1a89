#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "imc/config.hpp"
#include "imc/coordination.hpp"
#include "imc/errors.hpp"
#include "imc/executor.hpp"
#include "imc/network.hpp"
#include "imc/plan_io.hpp"
#include "imc/util.hpp"

namespace {

using namespace imc;

void print_diagnostics(const ValidationResult& vr) {
  for (const Diagnostic& d : vr.diagnostics) {
    const char* sev = d.severity == Diagnostic::Severity::Error     ? "error"
                      : d.severity == Diagnostic::Severity::Warning ? "warning"
                                                                    : "info";
    std::cout << sev << " " << d.code << ": " << d.message << "\n";
  }
}

// Loads and validates; prints diagnostics. Throws DomainError when the
// configuration is semantically invalid.
ValidatedNetwork load_validated(const std::string& config_path, bool relax) {
  ProblemConfig cfg = load_config(config_path);
  ValidationOptions options;
  options.relax_single_path_assumption = relax;
  ValidationResult vr = validate_network(cfg.graph, cfg.teams, options);
  print_diagnostics(vr);
  if (!vr.ok()) {
    throw DomainError("InvalidNetwork", "the configuration failed validation");
  }
  return *vr.network;
}

std::filesystem::path ensure_out_dir(const std::string& out) {
  std::filesystem::path dir(out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + out + ": " + ec.message());
  return dir;
}

void write_plan_files(const std::filesystem::path& dir, const MotionPlan& plan,
                      const std::string& format) {
  write_file((dir / "plan.json").string(), plan_to_text(plan));
  if (format == "csv") {
    write_file((dir / "plan.csv").string(), plan_to_csv(plan));
  } else {
    write_file((dir / "plan.txt").string(), plan_to_report(plan));
  }
}

void print_plan_summary(const MotionPlan& plan) {
  if (!plan.pre_legs.empty()) {
    std::cerr << "warning: configured starts differ from the placement the rounds assume; "
              << plan.pre_legs.size() << " placement leg(s) prepended\n";
  }
  std::cout << "teams: " << plan.slots.slot_of_team.size() << "\n";
  std::cout << "slots reserved: " << plan.slots.slot_count << ", in use:";
  for (int s : plan.slots.surviving_slots) std::cout << " " << s;
  std::cout << "\n";
  std::cout << "first repeating round (k_p): " << plan.first_suffix_round << "\n";
  std::cout << "last repeating round (k_s): " << plan.last_suffix_round << "\n";
  std::cout << "prefix cost: " << fmt9(plan.prefix_cost) << "\n";
  std::cout << "per-cycle cost: " << fmt9(plan.suffix_cost) << "\n";
}

int cmd_validate(const std::string& config_path, bool relax) {
  load_validated(config_path, relax);
  std::cout << "configuration is valid\n";
  return 0;
}

int cmd_plan(const std::string& config_path, const std::string& out, bool relax,
             const std::string& format) {
  const ValidatedNetwork net = load_validated(config_path, relax);
  PlanSession session(net);
  const MotionPlan plan = session.plan(net.teams().robot_start);
  const AdmissibilityReport report = check_admissible(net, plan);
  if (!report.ok) {
    for (const std::string& v : report.violations) std::cerr << "violation: " << v << "\n";
    throw DomainError("InadmissiblePlan", "the synthesized plan failed its own checks");
  }
  const auto dir = ensure_out_dir(out);
  write_plan_files(dir, plan, format);
  print_plan_summary(plan);
  std::cout << "plan written to " << (dir / "plan.json").string() << "\n";
  return 0;
}

int cmd_simulate(const std::string& config_path, const std::string& out, int cycles,
                 std::uint64_t seed, bool consensus, bool relax, const std::string& format) {
  const ValidatedNetwork net = load_validated(config_path, relax);
  PlanSession session(net);
  const MotionPlan plan = session.plan(net.teams().robot_start);
  const auto dir = ensure_out_dir(out);
  write_plan_files(dir, plan, format);
  print_plan_summary(plan);

  ExecutionTrace trace;
  if (cycles > 0) {
    SimOptions options;
    options.suffix_cycles = cycles;
    options.consensus = consensus;
    options.seed = seed;
    trace = simulate(net, plan, options);
  }
  if (format == "csv") {
    write_file((dir / "travels.csv").string(), travels_to_csv(trace));
    write_file((dir / "meetings.csv").string(), meetings_to_csv(trace));
    write_file((dir / "waits.csv").string(), waits_to_csv(trace));
    if (consensus) write_file((dir / "consensus.csv").string(), consensus_to_csv(trace));
  } else {
    write_file((dir / "trace.txt").string(), trace_to_report(trace));
  }
  std::cout << "meetings: " << trace.meetings.size() << "\n";
  std::cout << "makespan: " << fmt9(trace.makespan) << "\n";
  std::cout << "total distance: " << fmt9(trace.total_distance) << "\n";

  if (cycles == 0) {
    std::cout << "connectivity: vacuous (no block passes requested)\n";
    return 0;
  }
  const ConnectivityReport conn = verify_connectivity(plan, trace);
  if (conn.ok) {
    std::cout << "connectivity: every team communicates in each of " << conn.cycles_checked
              << " pass(es)\n";
  } else {
    for (const std::string& v : conn.violations) std::cerr << "violation: " << v << "\n";
  }
  if (consensus) {
    const ConsensusReport cons = consensus_report(trace);
    std::cout << "consensus spread: " << fmt9(cons.final_spread);
    if (cons.converged) {
      std::cout << " (converged after " << cons.meetings_until_converged << " meetings)";
    }
    std::cout << "\n";
  }
  if (!conn.ok) {
    throw DomainError("ConnectivityViolated",
                      "a team missed a pass over the repeating block");
  }
  return 0;
}

int cmd_gen(const std::string& out, std::uint64_t seed, int robots, int teams, int locations,
            double area) {
  GenSpec spec;
  spec.robots = robots;
  spec.teams = teams;
  spec.locations = locations;
  spec.area = area;
  spec.seed = seed;
  const ProblemConfig cfg = generate_instance(spec);
  save_config(out, cfg.graph, cfg.teams);
  std::cout << "wrote " << out << " (" << cfg.teams.robot_count() << " robots, "
            << cfg.teams.team_count() << " teams, " << cfg.graph.location_count()
            << " locations)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"planner and simulator for recurring team communication in mobile robot networks"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out = ".";
  std::string format = "text";
  bool relax = false;
  bool consensus = false;
  int cycles = 3;
  std::uint64_t seed = 1;
  int gen_robots = 5;
  int gen_teams = 5;
  int gen_locations = 20;
  double gen_area = 40.0;

  const char* relax_help =
      "widen every robot's state set to all communication points instead of requiring "
      "certified single-robot geodesics";
  const char* format_help = "output file format";

  auto* vcmd = app.add_subcommand("validate", "check a configuration and print diagnostics");
  vcmd->add_option("--config", config_path, "configuration file")->required();
  vcmd->add_flag("--relax-footnote1", relax, relax_help);

  auto* pcmd = app.add_subcommand("plan", "synthesize a motion plan");
  pcmd->add_option("--config", config_path, "configuration file")->required();
  pcmd->add_option("--out", out, "output directory");
  pcmd->add_option("--format", format, format_help)->check(CLI::IsMember({"text", "csv"}));
  pcmd->add_flag("--relax-footnote1", relax, relax_help);

  auto* scmd = app.add_subcommand("simulate", "synthesize a plan and execute it");
  scmd->add_option("--config", config_path, "configuration file")->required();
  scmd->add_option("--out", out, "output directory");
  scmd->add_option("--cycles", cycles, "passes over the repeating block")
      ->check(CLI::NonNegativeNumber);
  scmd->add_option("--seed", seed, "seed for initial consensus values");
  scmd->add_flag("--consensus", consensus, "run the averaging protocol at meetings");
  scmd->add_option("--format", format, format_help)->check(CLI::IsMember({"text", "csv"}));
  scmd->add_flag("--relax-footnote1", relax, relax_help);

  auto* gcmd = app.add_subcommand("gen", "generate a random valid configuration");
  gcmd->add_option("--out", out, "output configuration file")->required();
  gcmd->add_option("--seed", seed, "instance seed");
  gcmd->add_option("--robots", gen_robots, "number of robots");
  gcmd->add_option("--teams", gen_teams, "number of teams");
  gcmd->add_option("--locations", gen_locations, "number of graph locations");
  gcmd->add_option("--area", gen_area, "side length of the coordinate square");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (vcmd->parsed()) return cmd_validate(config_path, relax);
    if (pcmd->parsed()) return cmd_plan(config_path, out, relax, format);
    if (scmd->parsed()) {
      return cmd_simulate(config_path, out, cycles, seed, consensus, relax, format);
    }
    if (gcmd->parsed()) {
      return cmd_gen(out, seed, gen_robots, gen_teams, gen_locations, gen_area);
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
