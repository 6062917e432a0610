#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "csqfplan/ipran.hpp"
#include "csqfplan/json_io.hpp"
#include "csqfplan/lp.hpp"
#include "csqfplan/oracle.hpp"
#include "csqfplan/runner.hpp"
#include "csqfplan/validate.hpp"
#include "json.hpp"

namespace {

using namespace csqf;

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitError = 2;

void print_error(const char* kind, const std::string& message) {
  nlohmann::json j = {{"error", kind}, {"message", message}};
  std::cerr << j.dump() << "\n";
}

struct GenerateArgs {
  std::string preset = "desk";
  std::string scenario = "sc1";
  int demands = -1;
  uint64_t seed = 1;
  int extra_shift = -1;
  int packet_du = -1;
  std::string output;
};

int run_generate(const GenerateArgs& args) {
  IpranParams params = ipran_preset(args.preset);
  apply_scenario(params, args.scenario);
  if (args.demands >= 0) params.demand_count = args.demands;
  params.seed = args.seed;
  if (args.extra_shift >= 0) params.max_extra_shift = args.extra_shift;
  if (args.packet_du >= 1) params.packet_du = args.packet_du;

  const Instance inst = generate_instance(params);
  save_instance(inst, args.output);

  nlohmann::json echo = {{"command", "generate"},
                         {"preset", args.preset},
                         {"scenario", args.scenario},
                         {"demands", params.demand_count},
                         {"seed", params.seed},
                         {"R", params.max_extra_shift},
                         {"packet_du", params.packet_du},
                         {"nodes", inst.num_nodes()},
                         {"arcs", inst.num_arcs()},
                         {"output", args.output}};
  std::cout << echo.dump(2) << "\n";
  return kExitOk;
}

struct SolveArgs {
  std::string instance;
  SolveOptions options;
  std::string output;
  std::string metrics;
  std::string strengthen = "off";
};

int run_solve_cmd(const SolveArgs& args) {
  const Instance inst = load_instance(args.instance);
  SolveOptions options = args.options;
  options.strengthen = args.strengthen == "on";
  const SolveResult result = run_solve(inst, options);
  if (!args.output.empty()) save_solution(inst, result.solution, args.output);
  const std::string metrics = metrics_json(inst, options, result);
  if (!args.metrics.empty()) write_text_file(args.metrics, metrics + "\n");
  std::cout << metrics << "\n";
  return kExitOk;
}

struct ValidateArgs {
  std::string instance;
  std::string solution;
  std::string report;
};

int run_validate(const ValidateArgs& args) {
  const Instance inst = load_instance(args.instance);
  const PlanSolution sol = load_solution(inst, args.solution);
  const int64_t restated = solution_bandwidth(inst, sol);
  if (restated != sol.objective)
    throw StructuralError("solution objective " +
                          std::to_string(sol.objective) +
                          " does not match the assignments (" +
                          std::to_string(restated) + " du)");
  const ValidationReport report = validate(inst, sol);
  const std::string text = report.to_json();
  if (!args.report.empty()) write_text_file(args.report, text + "\n");
  std::cout << text << "\n";
  return report.feasible ? kExitOk : kExitInfeasible;
}

struct OracleArgs {
  std::string instance;
  std::string output;
  OracleLimits limits;
};

int run_oracle(const OracleArgs& args) {
  const Instance inst = load_instance(args.instance);
  const OracleResult result = brute_force_optimum(inst, args.limits);
  if (!args.output.empty()) save_solution(inst, result.solution, args.output);
  nlohmann::json j = {{"command", "oracle"},
                      {"objective_du", result.solution.objective},
                      {"accepted_demands", result.solution.assignments.size()},
                      {"explored_nodes", result.explored},
                      {"candidate_spaths", result.spath_count}};
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

struct CompareArgs {
  CompareOptions options;
  std::string seeds_text = "1,2,3";
  std::string demands_text;
  std::string queues_text = "0,1";
  std::string output;
};

std::vector<uint64_t> parse_u64_list(const std::string& text) {
  std::vector<uint64_t> values;
  std::istringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) values.push_back(std::stoull(item));
  if (values.empty()) throw ModelError("empty list: " + text);
  return values;
}

int run_compare_cmd(CompareArgs args) {
  args.options.seeds = parse_u64_list(args.seeds_text);
  if (!args.demands_text.empty()) {
    args.options.demand_counts.clear();
    for (const uint64_t v : parse_u64_list(args.demands_text))
      args.options.demand_counts.push_back(static_cast<int>(v));
  }
  args.options.queue_shifts.clear();
  for (const uint64_t v : parse_u64_list(args.queues_text))
    args.options.queue_shifts.push_back(static_cast<int>(v));

  const std::vector<CompareRow> rows = run_compare(args.options);
  const std::string csv = compare_csv(rows);
  if (!args.output.empty())
    write_text_file(args.output, csv);
  else
    std::cout << csv;
  return kExitOk;
}

struct ReportArgs {
  std::string input;
  std::string output;
};

int run_report(const ReportArgs& args) {
  const std::string summary = report_csv(read_text_file(args.input));
  if (!args.output.empty())
    write_text_file(args.output, summary);
  else
    std::cout << summary;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Planning and admission toolkit for cycle-scheduled "
               "deterministic networks"};
  app.require_subcommand(1);

  GenerateArgs gen;
  CLI::App* generate = app.add_subcommand(
      "generate", "Generate a seeded IPRAN-style instance");
  generate->add_option("--preset", gen.preset, "tiny | desk | paper")
      ->capture_default_str();
  generate->add_option("--scenario", gen.scenario, "sc1 | sc2 | sc3")
      ->capture_default_str();
  generate->add_option("--demands", gen.demands, "demand count");
  generate->add_option("--seed", gen.seed, "rng seed")->capture_default_str();
  generate->add_option("--extra-shift", gen.extra_shift,
                       "override max extra shift R");
  generate->add_option("--packet-du", gen.packet_du,
                       "override packet size in du");
  generate->add_option("-o,--output", gen.output, "instance file")
      ->required();

  SolveArgs solve;
  CLI::App* solve_cmd =
      app.add_subcommand("solve", "Run a planner on an instance");
  solve_cmd->add_option("-i,--instance", solve.instance, "instance file")
      ->required();
  solve_cmd
      ->add_option("-a,--algorithm", solve.options.algorithm,
                   "greedy | cg-rr | nocycleinfo")
      ->capture_default_str();
  solve_cmd
      ->add_option("--order", solve.options.order,
                   "greedy demand order: input | random:<seed>")
      ->capture_default_str();
  solve_cmd->add_option("--k", solve.options.k,
                        "candidate cap per demand (0 = natural yield)");
  solve_cmd->add_option("--epsilon", solve.options.epsilon,
                        "availability floor in the balance metric")
      ->capture_default_str();
  solve_cmd
      ->add_option("--strengthen", solve.strengthen,
                   "packet-size tightened capacities: on | off")
      ->capture_default_str();
  solve_cmd->add_option("--rr-runs", solve.options.rr_runs,
                        "rounding runs")
      ->capture_default_str();
  solve_cmd->add_option("--seed", solve.options.seed, "rounding seed")
      ->capture_default_str();
  solve_cmd->add_option("--max-cg-solves", solve.options.max_cg_solves_per_demand,
                        "master-solve cap per demand")
      ->capture_default_str();
  solve_cmd->add_option("-o,--output", solve.output, "solution file");
  solve_cmd->add_option("-m,--metrics", solve.metrics, "metrics file");

  ValidateArgs val;
  CLI::App* validate_cmd = app.add_subcommand(
      "validate", "Check a solution against an instance (exit 1 when "
                  "infeasible)");
  validate_cmd->add_option("-i,--instance", val.instance, "instance file")
      ->required();
  validate_cmd->add_option("-s,--solution", val.solution, "solution file")
      ->required();
  validate_cmd->add_option("-o,--report", val.report, "report file");

  OracleArgs oracle;
  CLI::App* oracle_cmd = app.add_subcommand(
      "oracle", "Exact optimum by exhaustive search (small instances only)");
  oracle_cmd->add_option("-i,--instance", oracle.instance, "instance file")
      ->required();
  oracle_cmd->add_option("-o,--output", oracle.output, "solution file");
  oracle_cmd->add_option("--max-nodes", oracle.limits.max_nodes)
      ->capture_default_str();
  oracle_cmd->add_option("--max-demands", oracle.limits.max_demands)
      ->capture_default_str();
  oracle_cmd->add_option("--max-cycles", oracle.limits.max_cycles)
      ->capture_default_str();
  oracle_cmd->add_option("--max-extra-shift", oracle.limits.max_extra_shift)
      ->capture_default_str();
  oracle_cmd
      ->add_option("--max-spaths", oracle.limits.max_spaths_per_demand,
                   "enumeration cap per demand")
      ->capture_default_str();

  CompareArgs cmp;
  CLI::App* compare_cmd = app.add_subcommand(
      "compare",
      "Sweep algorithms x queue counts x strengthening over seeds (CSV)");
  compare_cmd->add_option("--preset", cmp.options.preset, "tiny | desk | paper")
      ->capture_default_str();
  compare_cmd->add_option("--scenario", cmp.options.scenario, "sc1 | sc2 | sc3")
      ->capture_default_str();
  compare_cmd->add_option("--demands", cmp.demands_text,
                          "comma-separated demand counts");
  compare_cmd->add_option("--seeds", cmp.seeds_text, "comma-separated seeds")
      ->capture_default_str();
  compare_cmd->add_option("--queues", cmp.queues_text,
                          "comma-separated R values")
      ->capture_default_str();
  compare_cmd->add_option("--rr-runs", cmp.options.rr_runs, "rounding runs")
      ->capture_default_str();
  compare_cmd->add_flag("--oracle", cmp.options.include_oracle,
                        "include the exact oracle column");
  compare_cmd->add_option("-o,--output", cmp.output, "CSV file (stdout "
                          "otherwise)");

  ReportArgs rep;
  CLI::App* report_cmd = app.add_subcommand(
      "report", "Aggregate a compare CSV over seeds");
  report_cmd->add_option("-i,--input", rep.input, "compare CSV")->required();
  report_cmd->add_option("-o,--output", rep.output, "summary CSV (stdout "
                         "otherwise)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitError;
  }

  try {
    if (generate->parsed()) return run_generate(gen);
    if (solve_cmd->parsed()) return run_solve_cmd(solve);
    if (validate_cmd->parsed()) return run_validate(val);
    if (oracle_cmd->parsed()) return run_oracle(oracle);
    if (compare_cmd->parsed()) return run_compare_cmd(cmp);
    if (report_cmd->parsed()) return run_report(rep);
  } catch (const StructuralError& e) {
    print_error("structural", e.what());
    return kExitError;
  } catch (const GenerationError& e) {
    print_error("generation", e.what());
    return kExitError;
  } catch (const LimitError& e) {
    print_error("limit", e.what());
    return kExitError;
  } catch (const ModelError& e) {
    print_error("model", e.what());
    return kExitError;
  } catch (const lp::LpError& e) {
    print_error("lp", e.what());
    return kExitError;
  } catch (const std::exception& e) {
    print_error("internal", e.what());
    return kExitError;
  }
  return kExitError;
}
