// Command-line front end: solving, certificate verification, reachability
// decisions, orbit analysis, instance generation and the divisibility-
// criterion experiment.
//
// Exit codes: 0 success/solved/PASS, 1 usage or parse error, 2 verification
// failed or instance proven unreachable, 3 budget exhausted.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "flipsort/analysis.hpp"
#include "flipsort/core.hpp"
#include "flipsort/io.hpp"
#include "flipsort/solver.hpp"

namespace {

using namespace flipsort;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFailed = 2;
constexpr int kExitBudget = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<int> parse_dims_arg(const std::string& arg) {
  std::vector<int> dims;
  std::istringstream in(arg);
  int v;
  while (in >> v) dims.push_back(v);
  if (!in.eof() || dims.empty() || dims.size() > 3)
    throw std::runtime_error("--dims expects 1-3 space-separated extents, got '" +
                             arg + "'");
  check_dims(dims);
  return dims;
}

Mode parse_mode_arg(const std::string& arg) {
  if (arg == "unsigned") return Mode::Unsigned;
  if (arg == "signed") return Mode::Signed;
  throw std::runtime_error("--mode expects 'unsigned' or 'signed', got '" + arg +
                           "'");
}

ResultFormat parse_format_arg(const std::string& arg) {
  if (arg == "text") return ResultFormat::Text;
  if (arg == "machine") return ResultFormat::Machine;
  throw std::runtime_error("--format expects 'text' or 'machine', got '" + arg +
                           "'");
}

struct CommonFlags {
  std::string format = "text";
};

int exit_code_for(SolveStatus status) {
  switch (status) {
    case SolveStatus::Solved: return kExitOk;
    case SolveStatus::ProvenUnreachable: return kExitFailed;
    case SolveStatus::BudgetExhausted: return kExitBudget;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"prefix-reversal rearrangement toolkit"};
  app.require_subcommand(1);

  // --- solve ---
  auto* solve = app.add_subcommand("solve", "solve an instance file");
  std::string solve_file, solve_exact = "bfs";
  bool solve_greedy = false, solve_deterministic = false;
  std::uint64_t solve_max_nodes = 0;
  double solve_max_time = 0.0;
  int solve_max_depth = 0, solve_threads = 1;
  CommonFlags solve_flags;
  solve->add_option("file", solve_file, "instance file")->required();
  auto* exact_opt =
      solve->add_option("--exact", solve_exact, "exact solver: bfs|bibfs|ida");
  solve->add_flag("--greedy", solve_greedy, "rank-1 greedy solver")
      ->excludes(exact_opt);
  solve->add_flag("--deterministic", solve_deterministic,
                  "byte-stable output (elapsed reported as 0)");
  solve->add_option("--max-nodes", solve_max_nodes, "expanded-node budget");
  solve->add_option("--max-time", solve_max_time, "time budget in seconds");
  solve->add_option("--max-depth", solve_max_depth, "depth budget");
  solve->add_option("--threads", solve_threads, "BFS worker count");
  solve->add_option("--format", solve_flags.format, "text|machine");

  // --- verify ---
  auto* verify_cmd = app.add_subcommand("verify", "replay a move sequence");
  std::string verify_file, verify_moves;
  CommonFlags verify_flags;
  verify_cmd->add_option("file", verify_file, "instance file")->required();
  verify_cmd->add_option("--moves", verify_moves, "move sequence, e.g. 'H5 H2 H3'")
      ->required();
  verify_cmd->add_option("--format", verify_flags.format, "text|machine");

  // --- decide ---
  auto* decide_cmd =
      app.add_subcommand("decide", "reachability verdict for an instance or dims");
  std::string decide_file, decide_dims_arg;
  CommonFlags decide_flags;
  auto* decide_file_opt = decide_cmd->add_option("file", decide_file, "instance file");
  decide_cmd->add_option("--dims", decide_dims_arg, "rank-2 dims, e.g. '4 4'")
      ->excludes(decide_file_opt);
  decide_cmd->add_option("--format", decide_flags.format, "text|machine");

  // --- orbit ---
  auto* orbit_cmd = app.add_subcommand("orbit", "enumerate the orbit of standard");
  std::string orbit_dims_arg, orbit_mode_arg = "unsigned";
  std::uint64_t orbit_max_nodes = 0;
  double orbit_max_time = 0.0;
  int orbit_threads = 1;
  bool orbit_deterministic = false;
  CommonFlags orbit_flags;
  orbit_cmd->add_option("--dims", orbit_dims_arg, "dims, e.g. '2 3'")->required();
  orbit_cmd->add_option("--mode", orbit_mode_arg, "unsigned|signed");
  orbit_cmd->add_option("--max-nodes", orbit_max_nodes, "expanded-node budget");
  orbit_cmd->add_option("--max-time", orbit_max_time, "time budget in seconds");
  orbit_cmd->add_option("--threads", orbit_threads, "BFS worker count");
  orbit_cmd->add_flag("--deterministic", orbit_deterministic,
                      "byte-stable output (elapsed reported as 0)");
  orbit_cmd->add_option("--format", orbit_flags.format, "text|machine");

  // --- random ---
  auto* random_cmd = app.add_subcommand("random", "emit a seeded random instance");
  std::string random_dims_arg, random_mode_arg = "unsigned",
              random_policy = "uniform";
  std::uint64_t random_seed = 0;
  CommonFlags random_flags;
  random_cmd->add_option("--dims", random_dims_arg, "dims, e.g. '1 5'")->required();
  random_cmd->add_option("--mode", random_mode_arg, "unsigned|signed");
  random_cmd
      ->add_option("--seed", random_seed,
                   "RNG seed (required: no wall-clock default)")
      ->required();
  random_cmd->add_option("--policy", random_policy, "uniform | walk:K");
  random_cmd->add_option("--format", random_flags.format, "text|machine");

  // --- theorem-check ---
  auto* theorem_cmd =
      app.add_subcommand("theorem-check", "orbit sizes vs the divisibility criterion");
  int theorem_max_cells = 9;
  CommonFlags theorem_flags;
  theorem_cmd->add_option("--max-cells", theorem_max_cells,
                          "enumerate all rank-2 dims up to this many cells");
  theorem_cmd->add_option("--format", theorem_flags.format, "text|machine");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e, std::cerr, std::cerr);
    return kExitUsage;
  }

  try {
    if (*solve) {
      const ResultFormat format = parse_format_arg(solve_flags.format);
      const MultiArray instance = parse_instance(read_file(solve_file));
      SearchBudget budget;
      if (solve_max_nodes > 0) budget.max_nodes = solve_max_nodes;
      if (solve_max_time > 0) budget.max_time_sec = solve_max_time;
      if (solve_max_depth > 0) budget.max_depth = solve_max_depth;
      SolverOptions options{solve_threads};

      Solution solution;
      std::string solver_name;
      if (solve_greedy) {
        solver_name = "greedy";
        solution = instance.mode() == Mode::Signed
                       ? greedy_signed_1d(instance)
                       : greedy_unsigned_1d(instance);
      } else if (solve_exact == "bfs") {
        solver_name = "bfs";
        solution = bfs_solve(instance, budget, options);
      } else if (solve_exact == "bibfs") {
        solver_name = "bibfs";
        solution = bidirectional_bfs_solve(instance, budget, options);
      } else if (solve_exact == "ida") {
        solver_name = "ida";
        solution = ida_solve(instance, budget);
      } else {
        std::cerr << "unknown exact solver '" << solve_exact << "'\n";
        return kExitUsage;
      }
      SolutionContext ctx{instance.dims(), instance.mode(), solver_name,
                          solve_deterministic, std::nullopt};
      std::cout << emit_solution(solution, ctx, format);
      return exit_code_for(solution.status);
    }

    if (*verify_cmd) {
      const ResultFormat format = parse_format_arg(verify_flags.format);
      const MultiArray instance = parse_instance(read_file(verify_file));
      const MoveSequence moves = parse_moves(verify_moves);
      const VerifyResult result = verify(instance, moves);
      std::cout << emit_verification(result, instance.dims(), instance.mode(),
                                     moves, format);
      return result.valid && result.solved ? kExitOk : kExitFailed;
    }

    if (*decide_cmd) {
      const ResultFormat format = parse_format_arg(decide_flags.format);
      Reachability verdict;
      std::vector<int> dims;
      Mode mode = Mode::Unsigned;
      if (!decide_dims_arg.empty()) {
        dims = parse_dims_arg(decide_dims_arg);
        if (dims.size() != 2)
          throw std::runtime_error("decide --dims expects exactly 2 extents");
        verdict = decide_dims(dims[0], dims[1]);
      } else if (!decide_file.empty()) {
        const MultiArray instance = parse_instance(read_file(decide_file));
        dims = instance.dims();
        mode = instance.mode();
        verdict = decide_instance(instance);
      } else {
        std::cerr << "decide requires an instance file or --dims\n";
        return kExitUsage;
      }
      std::cout << emit_reachability(verdict, dims, mode, format);
      return verdict.verdict == ReachabilityVerdict::UnreachableOddParity
                 ? kExitFailed
                 : kExitOk;
    }

    if (*orbit_cmd) {
      const ResultFormat format = parse_format_arg(orbit_flags.format);
      const std::vector<int> dims = parse_dims_arg(orbit_dims_arg);
      const Mode mode = parse_mode_arg(orbit_mode_arg);
      SearchBudget budget;
      if (orbit_max_nodes > 0) budget.max_nodes = orbit_max_nodes;
      if (orbit_max_time > 0) budget.max_time_sec = orbit_max_time;
      const OrbitReport report =
          orbit_stats(dims, mode, budget, SolverOptions{orbit_threads});
      std::cout << emit_orbit(report, format, orbit_deterministic);
      return report.complete ? kExitOk : kExitBudget;
    }

    if (*random_cmd) {
      const ResultFormat format = parse_format_arg(random_flags.format);
      const std::vector<int> dims = parse_dims_arg(random_dims_arg);
      const Mode mode = parse_mode_arg(random_mode_arg);
      RandomPolicy policy = RandomPolicy::uniform();
      if (random_policy.rfind("walk:", 0) == 0) {
        policy = RandomPolicy::walk(std::stoi(random_policy.substr(5)));
      } else if (random_policy != "uniform") {
        throw std::runtime_error("--policy expects 'uniform' or 'walk:K', got '" +
                                 random_policy + "'");
      }
      const MultiArray instance = random_instance(dims, mode, random_seed, policy);
      std::cout << emit_instance_result(instance, random_seed, random_policy,
                                        format);
      return kExitOk;
    }

    if (*theorem_cmd) {
      const ResultFormat format = parse_format_arg(theorem_flags.format);
      const TheoremReport report = theorem_experiment(theorem_max_cells);
      std::cout << emit_theorem(report, format);
      return report.all_pass ? kExitOk : kExitFailed;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const MoveParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
