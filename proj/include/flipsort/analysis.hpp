// Rearrangeability decisions, parity certificates, orbit/diameter
// enumeration over the generated move group, and the experiment harness
// that cross-checks the divisibility-by-4 criterion at desk scale.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "flipsort/core.hpp"
#include "flipsort/solver.hpp"

namespace flipsort {

enum class ReachabilityVerdict : std::uint8_t {
  AlwaysReachable,
  UnreachableOddParity,
  EvenParityUndetermined,
  EmpiricalOnly,
};

std::string to_string(ReachabilityVerdict v);

struct Reachability {
  ReachabilityVerdict verdict = ReachabilityVerdict::EmpiricalOnly;
  std::optional<Parity> parity;
  std::string reason;
};

// Dims-level decision for rank-2 unsigned arrays: every arrangement is
// reachable when either extent is not divisible by 4; otherwise the answer
// depends on the instance (consult decide_instance). Other ranks have no
// known criterion and are reported EmpiricalOnly.
Reachability decide_dims(int rows, int cols);

// Instance-level decision for rank-2 unsigned arrays. In the constrained
// case (both extents divisible by 4) only even permutations can be realized,
// so odd parity is a proof of unreachability; even parity stays undetermined
// because evenness is only known to be necessary.
Reachability decide_instance(const MultiArray& ma);

struct OrbitReport {
  std::vector<int> dims;
  Mode mode = Mode::Unsigned;
  std::uint64_t orbit_size = 0;
  int eccentricity = 0;  // max BFS distance from the standard array
  std::vector<std::pair<int, std::uint64_t>> histogram;  // (distance, count)
  bool complete = true;  // false when a budget cut enumeration short
  std::uint64_t nodes_expanded = 0;
  double elapsed_ms = 0.0;
};

// BFS from the standard array over all legal moves. Every generator is an
// involution, so reachability from standard equals reachability to standard
// and the eccentricity of the standard state is the graph diameter for
// vertex-transitive generator sets.
OrbitReport orbit_stats(const std::vector<int>& dims, Mode mode,
                        const SearchBudget& budget = {},
                        const SolverOptions& options = {});

// Bounded state dump of the orbit (instrumented runs and small experiments).
std::vector<std::pair<MultiArray, int>> enumerate_orbit(
    const std::vector<int>& dims, Mode mode, const SearchBudget& budget = {});

enum class CheckStatus : std::uint8_t { Pass, Fail, Skipped };

struct TheoremRow {
  std::vector<int> dims;
  CheckStatus status = CheckStatus::Skipped;
  std::uint64_t orbit_size = 0;
  std::uint64_t expected = 0;  // (cell count)! where the criterion predicts full
  std::string note;
};

struct TheoremReport {
  std::vector<TheoremRow> rows;
  bool all_pass = true;
};

// For every rank-2 dims with cellcount <= max_cells, plus (2,4) and (1,8):
// enumerates the unsigned orbit and compares it against (n*m)! wherever the
// divisibility criterion predicts full reachability. Failures are data.
TheoremReport theorem_experiment(int max_cells);

struct ParityWalkReport {
  std::vector<int> dims;
  std::vector<std::pair<Move, Parity>> generator_parities;
  bool generators_all_even = true;
  int steps = 0;
  bool walk_all_even = true;
  std::optional<int> first_violation_step;
  std::uint64_t seed = 0;
};

// On dims with both extents divisible by 4: checks that every generator is
// an even permutation (closed form cross-checked against the cycle oracle)
// and that a seeded random walk from standard keeps id parity Even.
ParityWalkReport parity_walk_check(const std::vector<int>& dims, int steps,
                                   std::uint64_t seed);

struct RandomPolicy {
  enum class Kind : std::uint8_t { Uniform, Walk } kind = Kind::Uniform;
  int walk_steps = 0;

  static RandomPolicy uniform() { return {Kind::Uniform, 0}; }
  static RandomPolicy walk(int steps) { return {Kind::Walk, steps}; }
};

// Seed-deterministic instance generation. `uniform` draws a uniform
// permutation (plus uniform orientations in signed mode) and may be
// unreachable; `walk` applies k random legal moves to standard and is
// reachable by construction.
MultiArray random_instance(const std::vector<int>& dims, Mode mode,
                           std::uint64_t seed, const RandomPolicy& policy);

}  // namespace flipsort
