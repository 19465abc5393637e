// Solvers producing move sequences that rearrange arrays to standard form:
// greedy rank-1 schemes with provable flip bounds, exact search (BFS,
// bidirectional BFS, IDA*), the breakpoint lower bound, and certificate
// replay. Exact solvers report the true Cayley-graph distance; BFS proves
// unreachability by exhausting the component of the standard array.

#pragma once

#include <chrono>
#include <cstdint>
#include <optional>

#include "flipsort/core.hpp"

namespace flipsort {

enum class SolveStatus : std::uint8_t {
  Solved,
  ProvenUnreachable,  // full reachable component enumerated, target absent
  BudgetExhausted,
};

struct SearchBudget {
  std::optional<std::uint64_t> max_nodes;  // expanded-node cap
  std::optional<int> max_depth;            // search-depth cap
  std::optional<double> max_time_sec;      // wall-clock cap

  bool unlimited() const {
    return !max_nodes && !max_depth && !max_time_sec;
  }
};

struct SolverOptions {
  int threads = 1;  // BFS frontier workers; results are thread-count invariant
};

struct Solution {
  SolveStatus status = SolveStatus::Solved;
  MoveSequence moves;  // meaningful only when status == Solved
  bool optimal = false;
  std::uint64_t nodes_expanded = 0;
  double elapsed_ms = 0.0;

  std::size_t length() const { return moves.size(); }
  bool solved() const { return status == SolveStatus::Solved; }
};

// Bring-the-largest-to-front pancake scheme. At most 2 flips per position
// n..3 and at most 1 for the final pair: length <= 2n-3 for n >= 2.
Solution greedy_unsigned_1d(const MultiArray& line);

// Per-element burnt scheme: bring to front, flip alone if it would land the
// wrong way up, flip into place — at most 3 flips each, so length <= 3n.
Solution greedy_signed_1d(const MultiArray& line);

// Exact distance via breadth-first search from the standard array (the
// generators are involutions, so distances are symmetric). The returned
// sequence is the lexicographically smallest optimal one under canonical
// move order, independent of thread count.
Solution bfs_solve(const MultiArray& ma, const SearchBudget& budget = {},
                   const SolverOptions& options = {});

// Meet-in-the-middle variant; same exact length, some optimal sequence.
Solution bidirectional_bfs_solve(const MultiArray& ma,
                                 const SearchBudget& budget = {},
                                 const SolverOptions& options = {});

// Iterative-deepening A*: breakpoint heuristic for rank 1, the trivial 0/1
// bound otherwise. Memory-light and exact; cannot prove unreachability.
Solution ida_solve(const MultiArray& ma, const SearchBudget& budget = {});

// Admissible lower bound on flip distance for rank-1 lines. Signed mode
// counts positions i in [1,n] with s_{i+1} != s_i + 1 over the signed values
// with sentinel n+1 (a flip changes at most one signed adjacency); unsigned
// mode counts |s_{i+1} - s_i| != 1 (reversals preserve unordered adjacency
// except at the cut).
int breakpoint_bound(const MultiArray& line);

struct VerifyResult {
  bool valid = true;
  std::optional<std::size_t> first_invalid;  // index of first illegal move
  bool solved = false;
  MultiArray final;  // state reached after the last legal move
};

// Replays a move sequence; illegal moves are reported as data, not thrown.
VerifyResult verify(const MultiArray& ma, const MoveSequence& moves);

}  // namespace flipsort
