#include "flipsort/analysis.hpp"

#include <algorithm>
#include <chrono>
#include <random>

#include "bfs_engine.hpp"

namespace flipsort {

namespace {

using Clock = std::chrono::steady_clock;

// Rejection-sampled uniform draw; mt19937_64 output is fully specified by
// the standard, so instances are reproducible across platforms.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = ~0ull - ~0ull % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

}  // namespace

std::string to_string(ReachabilityVerdict v) {
  switch (v) {
    case ReachabilityVerdict::AlwaysReachable: return "AlwaysReachable";
    case ReachabilityVerdict::UnreachableOddParity: return "UnreachableOddParity";
    case ReachabilityVerdict::EvenParityUndetermined:
      return "EvenParityUndetermined";
    case ReachabilityVerdict::EmpiricalOnly: return "EmpiricalOnly";
  }
  return "?";
}

Reachability decide_dims(int rows, int cols) {
  if (rows < 1 || cols < 1)
    throw DimensionError("dimension extents must be positive");
  Reachability r;
  if (rows % 4 != 0 || cols % 4 != 0) {
    r.verdict = ReachabilityVerdict::AlwaysReachable;
    r.reason = "every arrangement is reachable: " +
               std::string(rows % 4 != 0 ? "row" : "column") + " count " +
               std::to_string(rows % 4 != 0 ? rows : cols) +
               " is not divisible by 4";
  } else {
    r.verdict = ReachabilityVerdict::EvenParityUndetermined;
    r.reason =
        "both extents divisible by 4: only even arrangements are reachable; "
        "evenness is necessary but not established as sufficient";
  }
  return r;
}

Reachability decide_instance(const MultiArray& ma) {
  Reachability r;
  if (ma.rank() != 2 || ma.mode() == Mode::Signed) {
    r.verdict = ReachabilityVerdict::EmpiricalOnly;
    r.reason = ma.rank() != 2
                   ? "no reachability criterion known for this rank; "
                     "empirical analysis only"
                   : "no reachability criterion known for signed arrays; "
                     "empirical analysis only";
    return r;
  }
  Reachability dims_verdict = decide_dims(ma.dims()[0], ma.dims()[1]);
  if (dims_verdict.verdict == ReachabilityVerdict::AlwaysReachable)
    return dims_verdict;

  const Parity p = id_parity(ma);
  r.parity = p;
  if (p == Parity::Odd) {
    r.verdict = ReachabilityVerdict::UnreachableOddParity;
    r.reason =
        "both extents divisible by 4 and the arrangement is an odd "
        "permutation: only even permutations can be realized";
  } else {
    r.verdict = ReachabilityVerdict::EvenParityUndetermined;
    r.reason =
        "both extents divisible by 4 and the arrangement is even: evenness "
        "is necessary but not established as sufficient";
  }
  return r;
}

OrbitReport orbit_stats(const std::vector<int>& dims, Mode mode,
                        const SearchBudget& budget,
                        const SolverOptions& options) {
  const auto t0 = Clock::now();
  const detail::Space space(dims, mode);
  detail::DistanceMap map(space, MultiArray::standard(dims, mode));

  auto budget_blocks = [&] {
    if (budget.max_depth && map.radius() + 1 > *budget.max_depth) return true;
    if (budget.max_nodes &&
        map.nodes_expanded() + map.frontier_size() > *budget.max_nodes)
      return true;
    if (budget.max_time_sec &&
        std::chrono::duration<double>(Clock::now() - t0).count() >=
            *budget.max_time_sec)
      return true;
    return false;
  };

  OrbitReport report;
  report.dims = dims;
  report.mode = mode;
  while (!map.exhausted()) {
    if (budget_blocks()) break;
    map.expand_layer(options.threads);
  }
  report.complete = map.exhausted();
  report.orbit_size = map.visited_count();
  report.eccentricity = map.radius();
  for (std::size_t d = 0; d < map.layer_sizes().size(); ++d)
    report.histogram.emplace_back(static_cast<int>(d), map.layer_sizes()[d]);
  report.nodes_expanded = map.nodes_expanded();
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  return report;
}

std::vector<std::pair<MultiArray, int>> enumerate_orbit(
    const std::vector<int>& dims, Mode mode, const SearchBudget& budget) {
  const auto t0 = Clock::now();
  const detail::Space space(dims, mode);
  detail::DistanceMap map(space, MultiArray::standard(dims, mode));
  while (!map.exhausted()) {
    if (budget.max_depth && map.radius() + 1 > *budget.max_depth) break;
    if (budget.max_nodes &&
        map.nodes_expanded() + map.frontier_size() > *budget.max_nodes)
      break;
    if (budget.max_time_sec &&
        std::chrono::duration<double>(Clock::now() - t0).count() >=
            *budget.max_time_sec)
      break;
    map.expand_layer(1);
  }
  std::vector<std::pair<MultiArray, int>> states;
  states.reserve(map.visited_count());
  map.for_each_visited([&](const MultiArray& ma, int d) {
    states.emplace_back(ma, d);
  });
  return states;
}

TheoremReport theorem_experiment(int max_cells) {
  // Largest space enumerated exhaustively; 10 cells (10! states) stays
  // comfortably inside memory and desk time.
  constexpr std::uint64_t kOrbitCap = 20'000'000;

  TheoremReport report;
  std::vector<std::vector<int>> shapes;
  for (int n = 1; n <= max_cells; ++n)
    for (int m = 1; n * m <= max_cells; ++m)
      shapes.push_back({n, m});
  for (std::vector<int> forced : {std::vector<int>{2, 4}, std::vector<int>{1, 8}})
    if (std::find(shapes.begin(), shapes.end(), forced) == shapes.end())
      shapes.push_back(forced);

  for (const std::vector<int>& dims : shapes) {
    TheoremRow row;
    row.dims = dims;
    const Reachability verdict = decide_dims(dims[0], dims[1]);
    if (verdict.verdict != ReachabilityVerdict::AlwaysReachable) {
      row.status = CheckStatus::Skipped;
      row.note = "no full-orbit prediction (both extents divisible by 4)";
      report.rows.push_back(std::move(row));
      continue;
    }
    row.expected = factorial(dims[0] * dims[1]);
    if (row.expected > kOrbitCap) {
      row.status = CheckStatus::Skipped;
      row.note = "state space too large for exhaustive enumeration";
      report.rows.push_back(std::move(row));
      continue;
    }
    const OrbitReport orbit = orbit_stats(dims, Mode::Unsigned);
    row.orbit_size = orbit.orbit_size;
    row.status =
        orbit.orbit_size == row.expected ? CheckStatus::Pass : CheckStatus::Fail;
    if (row.status == CheckStatus::Fail) {
      row.note = "orbit does not cover all permutations";
      report.all_pass = false;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

ParityWalkReport parity_walk_check(const std::vector<int>& dims, int steps,
                                   std::uint64_t seed) {
  check_dims(dims);
  if (dims.size() != 2 || dims[0] % 4 != 0 || dims[1] % 4 != 0)
    throw std::invalid_argument(
        "parity_walk_check requires rank-2 dims with both extents divisible "
        "by 4");

  ParityWalkReport report;
  report.dims = dims;
  report.steps = steps;
  report.seed = seed;

  const MultiArray start = MultiArray::standard(dims, Mode::Unsigned);
  for (const Move& mv : legal_moves(dims)) {
    const Parity closed = move_parity(dims, mv);
    const Parity oracle = id_parity(apply_move(start, mv));
    report.generator_parities.emplace_back(mv, closed);
    if (closed != Parity::Even || oracle != Parity::Even)
      report.generators_all_even = false;
  }

  std::mt19937_64 rng(seed);
  const std::vector<Move> moves = legal_moves(dims);
  MultiArray cur = start;
  for (int s = 1; s <= steps; ++s) {
    cur = apply_move(cur, moves[uniform_below(rng, moves.size())]);
    if (id_parity(cur) != Parity::Even) {
      report.walk_all_even = false;
      report.first_violation_step = s;
      break;
    }
  }
  return report;
}

MultiArray random_instance(const std::vector<int>& dims, Mode mode,
                           std::uint64_t seed, const RandomPolicy& policy) {
  check_dims(dims);
  std::mt19937_64 rng(seed);
  if (policy.kind == RandomPolicy::Kind::Walk) {
    MultiArray cur = MultiArray::standard(dims, mode);
    const std::vector<Move> moves = legal_moves(dims);
    for (int s = 0; s < policy.walk_steps; ++s)
      cur = apply_move(cur, moves[uniform_below(rng, moves.size())]);
    return cur;
  }
  int n = 1;
  for (int d : dims) n *= d;
  std::vector<Token> cells(static_cast<size_t>(n));
  for (int p = 0; p < n; ++p) cells[static_cast<size_t>(p)] = Token{p + 1};
  // Fisher-Yates with explicit draws (std::shuffle is not portable).
  for (int p = n - 1; p > 0; --p)
    std::swap(cells[static_cast<size_t>(p)],
              cells[uniform_below(rng, static_cast<std::uint64_t>(p) + 1)]);
  if (mode == Mode::Signed)
    for (Token& t : cells)
      t.orientation = (rng() & 1) ? Orientation::Down : Orientation::Up;
  return MultiArray::from_cells(dims, mode, std::move(cells));
}

}  // namespace flipsort
