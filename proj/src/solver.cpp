#include "flipsort/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "bfs_engine.hpp"

namespace flipsort {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

int find_abs_id(const MultiArray& line, int id) {
  for (int p = 0; p < line.cell_count(); ++p)
    if (line.cell(p).id == id) return p;
  return -1;  // unreachable for valid arrays
}

void require_line(const MultiArray& line, Mode mode, const char* who) {
  if (line.rank() != 1)
    throw ModeError(std::string(who) + " requires a rank-1 array");
  if (line.mode() != mode)
    throw ModeError(std::string(who) + " requires " +
                    (mode == Mode::Unsigned ? "unsigned" : "signed") + " mode");
}

struct BudgetGate {
  const SearchBudget& budget;
  Clock::time_point t0;

  bool nodes_ok(std::uint64_t next_total) const {
    return !budget.max_nodes || next_total <= *budget.max_nodes;
  }
  bool depth_ok(int depth) const {
    return !budget.max_depth || depth <= *budget.max_depth;
  }
  bool time_ok() const {
    return !budget.max_time_sec ||
           ms_since(t0) < *budget.max_time_sec * 1000.0;
  }
};

Solution finish(Solution s, Clock::time_point t0) {
  s.elapsed_ms = ms_since(t0);
  return s;
}

}  // namespace

Solution greedy_unsigned_1d(const MultiArray& line) {
  require_line(line, Mode::Unsigned, "greedy_unsigned_1d");
  const auto t0 = Clock::now();
  const int n = line.cell_count();
  MultiArray cur = line;
  Solution out;
  // Place n, n-1, ..., 2; each needs a bring-to-front flip (unless already
  // in front) and a flip into place (unless already placed).
  for (int k = n; k >= 2; --k) {
    const int pos = find_abs_id(cur, k);
    if (pos == k - 1) continue;
    if (pos > 0) {
      out.moves.push_back(Move{0, pos + 1});
      cur = apply_move(cur, out.moves.back());
    }
    out.moves.push_back(Move{0, k});
    cur = apply_move(cur, out.moves.back());
  }
  out.status = SolveStatus::Solved;
  out.optimal = false;
  return finish(std::move(out), t0);
}

Solution greedy_signed_1d(const MultiArray& line) {
  require_line(line, Mode::Signed, "greedy_signed_1d");
  const auto t0 = Clock::now();
  const int n = line.cell_count();
  MultiArray cur = line;
  Solution out;
  auto flip = [&](int depth) {
    out.moves.push_back(Move{0, depth});
    cur = apply_move(cur, out.moves.back());
  };
  for (int k = n; k >= 1; --k) {
    int pos = find_abs_id(cur, k);
    if (pos == k - 1 && cur.cell(pos).orientation == Orientation::Up) continue;
    if (pos > 0) flip(pos + 1);  // bring to front (flips its orientation)
    // The final flip turns the front token over, so it must sit face-down
    // before flipping into place.
    if (cur.cell(0).orientation == Orientation::Up) flip(1);
    flip(k);
  }
  out.status = SolveStatus::Solved;
  out.optimal = false;
  return finish(std::move(out), t0);
}

int breakpoint_bound(const MultiArray& line) {
  if (line.rank() != 1)
    throw DimensionError("breakpoint_bound requires a rank-1 array");
  const int n = line.cell_count();
  const bool is_signed = line.mode() == Mode::Signed;
  int count = 0;
  for (int i = 0; i < n; ++i) {
    const int a = signed_value(line.cell(i));
    const int b = i + 1 < n ? signed_value(line.cell(i + 1)) : n + 1;
    if (is_signed ? (b != a + 1) : (std::abs(b - a) != 1)) ++count;
  }
  return count;
}

Solution bfs_solve(const MultiArray& ma, const SearchBudget& budget,
                   const SolverOptions& options) {
  const auto t0 = Clock::now();
  Solution out;
  out.optimal = true;
  if (is_standard(ma)) return finish(std::move(out), t0);

  const detail::Space space(ma.dims(), ma.mode());
  detail::DistanceMap map(space, MultiArray::standard(ma.dims(), ma.mode()));
  const BudgetGate gate{budget, t0};

  for (;;) {
    if (map.distance(ma)) break;  // layer holding the instance is complete
    if (map.exhausted()) {
      out.status = SolveStatus::ProvenUnreachable;
      out.nodes_expanded = map.nodes_expanded();
      return finish(std::move(out), t0);
    }
    if (!gate.depth_ok(map.radius() + 1) ||
        !gate.nodes_ok(map.nodes_expanded() + map.frontier_size()) ||
        !gate.time_ok()) {
      out.status = SolveStatus::BudgetExhausted;
      out.nodes_expanded = map.nodes_expanded();
      return finish(std::move(out), t0);
    }
    map.expand_layer(options.threads);
  }

  // Canonical-order greedy descent yields the lexicographically smallest
  // optimal sequence.
  auto moves = map.descend(ma);
  out.moves = std::move(*moves);
  out.nodes_expanded = map.nodes_expanded();
  return finish(std::move(out), t0);
}

Solution bidirectional_bfs_solve(const MultiArray& ma,
                                 const SearchBudget& budget,
                                 const SolverOptions& options) {
  const auto t0 = Clock::now();
  Solution out;
  out.optimal = true;
  if (is_standard(ma)) return finish(std::move(out), t0);

  const detail::Space space(ma.dims(), ma.mode());
  const MultiArray target = MultiArray::standard(ma.dims(), ma.mode());
  detail::DistanceMap from_instance(space, ma);
  detail::DistanceMap from_target(space, target);
  const BudgetGate gate{budget, t0};

  std::uint64_t best = ~0ull;
  std::optional<MultiArray> best_meet;
  std::optional<CanonicalKey> best_meet_key;

  auto probe_meets = [&](detail::DistanceMap& just_expanded,
                         const detail::DistanceMap& other) {
    just_expanded.for_each_frontier([&](const MultiArray& x) {
      if (auto d = other.distance(x)) {
        const std::uint64_t cand =
            static_cast<std::uint64_t>(just_expanded.radius()) +
            static_cast<std::uint64_t>(*d);
        CanonicalKey key = CanonicalKey::encode(x);
        // Tie-break on the packed state so the reconstruction is independent
        // of discovery order and worker count.
        if (cand < best ||
            (cand == best && key.bytes() < best_meet_key->bytes())) {
          best = cand;
          best_meet = x;
          best_meet_key = std::move(key);
        }
      }
    });
  };

  auto nodes_total = [&] {
    return from_instance.nodes_expanded() + from_target.nodes_expanded();
  };

  for (;;) {
    // A fully enumerated component settles the question exactly.
    if (from_instance.exhausted()) {
      if (auto back = from_instance.descend(target)) {  // target -> instance
        out.moves.assign(back->rbegin(), back->rend());
        out.nodes_expanded = nodes_total();
        return finish(std::move(out), t0);
      }
      out.status = SolveStatus::ProvenUnreachable;
      out.nodes_expanded = nodes_total();
      return finish(std::move(out), t0);
    }
    if (from_target.exhausted()) {
      if (auto moves = from_target.descend(ma)) {
        out.moves = std::move(*moves);
        out.nodes_expanded = nodes_total();
        return finish(std::move(out), t0);
      }
      out.status = SolveStatus::ProvenUnreachable;
      out.nodes_expanded = nodes_total();
      return finish(std::move(out), t0);
    }
    if (best != ~0ull &&
        best <= static_cast<std::uint64_t>(from_instance.radius()) +
                    static_cast<std::uint64_t>(from_target.radius()))
      break;

    detail::DistanceMap& side =
        from_instance.frontier_size() <= from_target.frontier_size()
            ? from_instance
            : from_target;
    if (!gate.depth_ok(from_instance.radius() + from_target.radius() + 1) ||
        !gate.nodes_ok(nodes_total() + side.frontier_size()) ||
        !gate.time_ok()) {
      out.status = SolveStatus::BudgetExhausted;
      out.nodes_expanded = nodes_total();
      return finish(std::move(out), t0);
    }
    if (side.expand_layer(options.threads) > 0)
      probe_meets(side, &side == &from_instance ? from_target : from_instance);
  }

  // instance -> meet (reversed descent; every move is an involution),
  // then meet -> target.
  auto to_instance = from_instance.descend(*best_meet);
  auto to_target = from_target.descend(*best_meet);
  out.moves.assign(to_instance->rbegin(), to_instance->rend());
  out.moves.insert(out.moves.end(), to_target->begin(), to_target->end());
  out.nodes_expanded = nodes_total();
  return finish(std::move(out), t0);
}

namespace {

// Depth-first stage of IDA*: flat states (0-based ids plus orientation bits)
// kept in per-depth scratch slots, move tables from the shared Space.
struct IdaSearch {
  const detail::Space& space;
  const BudgetGate& gate;
  std::uint64_t max_nodes_left;
  std::uint64_t nodes = 0;
  bool aborted = false;

  struct Flat {
    std::vector<std::uint8_t> ids;
    std::uint64_t down = 0;  // orientation bits
  };
  std::vector<Flat> stack;
  std::vector<int> path;  // table indices along the current branch

  static Flat flatten(const MultiArray& ma) {
    Flat f;
    f.ids.resize(static_cast<size_t>(ma.cell_count()));
    for (int p = 0; p < ma.cell_count(); ++p) {
      f.ids[static_cast<size_t>(p)] = static_cast<std::uint8_t>(ma.cell(p).id - 1);
      if (ma.cell(p).orientation == Orientation::Down) f.down |= 1ull << p;
    }
    return f;
  }

  void apply(const Flat& in, int table_index, Flat& out) const {
    const detail::MoveTable& mt = space.tables()[static_cast<size_t>(table_index)];
    const int n = space.cells();
    out.ids.resize(static_cast<size_t>(n));
    out.down = 0;
    for (int q = 0; q < n; ++q) {
      const int s = mt.src[static_cast<size_t>(q)];
      out.ids[static_cast<size_t>(q)] = in.ids[static_cast<size_t>(s)];
      std::uint64_t bit = (in.down >> s) & 1ull;
      if (space.is_signed()) bit ^= mt.slab[static_cast<size_t>(q)];
      if (bit) out.down |= 1ull << q;
    }
  }

  bool solved(const Flat& f) const {
    if (f.down != 0) return false;
    for (int p = 0; p < space.cells(); ++p)
      if (f.ids[static_cast<size_t>(p)] != p) return false;
    return true;
  }

  int heuristic(const Flat& f) const {
    const int n = space.cells();
    if (space.dims().size() != 1) return solved(f) ? 0 : 1;
    int count = 0;
    for (int i = 0; i < n; ++i) {
      int a = f.ids[static_cast<size_t>(i)] + 1;
      if ((f.down >> i) & 1ull) a = -a;
      int b = n + 1;
      if (i + 1 < n) {
        b = f.ids[static_cast<size_t>(i) + 1] + 1;
        if ((f.down >> (i + 1)) & 1ull) b = -b;
      }
      if (space.is_signed() ? (b != a + 1) : (std::abs(b - a) != 1)) ++count;
    }
    return count;
  }

  // Returns the exact remaining cost if a goal is found within `threshold`,
  // otherwise -(smallest f that exceeded it), or kAborted on budget abort.
  static constexpr int kAborted = -(1 << 30);

  int dfs(int depth, int g, int threshold, int prev_table) {
    const Flat& cur = stack[static_cast<size_t>(depth)];
    const int f = g + heuristic(cur);
    if (f > threshold) return -f;
    if (solved(cur)) return g;
    ++nodes;
    if ((nodes & 0xfff) == 0 && !gate.time_ok()) {
      aborted = true;
      return kAborted;
    }
    if (max_nodes_left != ~0ull && nodes > max_nodes_left) {
      aborted = true;
      return kAborted;
    }
    int next_best = -(1 << 29);
    for (int m = 0; m < space.move_count(); ++m) {
      if (m == prev_table) continue;  // involution: undoing is never useful
      if (space.tables()[static_cast<size_t>(m)].identity) continue;
      apply(cur, m, stack[static_cast<size_t>(depth) + 1]);
      path.push_back(m);
      const int r = dfs(depth + 1, g + 1, threshold, m);
      if (r >= 0 || r == kAborted) return r;
      path.pop_back();
      next_best = std::max(next_best, r);
    }
    return next_best;
  }
};

}  // namespace

Solution ida_solve(const MultiArray& ma, const SearchBudget& budget) {
  const auto t0 = Clock::now();
  Solution out;
  out.optimal = true;
  if (is_standard(ma)) return finish(std::move(out), t0);

  const detail::Space space(ma.dims(), ma.mode());
  const BudgetGate gate{budget, t0};
  IdaSearch search{space, gate, budget.max_nodes ? *budget.max_nodes : ~0ull,
                   0, false, {}, {}};
  const IdaSearch::Flat root = IdaSearch::flatten(ma);

  int threshold = search.heuristic(root);
  if (threshold == 0) threshold = 1;
  for (;;) {
    if (budget.max_depth && threshold > *budget.max_depth) {
      out.status = SolveStatus::BudgetExhausted;
      out.nodes_expanded = search.nodes;
      return finish(std::move(out), t0);
    }
    search.stack.assign(static_cast<size_t>(threshold) + 2, IdaSearch::Flat{});
    search.stack[0] = root;
    search.path.clear();
    const int r = search.dfs(0, 0, threshold, -1);
    if (search.aborted) {
      out.status = SolveStatus::BudgetExhausted;
      out.nodes_expanded = search.nodes;
      return finish(std::move(out), t0);
    }
    if (r >= 0) {
      out.moves.reserve(search.path.size());
      for (int m : search.path)
        out.moves.push_back(space.tables()[static_cast<size_t>(m)].move);
      out.nodes_expanded = search.nodes;
      return finish(std::move(out), t0);
    }
    threshold = -r;  // smallest f that exceeded the old threshold
    if (threshold >= (1 << 28)) {
      // Every branch dead-ended: nothing left to deepen into. IDA* cannot
      // certify unreachability, so report the search as out of budget.
      out.status = SolveStatus::BudgetExhausted;
      out.nodes_expanded = search.nodes;
      return finish(std::move(out), t0);
    }
  }
}

VerifyResult verify(const MultiArray& ma, const MoveSequence& moves) {
  VerifyResult res{true, std::nullopt, false, ma};
  for (std::size_t i = 0; i < moves.size(); ++i) {
    if (!is_valid_move(res.final.dims(), moves[i])) {
      res.valid = false;
      res.first_invalid = i;
      res.solved = false;
      return res;
    }
    res.final = apply_move(res.final, moves[i]);
  }
  res.solved = is_standard(res.final);
  return res;
}

}  // namespace flipsort
