#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flipsort/analysis.hpp"
#include "flipsort/core.hpp"
#include "flipsort/solver.hpp"

using namespace flipsort;

namespace {

MultiArray with_swap(const std::vector<int>& dims, int a, int b) {
  MultiArray s = MultiArray::standard(dims, Mode::Unsigned);
  std::vector<Token> cells = s.cells();
  std::swap(cells[static_cast<size_t>(a)], cells[static_cast<size_t>(b)]);
  return MultiArray::from_cells(dims, Mode::Unsigned, std::move(cells));
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

}  // namespace

TEST_CASE("decide_dims follows the divisibility criterion") {
  CHECK(decide_dims(2, 3).verdict == ReachabilityVerdict::AlwaysReachable);
  CHECK(decide_dims(4, 6).verdict == ReachabilityVerdict::AlwaysReachable);
  CHECK(decide_dims(6, 4).verdict == ReachabilityVerdict::AlwaysReachable);
  CHECK(decide_dims(4, 4).verdict ==
        ReachabilityVerdict::EvenParityUndetermined);
  CHECK(decide_dims(8, 4).verdict ==
        ReachabilityVerdict::EvenParityUndetermined);
  CHECK_THROWS_AS(decide_dims(0, 3), DimensionError);
}

TEST_CASE("decide_instance refines the constrained case by parity") {
  CHECK(decide_instance(with_swap({2, 3}, 0, 1)).verdict ==
        ReachabilityVerdict::AlwaysReachable);

  const Reachability odd = decide_instance(with_swap({4, 4}, 0, 1));
  CHECK(odd.verdict == ReachabilityVerdict::UnreachableOddParity);
  CHECK(odd.parity == Parity::Odd);

  const Reachability even =
      decide_instance(MultiArray::standard({4, 4}, Mode::Unsigned));
  CHECK(even.verdict == ReachabilityVerdict::EvenParityUndetermined);
  CHECK(even.parity == Parity::Even);

  // Three-cycles are even but both-divisible-by-4 keeps the undetermined
  // verdict (evenness is necessary, not known sufficient).
  MultiArray three = with_swap({4, 4}, 0, 1);
  std::vector<Token> cells = three.cells();
  std::swap(cells[1], cells[2]);
  const Reachability cyc = decide_instance(
      MultiArray::from_cells({4, 4}, Mode::Unsigned, std::move(cells)));
  CHECK(cyc.verdict == ReachabilityVerdict::EvenParityUndetermined);
  CHECK(cyc.parity == Parity::Even);

  CHECK(decide_instance(MultiArray::standard({2, 3}, Mode::Signed)).verdict ==
        ReachabilityVerdict::EmpiricalOnly);
  CHECK(decide_instance(MultiArray::standard({5}, Mode::Unsigned)).verdict ==
        ReachabilityVerdict::EmpiricalOnly);
  CHECK(decide_instance(MultiArray::standard({2, 2, 2}, Mode::Unsigned)).verdict ==
        ReachabilityVerdict::EmpiricalOnly);
}

TEST_CASE("orbit_stats small exact orbits") {
  const OrbitReport three = orbit_stats({3}, Mode::Unsigned);
  CHECK(three.orbit_size == 6);
  CHECK(three.complete);
  CHECK(three.histogram[0] == std::pair<int, std::uint64_t>{0, 1});

  CHECK(orbit_stats({2, 2}, Mode::Unsigned).orbit_size == 24);
  CHECK(orbit_stats({1}, Mode::Unsigned).orbit_size == 1);
  CHECK(orbit_stats({1}, Mode::Signed).orbit_size == 2);

  // Histogram counts always sum to the orbit size.
  for (const auto& report :
       {orbit_stats({2, 3}, Mode::Unsigned), orbit_stats({4}, Mode::Signed)}) {
    std::uint64_t sum = 0;
    for (const auto& [d, c] : report.histogram) sum += c;
    CHECK(sum == report.orbit_size);
    CHECK(report.histogram.back().first == report.eccentricity);
  }
}

TEST_CASE("rank-1 orbits cover the whole space") {
  for (int n = 1; n <= 6; ++n) {
    CHECK(orbit_stats({n}, Mode::Unsigned).orbit_size == factorial(n));
    CHECK(orbit_stats({n}, Mode::Signed).orbit_size ==
          factorial(n) << n);  // n! * 2^n
  }
}

TEST_CASE("3D orbits: frozen golden values") {
  const OrbitReport u = orbit_stats({2, 2, 2}, Mode::Unsigned);
  CHECK(u.orbit_size == 192);
  CHECK(u.eccentricity == 6);
  CHECK(u.complete);

  const OrbitReport s = orbit_stats({2, 2, 2}, Mode::Signed);
  CHECK(s.orbit_size == 384);
  CHECK(s.eccentricity == 10);
  CHECK(s.complete);
}

TEST_CASE("orbit budget produces a flagged partial report") {
  SearchBudget tiny;
  tiny.max_nodes = 10;
  const OrbitReport r = orbit_stats({5}, Mode::Unsigned, tiny);
  CHECK_FALSE(r.complete);
  CHECK(r.orbit_size < 120);
  CHECK(r.orbit_size >= 1);
}

TEST_CASE("orbit reports are identical across worker counts") {
  const OrbitReport a = orbit_stats({2, 3}, Mode::Signed, {}, SolverOptions{1});
  const OrbitReport b = orbit_stats({2, 3}, Mode::Signed, {}, SolverOptions{4});
  CHECK(a.orbit_size == b.orbit_size);
  CHECK(a.eccentricity == b.eccentricity);
  CHECK(a.histogram == b.histogram);
  CHECK(a.nodes_expanded == b.nodes_expanded);
}

TEST_CASE("theorem_experiment passes everywhere the criterion predicts full") {
  const TheoremReport report = theorem_experiment(6);
  CHECK(report.all_pass);
  bool saw_23 = false, saw_24 = false, saw_12 = false;
  for (const TheoremRow& row : report.rows) {
    CHECK(row.status != CheckStatus::Fail);
    if (row.dims == std::vector<int>{2, 3}) {
      saw_23 = true;
      CHECK(row.orbit_size == 720);
      CHECK(row.expected == 720);
    }
    if (row.dims == std::vector<int>{2, 4}) {
      saw_24 = true;
      CHECK(row.orbit_size == 40320);
    }
    if (row.dims == std::vector<int>{1, 2}) {
      saw_12 = true;
      CHECK(row.orbit_size == 2);
    }
  }
  CHECK(saw_23);
  CHECK(saw_24);  // forced in even when max_cells < 8
  CHECK(saw_12);
}

TEST_CASE("parity walk check on divisible-by-4 boards") {
  const ParityWalkReport r44 = parity_walk_check({4, 4}, 1000, 12345);
  CHECK(r44.generator_parities.size() == 8);
  CHECK(r44.generators_all_even);
  CHECK(r44.walk_all_even);
  CHECK_FALSE(r44.first_violation_step.has_value());

  const ParityWalkReport r48 = parity_walk_check({4, 8}, 200, 7);
  CHECK(r48.generator_parities.size() == 12);
  CHECK(r48.generators_all_even);
  CHECK(r48.walk_all_even);

  CHECK_THROWS_AS(parity_walk_check({2, 3}, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(parity_walk_check({4}, 10, 1), std::invalid_argument);
}

TEST_CASE("random_instance determinism and policies") {
  CHECK(random_instance({2, 3}, Mode::Signed, 9, RandomPolicy::walk(0)) ==
        MultiArray::standard({2, 3}, Mode::Signed));

  for (std::uint64_t seed : {0ull, 1ull, 42ull}) {
    CHECK(random_instance({2, 3}, Mode::Signed, seed, RandomPolicy::uniform()) ==
          random_instance({2, 3}, Mode::Signed, seed, RandomPolicy::uniform()));
    CHECK(random_instance({6}, Mode::Unsigned, seed, RandomPolicy::walk(9)) ==
          random_instance({6}, Mode::Unsigned, seed, RandomPolicy::walk(9)));
  }

  // Walk instances are reachable by construction; replay the walk backwards.
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const MultiArray inst =
        random_instance({2, 2}, Mode::Unsigned, seed, RandomPolicy::walk(8));
    CHECK(bfs_solve(inst).solved());
  }
}

TEST_CASE("orbit symmetry: solved paths replay back to the instance") {
  // Every generator is an involution, so the reversed solution takes the
  // standard array back to the instance in the same number of moves.
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const MultiArray inst =
        random_instance({2, 3}, Mode::Signed, seed, RandomPolicy::uniform());
    const Solution s = bfs_solve(inst);
    REQUIRE(s.solved());
    MoveSequence back(s.moves.rbegin(), s.moves.rend());
    const VerifyResult r =
        verify(MultiArray::standard({2, 3}, Mode::Signed), back);
    CHECK(r.valid);
    CHECK(r.final == inst);
  }
}

TEST_CASE("instrumented bounded enumeration of 4x4 stays even") {
  SearchBudget budget;
  budget.max_nodes = 2000;
  const auto states = enumerate_orbit({4, 4}, Mode::Unsigned, budget);
  CHECK(states.size() > 2000);  // root layers completed past the cap
  for (const auto& [state, dist] : states) {
    CHECK(id_parity(state) == Parity::Even);
    CHECK(dist >= 0);
  }
}

TEST_CASE("enumerate_orbit distances agree with bfs_solve") {
  const auto states = enumerate_orbit({2, 2}, Mode::Signed);
  CHECK(states.size() == 48);
  for (const auto& [state, dist] : states)
    CHECK(bfs_solve(state).length() == static_cast<size_t>(dist));
}
