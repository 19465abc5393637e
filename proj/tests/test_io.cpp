#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "flipsort/analysis.hpp"
#include "flipsort/io.hpp"

using namespace flipsort;
using nlohmann::json;

namespace {

MultiArray ints(std::vector<int> dims, Mode mode, const std::vector<int>& vals) {
  std::vector<Token> cells;
  for (int v : vals)
    cells.push_back(Token{v < 0 ? -v : v,
                          v < 0 ? Orientation::Down : Orientation::Up});
  return MultiArray::from_cells(std::move(dims), mode, std::move(cells));
}

}  // namespace

TEST_CASE("parse_instance reads the worked burnt grids") {
  const MultiArray grid = parse_instance("signed\n2 3\nc f e\nb D A\n");
  CHECK(grid == ints({2, 3}, Mode::Signed, {-3, -6, -5, -2, 4, 1}));

  CHECK(parse_instance("unsigned\n1\n1\n") ==
        MultiArray::standard({1}, Mode::Unsigned));

  const MultiArray row = parse_instance("signed\n1 5\ne d A c b\n");
  CHECK(row == ints({1, 5}, Mode::Signed, {-5, -4, 1, -3, -2}));
}

TEST_CASE("letter and numeric spellings parse to equal arrays") {
  CHECK(parse_instance("signed\n2 3\nc f e\nb D A\n") ==
        parse_instance("signed\n2 3\n-3 -6 -5\n-2 4 1\n"));
  CHECK(parse_instance("unsigned\n3\nA B C\n") ==
        parse_instance("unsigned\n3\n1 2 3\n"));
}

TEST_CASE("comments and blank padding are ignored") {
  const MultiArray a = parse_instance(
      "# a worked instance\nsigned\n# dims follow\n2 3\nc f e\n# second row\n"
      "b D A\n\n\n");
  CHECK(a == parse_instance("signed\n2 3\nc f e\nb D A\n"));
}

TEST_CASE("write_instance canonical form") {
  CHECK(write_instance(MultiArray::standard({2, 2}, Mode::Unsigned)) ==
        "unsigned\n2 2\n1 2\n3 4\n");
  CHECK(write_instance(ints({1}, Mode::Signed, {-1})) == "signed\n1\n-1\n");
  CHECK(write_instance(ints({5}, Mode::Signed, {-5, -4, 1, -3, -2})) ==
        "signed\n5\n-5 -4 1 -3 -2\n");
}

TEST_CASE("rank-3 block layout") {
  const MultiArray cube = MultiArray::standard({2, 2, 2}, Mode::Unsigned);
  CHECK(write_instance(cube) == "unsigned\n2 2 2\n1 2\n3 4\n\n5 6\n7 8\n");
  CHECK(parse_instance(write_instance(cube)) == cube);

  // Blocks must be separated by a blank line.
  CHECK_THROWS_AS(parse_instance("unsigned\n2 2 2\n1 2\n3 4\n5 6\n7 8\n"),
                  ParseError);
}

TEST_CASE("round-trip over random arrays") {
  int count = 0;
  for (const auto& dims :
       {std::vector<int>{1}, {7}, {2, 3}, {1, 5}, {4, 4}, {2, 2, 2}, {3, 2, 2}}) {
    for (Mode mode : {Mode::Unsigned, Mode::Signed}) {
      for (std::uint64_t seed = 0; seed < 72; ++seed) {
        const MultiArray a = random_instance(dims, mode, seed, RandomPolicy::uniform());
        CHECK(parse_instance(write_instance(a)) == a);
        ++count;
      }
    }
  }
  CHECK(count >= 1000);
}

TEST_CASE("parse errors carry line and column") {
  auto check_error = [](const std::string& text, int line,
                        const char* needle) {
    try {
      parse_instance(text);
      FAIL("expected ParseError for: " << text);
    } catch (const ParseError& e) {
      CHECK(e.line == line);
      CHECK(e.column >= 1);
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
      CHECK(std::string(e.what()).find("line") != std::string::npos);
    }
  };

  check_error("maybe\n2 2\n1 2\n3 4\n", 1, "mode");
  check_error("unsigned\n2 2\n1 2\n3 1\n", 4, "duplicate");
  check_error("unsigned\n2 2\n1 2\n3 3\n", 4, "duplicate");
  check_error("unsigned\n2 2\n1 2\n3 5\n", 4, "exceeds");
  check_error("unsigned\n2 2\n1 2 3\n3 4\n", 3, "expected 2 tokens");
  check_error("unsigned\n2 2\n1\n3 4\n", 3, "expected 2 tokens");
  check_error("unsigned\n2 2\n1 0\n3 4\n", 3, "0");
  check_error("signed\n3\n1 b 3\n", 3, "mixed");
  check_error("signed\n3\nB 2 3\n", 3, "mixed");
  check_error("unsigned\n2\n1 -2\n", 3, "unsigned");
  check_error("unsigned\n2\nA b\n", 3, "unsigned");
  check_error("unsigned\n2\n1 b\n", 3, "mixed");
  check_error("unsigned\n2 2\n1 2\n3 4\n5\n", 5, "unexpected content");
  check_error("unsigned\n2\n1 ?\n", 3, "unrecognized");
  check_error("unsigned\n0 2\n\n", 2, "positive");
  check_error("unsigned\n2 2 2 2\n", 2, "1-3");
  check_error("unsigned\n2 2\n1 2\n", 4, "unexpected end");

  // Missing ids are reported even though every row has the right width.
  try {
    parse_instance("unsigned\n1 4\n1 2 3 5\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("exceeds") != std::string::npos);
  }
}

TEST_CASE("parse_moves notation and aliases") {
  const MoveSequence canon = parse_moves("H5 H2 H3");
  CHECK(canon == MoveSequence{{0, 5}, {0, 2}, {0, 3}});
  CHECK(parse_moves("F3") == parse_moves("H3"));
  CHECK(parse_moves("H1 V2 H2 H1 H2 V1") ==
        MoveSequence{{0, 1}, {1, 2}, {0, 2}, {0, 1}, {0, 2}, {1, 1}});
  CHECK(parse_moves("D2 V12") == MoveSequence{{2, 2}, {1, 12}});
  CHECK(parse_moves("  H1\n V2\tH2 ") == MoveSequence{{0, 1}, {1, 2}, {0, 2}});
  CHECK(parse_moves("").empty());

  CHECK(write_moves(canon) == "H5 H2 H3");
  CHECK(write_moves(parse_moves("F2 V1 D3")) == "H2 V1 D3");
  CHECK(parse_moves(write_moves(canon)) == canon);
}

TEST_CASE("parse_moves errors carry the token index") {
  auto check_error = [](const std::string& text, int index) {
    try {
      parse_moves(text);
      FAIL("expected MoveParseError for: " << text);
    } catch (const MoveParseError& e) {
      CHECK(e.token_index == index);
      CHECK(std::string(e.what()).find("token") != std::string::npos);
    }
  };
  check_error("X3", 1);
  check_error("H1 V0", 2);
  check_error("H1 V2 H", 3);
  check_error("H1 Vx", 2);
  check_error("H1 H2x3", 2);
}

TEST_CASE("machine solution document has the fixed field set") {
  Solution s;
  s.status = SolveStatus::Solved;
  s.moves = {{0, 5}, {0, 2}, {0, 3}};
  s.optimal = true;
  s.nodes_expanded = 99;
  s.elapsed_ms = 12.5;
  SolutionContext ctx{{5}, Mode::Signed, "bfs", false, std::nullopt};

  const json doc = json::parse(emit_solution(s, ctx, ResultFormat::Machine));
  CHECK(doc["format_version"] == 1);
  CHECK(doc["kind"] == "solution");
  CHECK(doc["dims"] == json::array({5}));
  CHECK(doc["mode"] == "signed");
  CHECK(doc["solver"] == "bfs");
  CHECK(doc["status"] == "solved");
  CHECK(doc["moves"] == "H5 H2 H3");
  CHECK(doc["length"] == 3);
  CHECK(doc["optimal"] == true);
  CHECK(doc["nodes_expanded"] == 99);
  CHECK(doc["elapsed_ms"] == 12.5);
  const std::vector<std::string> allowed = {
      "format_version", "kind",    "dims",           "mode",      "solver",
      "status",         "moves",   "length",         "optimal",
      "nodes_expanded", "elapsed_ms", "seed"};
  for (const auto& [key, value] : doc.items())
    CHECK(std::find(allowed.begin(), allowed.end(), key) != allowed.end());

  // Deterministic emission zeroes the timing field.
  ctx.deterministic = true;
  const json det = json::parse(emit_solution(s, ctx, ResultFormat::Machine));
  CHECK(det["elapsed_ms"] == 0.0);
}

TEST_CASE("machine verify and reachability documents") {
  const MultiArray grid = parse_instance("signed\n2 3\nc f e\nb D A\n");
  const VerifyResult good = verify(grid, parse_moves("H1 V2 H2 H1 H2 V1"));
  const json ok = json::parse(
      emit_verification(good, grid.dims(), grid.mode(), parse_moves("H1 V2 H2 H1 H2 V1"),
                        ResultFormat::Machine));
  CHECK(ok["kind"] == "verify");
  CHECK(ok["valid"] == true);
  CHECK(ok["solved"] == true);
  CHECK(!ok.contains("failed_index"));

  const VerifyResult bad = verify(grid, {{1, 4}});
  const json fail = json::parse(emit_verification(
      bad, grid.dims(), grid.mode(), {{1, 4}}, ResultFormat::Machine));
  CHECK(fail["valid"] == false);
  CHECK(fail["failed_index"] == 0);

  const json verdict = json::parse(emit_reachability(
      decide_dims(4, 4), {4, 4}, Mode::Unsigned, ResultFormat::Machine));
  CHECK(verdict["kind"] == "reachability");
  CHECK(verdict["verdict"] == "EvenParityUndetermined");
  CHECK(verdict["parity"].is_null());
}

TEST_CASE("machine orbit, instance, theorem and parity-walk documents") {
  const json orbit = json::parse(
      emit_orbit(orbit_stats({2, 2}, Mode::Unsigned), ResultFormat::Machine));
  CHECK(orbit["kind"] == "orbit");
  CHECK(orbit["orbit_size"] == 24);
  CHECK(orbit["complete"] == true);
  CHECK(orbit["histogram"][0] == json::array({0, 1}));

  const MultiArray inst =
      random_instance({1, 5}, Mode::Signed, 11, RandomPolicy::uniform());
  const json idoc = json::parse(
      emit_instance_result(inst, 11, "uniform", ResultFormat::Machine));
  CHECK(idoc["kind"] == "instance");
  CHECK(idoc["seed"] == 11);
  CHECK(idoc["cells"].size() == 5);
  // Text format for an instance is the instance document itself.
  CHECK(parse_instance(emit_instance_result(inst, 11, "uniform",
                                            ResultFormat::Text)) == inst);

  const json theorem =
      json::parse(emit_theorem(theorem_experiment(4), ResultFormat::Machine));
  CHECK(theorem["kind"] == "theorem");
  CHECK(theorem["all_pass"] == true);
  CHECK(theorem["rows"].size() > 0);

  const json walk = json::parse(
      emit_parity_walk(parity_walk_check({4, 4}, 50, 3), ResultFormat::Machine));
  CHECK(walk["kind"] == "parity_walk");
  CHECK(walk["generators_all_even"] == true);
  CHECK(walk["walk_all_even"] == true);
  CHECK(walk["generators"].size() == 8);
}
