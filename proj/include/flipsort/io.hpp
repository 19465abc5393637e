// Instance and move-sequence text formats plus the machine-readable result
// schema. The instance format, the H/V/D move notation and the JSON result
// documents (format_version 1) are the stable public contracts; parsers
// report a precise location (line/column or token index) with every error.
//
// Instance format:
//   - lines starting with '#' are ignored,
//   - line 1: "unsigned" or "signed",
//   - line 2: 1-3 space-separated positive extents,
//   - cells: rank 1 = one line; rank 2 = n lines of m tokens; rank 3 =
//     n blocks of m lines of l tokens with one blank line between blocks,
//   - tokens: nonzero decimal integers (negative = Down) or, when every
//     id fits, single letters (upper = Up, A=1..Z=26). Styles cannot mix.
// Output is canonical: numeric tokens, single spaces, newline-terminated.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "flipsort/analysis.hpp"
#include "flipsort/core.hpp"
#include "flipsort/solver.hpp"

namespace flipsort {

struct ParseError : std::runtime_error {
  ParseError(int line, int column, const std::string& reason)
      : std::runtime_error("line " + std::to_string(line) + ", col " +
                           std::to_string(column) + ": " + reason),
        line(line),
        column(column) {}

  int line;
  int column;
};

struct MoveParseError : std::runtime_error {
  MoveParseError(int token_index, const std::string& reason)
      : std::runtime_error("token " + std::to_string(token_index) + ": " +
                           reason),
        token_index(token_index) {}

  int token_index;  // 1-based
};

MultiArray parse_instance(std::string_view text);
std::string write_instance(const MultiArray& ma);

// "H5 H2 H3" etc.; "F<k>" is accepted on input as an alias for "H<k>".
MoveSequence parse_moves(std::string_view text);
std::string write_moves(const MoveSequence& moves);

std::string to_string(Mode mode);
std::string to_string(Parity parity);

enum class ResultFormat : std::uint8_t { Text, Machine };

struct SolutionContext {
  std::vector<int> dims;
  Mode mode = Mode::Unsigned;
  std::string solver;            // bfs | bibfs | ida | greedy
  bool deterministic = false;    // report elapsed_ms as 0 for stable output
  std::optional<std::uint64_t> seed;
};

std::string emit_solution(const Solution& s, const SolutionContext& ctx,
                          ResultFormat format);
std::string emit_verification(const VerifyResult& v,
                              const std::vector<int>& dims, Mode mode,
                              const MoveSequence& moves, ResultFormat format);
std::string emit_reachability(const Reachability& r,
                              const std::vector<int>& dims, Mode mode,
                              ResultFormat format);
std::string emit_orbit(const OrbitReport& report, ResultFormat format,
                       bool deterministic = false);
std::string emit_instance_result(const MultiArray& ma, std::uint64_t seed,
                                 const std::string& policy,
                                 ResultFormat format);
std::string emit_theorem(const TheoremReport& report, ResultFormat format);
std::string emit_parity_walk(const ParityWalkReport& report,
                             ResultFormat format);

}  // namespace flipsort
