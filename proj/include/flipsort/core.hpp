// Core model for prefix-reversal rearrangement of 1D/2D/3D token arrays:
// tokens with an orientation bit (the burnt/case state), rank-1..3 arrays,
// prefix-reversal moves (point reflection of a prefix slab), permutation
// parity, and a compact reversible state key for search.
//
// Conventions used throughout:
//   - cells are stored in row-major order; the standard array has id p+1 at
//     row-major position p (for rank 2 this is e_ij = (i-1)*m + j),
//   - axis 0 moves are "H", axis 1 "V", axis 2 "D"; depth is 1-based and
//     depth == dims[axis] (full reversal) is legal,
//   - in signed mode every cell of the reversed slab flips orientation;
//     unsigned arrays are all-Up and moves never flip.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace flipsort {

enum class Mode : std::uint8_t { Unsigned, Signed };

enum class Orientation : std::uint8_t { Up = 0, Down = 1 };

constexpr Orientation flipped(Orientation o) {
  return o == Orientation::Up ? Orientation::Down : Orientation::Up;
}

struct Token {
  int id = 0;  // 1..N
  Orientation orientation = Orientation::Up;

  friend bool operator==(const Token&, const Token&) = default;
};

// Signed-integer view of a token: negative iff Down.
constexpr int signed_value(const Token& t) {
  return t.orientation == Orientation::Down ? -t.id : t.id;
}

struct Move {
  int axis = 0;   // 0..rank-1
  int depth = 1;  // 1..dims[axis]

  friend bool operator==(const Move&, const Move&) = default;
};

using MoveSequence = std::vector<Move>;

// "H3", "V1", "D2" — axis letter plus depth.
std::string to_string(const Move& mv);

enum class Parity : std::uint8_t { Even = 0, Odd = 1 };

constexpr Parity operator^(Parity a, Parity b) {
  return static_cast<Parity>(static_cast<std::uint8_t>(a) ^
                             static_cast<std::uint8_t>(b));
}

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidMoveError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ModeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A rank-1/2/3 array of tokens. Immutable value type: every operation takes
// arrays by const reference and returns fresh values, so instances are safe
// to share across threads.
class MultiArray {
 public:
  // The sorted target: id p+1 at row-major position p, all orientations Up.
  static MultiArray standard(std::vector<int> dims, Mode mode);

  // Builds an array from explicit cells, validating the invariants:
  // ids are exactly {1..N}, and unsigned arrays are all-Up.
  static MultiArray from_cells(std::vector<int> dims, Mode mode,
                               std::vector<Token> cells);

  int rank() const { return static_cast<int>(dims_.size()); }
  const std::vector<int>& dims() const { return dims_; }
  Mode mode() const { return mode_; }
  int cell_count() const { return static_cast<int>(cells_.size()); }
  const std::vector<Token>& cells() const { return cells_; }
  const Token& cell(int pos) const { return cells_[static_cast<size_t>(pos)]; }

  friend bool operator==(const MultiArray&, const MultiArray&) = default;

 private:
  MultiArray(std::vector<int> dims, Mode mode, std::vector<Token> cells)
      : dims_(std::move(dims)), mode_(mode), cells_(std::move(cells)) {}

  std::vector<int> dims_;
  Mode mode_ = Mode::Unsigned;
  std::vector<Token> cells_;
};

// Throws DimensionError unless 1 <= rank <= 3 and every extent is >= 1.
void check_dims(const std::vector<int>& dims);

bool is_valid_move(const std::vector<int>& dims, const Move& mv);

// All legal moves, axis ascending then depth ascending. This total order is
// the canonical tie-break order used by every solver; count == sum(dims).
std::vector<Move> legal_moves(const std::vector<int>& dims);
inline std::vector<Move> legal_moves(const MultiArray& ma) {
  return legal_moves(ma.dims());
}

// Point reflection of the whole array: rank-2 cell (i,j) of the result is
// cell (n-i+1, m-j+1) of the input, and likewise per rank. Signed mode also
// flips every orientation.
MultiArray reverse_block(const MultiArray& ma);

// Replaces the prefix slab (first `depth` layers along `axis`) by its point
// reflection; cells outside the slab are untouched. Self-inverse.
MultiArray apply_move(const MultiArray& ma, const Move& mv);

bool is_standard(const MultiArray& ma);

// Parity of the permutation taking the standard arrangement to this one
// (orientations ignored), by cycle decomposition: Even iff N - #cycles even.
Parity id_parity(const MultiArray& ma);

// Closed form: the slab flattens to t = depth * prod(other dims) cells and
// its reversal is floor(t/2) disjoint transpositions.
Parity move_parity(const std::vector<int>& dims, const Move& mv);

// Compact reversible key, injective over arrays of equal dims and mode.
// Cell counts <= 16 pack to at most 128 bits (5 bits id + 1 orientation bit
// per cell); larger arrays use 4 bytes per cell.
class CanonicalKey {
 public:
  static CanonicalKey encode(const MultiArray& ma);
  static MultiArray decode(const CanonicalKey& key, const std::vector<int>& dims,
                           Mode mode);

  const std::vector<std::uint8_t>& bytes() const { return bytes_; }
  std::size_t hash() const;

  friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;

 private:
  std::vector<std::uint8_t> bytes_;
};

}  // namespace flipsort

template <>
struct std::hash<flipsort::CanonicalKey> {
  std::size_t operator()(const flipsort::CanonicalKey& k) const {
    return k.hash();
  }
};
