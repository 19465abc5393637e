#include "flipsort/core.hpp"

#include <algorithm>
#include <numeric>

namespace flipsort {

namespace {

constexpr char kAxisLetter[3] = {'H', 'V', 'D'};

int product(const std::vector<int>& dims) {
  int p = 1;
  for (int d : dims) p *= d;
  return p;
}

// Row-major strides; stride[last] == 1.
std::vector<int> strides_of(const std::vector<int>& dims) {
  std::vector<int> s(dims.size(), 1);
  for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k)
    s[static_cast<size_t>(k)] =
        s[static_cast<size_t>(k) + 1] * dims[static_cast<size_t>(k) + 1];
  return s;
}

}  // namespace

std::string to_string(const Move& mv) {
  return kAxisLetter[mv.axis] + std::to_string(mv.depth);
}

void check_dims(const std::vector<int>& dims) {
  if (dims.empty() || dims.size() > 3)
    throw DimensionError("rank must be 1, 2 or 3, got " +
                         std::to_string(dims.size()));
  for (int d : dims)
    if (d < 1)
      throw DimensionError("dimension extents must be positive, got " +
                           std::to_string(d));
}

MultiArray MultiArray::standard(std::vector<int> dims, Mode mode) {
  check_dims(dims);
  std::vector<Token> cells(static_cast<size_t>(product(dims)));
  for (size_t p = 0; p < cells.size(); ++p)
    cells[p] = Token{static_cast<int>(p) + 1, Orientation::Up};
  return MultiArray(std::move(dims), mode, std::move(cells));
}

MultiArray MultiArray::from_cells(std::vector<int> dims, Mode mode,
                                  std::vector<Token> cells) {
  check_dims(dims);
  const int n = product(dims);
  if (static_cast<int>(cells.size()) != n)
    throw DimensionError("expected " + std::to_string(n) + " cells, got " +
                         std::to_string(cells.size()));
  std::vector<bool> seen(static_cast<size_t>(n), false);
  for (const Token& t : cells) {
    if (t.id < 1 || t.id > n)
      throw DimensionError("token id " + std::to_string(t.id) +
                           " outside 1.." + std::to_string(n));
    if (seen[static_cast<size_t>(t.id - 1)])
      throw DimensionError("duplicate token id " + std::to_string(t.id));
    seen[static_cast<size_t>(t.id - 1)] = true;
    if (mode == Mode::Unsigned && t.orientation != Orientation::Up)
      throw ModeError("unsigned arrays must have all orientations Up");
  }
  return MultiArray(std::move(dims), mode, std::move(cells));
}

bool is_valid_move(const std::vector<int>& dims, const Move& mv) {
  return mv.axis >= 0 && mv.axis < static_cast<int>(dims.size()) &&
         mv.depth >= 1 && mv.depth <= dims[static_cast<size_t>(mv.axis)];
}

std::vector<Move> legal_moves(const std::vector<int>& dims) {
  check_dims(dims);
  std::vector<Move> moves;
  moves.reserve(static_cast<size_t>(std::accumulate(dims.begin(), dims.end(), 0)));
  for (int axis = 0; axis < static_cast<int>(dims.size()); ++axis)
    for (int depth = 1; depth <= dims[static_cast<size_t>(axis)]; ++depth)
      moves.push_back(Move{axis, depth});
  return moves;
}

MultiArray reverse_block(const MultiArray& ma) {
  // Point reflection of the whole array equals reversing the row-major
  // flattening: position p maps to N-1-p.
  std::vector<Token> out(ma.cells().rbegin(), ma.cells().rend());
  if (ma.mode() == Mode::Signed)
    for (Token& t : out) t.orientation = flipped(t.orientation);
  return MultiArray::from_cells(ma.dims(), ma.mode(), std::move(out));
}

MultiArray apply_move(const MultiArray& ma, const Move& mv) {
  const std::vector<int>& dims = ma.dims();
  if (mv.axis < 0 || mv.axis >= ma.rank())
    throw InvalidMoveError("move axis " + std::to_string(mv.axis) +
                           " out of range for rank " + std::to_string(ma.rank()));
  if (mv.depth < 1 || mv.depth > dims[static_cast<size_t>(mv.axis)])
    throw InvalidMoveError("move depth " + std::to_string(mv.depth) +
                           " out of range 1.." +
                           std::to_string(dims[static_cast<size_t>(mv.axis)]));

  const std::vector<int> stride = strides_of(dims);
  const int rank = ma.rank();
  std::vector<Token> out = ma.cells();

  // Walk every cell of the slab (coordinate along mv.axis < depth) and send
  // it to its point reflection within the slab.
  std::vector<int> extent(dims.begin(), dims.end());
  extent[static_cast<size_t>(mv.axis)] = mv.depth;
  std::vector<int> c(static_cast<size_t>(rank), 0);
  const bool flip = ma.mode() == Mode::Signed;
  for (;;) {
    int src = 0, dst = 0;
    for (int k = 0; k < rank; ++k) {
      const int ck = c[static_cast<size_t>(k)];
      const int rk = extent[static_cast<size_t>(k)] - 1 - ck;
      src += ck * stride[static_cast<size_t>(k)];
      dst += rk * stride[static_cast<size_t>(k)];
    }
    Token t = ma.cell(src);
    if (flip) t.orientation = flipped(t.orientation);
    out[static_cast<size_t>(dst)] = t;

    int k = rank - 1;
    while (k >= 0 && ++c[static_cast<size_t>(k)] == extent[static_cast<size_t>(k)]) {
      c[static_cast<size_t>(k)] = 0;
      --k;
    }
    if (k < 0) break;
  }
  return MultiArray::from_cells(dims, ma.mode(), std::move(out));
}

bool is_standard(const MultiArray& ma) {
  for (int p = 0; p < ma.cell_count(); ++p) {
    const Token& t = ma.cell(p);
    if (t.id != p + 1 || t.orientation != Orientation::Up) return false;
  }
  return true;
}

Parity id_parity(const MultiArray& ma) {
  const int n = ma.cell_count();
  std::vector<bool> seen(static_cast<size_t>(n), false);
  int cycles = 0;
  for (int start = 0; start < n; ++start) {
    if (seen[static_cast<size_t>(start)]) continue;
    ++cycles;
    int p = start;
    while (!seen[static_cast<size_t>(p)]) {
      seen[static_cast<size_t>(p)] = true;
      p = ma.cell(p).id - 1;
    }
  }
  return (n - cycles) % 2 == 0 ? Parity::Even : Parity::Odd;
}

Parity move_parity(const std::vector<int>& dims, const Move& mv) {
  check_dims(dims);
  if (!is_valid_move(dims, mv))
    throw InvalidMoveError("invalid move " + to_string(mv));
  long long t = mv.depth;
  for (int k = 0; k < static_cast<int>(dims.size()); ++k)
    if (k != mv.axis) t *= dims[static_cast<size_t>(k)];
  return (t / 2) % 2 == 0 ? Parity::Even : Parity::Odd;
}

CanonicalKey CanonicalKey::encode(const MultiArray& ma) {
  CanonicalKey key;
  const int n = ma.cell_count();
  if (n <= 16) {
    // 6 bits per cell: low 5 bits id-1, bit 5 orientation (Up=0/Down=1).
    key.bytes_.assign(static_cast<size_t>((6 * n + 7) / 8), 0);
    int bit = 0;
    for (int p = 0; p < n; ++p) {
      const Token& t = ma.cell(p);
      const unsigned v = static_cast<unsigned>(t.id - 1) |
                         (t.orientation == Orientation::Down ? 32u : 0u);
      key.bytes_[static_cast<size_t>(bit / 8)] |=
          static_cast<std::uint8_t>(v << (bit % 8));
      if (bit % 8 > 2)
        key.bytes_[static_cast<size_t>(bit / 8) + 1] |=
            static_cast<std::uint8_t>(v >> (8 - bit % 8));
      bit += 6;
    }
  } else {
    key.bytes_.reserve(static_cast<size_t>(n) * 4);
    for (int p = 0; p < n; ++p) {
      const Token& t = ma.cell(p);
      std::uint32_t v = static_cast<std::uint32_t>(t.id - 1) |
                        (t.orientation == Orientation::Down ? 0x80000000u : 0u);
      for (int b = 0; b < 4; ++b)
        key.bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
    }
  }
  return key;
}

MultiArray CanonicalKey::decode(const CanonicalKey& key,
                                const std::vector<int>& dims, Mode mode) {
  check_dims(dims);
  int n = 1;
  for (int d : dims) n *= d;
  std::vector<Token> cells(static_cast<size_t>(n));
  if (n <= 16) {
    int bit = 0;
    for (int p = 0; p < n; ++p) {
      unsigned v = key.bytes_[static_cast<size_t>(bit / 8)] >> (bit % 8);
      if (bit % 8 > 2)
        v |= static_cast<unsigned>(key.bytes_[static_cast<size_t>(bit / 8) + 1])
             << (8 - bit % 8);
      v &= 0x3f;
      cells[static_cast<size_t>(p)] =
          Token{static_cast<int>(v & 31u) + 1,
                (v & 32u) ? Orientation::Down : Orientation::Up};
      bit += 6;
    }
  } else {
    for (int p = 0; p < n; ++p) {
      std::uint32_t v = 0;
      for (int b = 0; b < 4; ++b)
        v |= static_cast<std::uint32_t>(key.bytes_[static_cast<size_t>(p) * 4 +
                                                   static_cast<size_t>(b)])
             << (8 * b);
      cells[static_cast<size_t>(p)] =
          Token{static_cast<int>(v & 0x7fffffffu) + 1,
                (v & 0x80000000u) ? Orientation::Down : Orientation::Up};
    }
  }
  return MultiArray::from_cells(dims, mode, std::move(cells));
}

std::size_t CanonicalKey::hash() const {
  // FNV-1a over the packed bytes.
  std::size_t h = 1469598103934665603ull;
  for (std::uint8_t b : bytes_) {
    h ^= b;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace flipsort
