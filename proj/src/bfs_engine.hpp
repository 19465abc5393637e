// Internal search machinery: precomputed move tables, compact state codecs,
// and a layer-synchronous BFS distance map. Distances, layer sizes and every
// derived result are independent of worker count because layers are expanded
// atomically and merged sequentially.
//
// Two representations, chosen per instance:
//   - fast path (cell count <= 10): states packed into a uint64_t, 6 bits per
//     cell; when the whole space (n! or n!*2^n) fits a byte per state the
//     distance store is a rank-indexed vector, otherwise a hash map,
//   - general path: states as byte strings (ids, then orientation bits),
//     distance store is a hash map. Used for big arrays under a budget.

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "flipsort/core.hpp"

namespace flipsort::detail {

inline constexpr int kFastMaxCells = 10;
inline constexpr std::uint64_t kRankStoreCap = 1ull << 28;  // bytes of distances
inline constexpr std::uint8_t kUnseen = 0xff;

struct MoveTable {
  Move move;
  std::vector<std::uint16_t> src;   // result cell q comes from input cell src[q]
  std::vector<std::uint8_t> slab;   // 1 if q lies in the reversed slab
  bool identity = false;            // no-op (single-cell slab in unsigned mode)
};

// Precomputed geometry for one (dims, mode) universe. The tables are derived
// from apply_move itself, so search dynamics match the public semantics by
// construction.
class Space {
 public:
  Space(std::vector<int> dims, Mode mode);

  const std::vector<int>& dims() const { return dims_; }
  Mode mode() const { return mode_; }
  int cells() const { return n_; }
  bool is_signed() const { return mode_ == Mode::Signed; }
  const std::vector<MoveTable>& tables() const { return tables_; }
  int move_count() const { return static_cast<int>(tables_.size()); }

  bool fast() const { return n_ <= kFastMaxCells; }
  // Total state count (permutations times orientations), or 0 on overflow.
  std::uint64_t space_size() const { return space_size_; }

  std::uint64_t encode64(const MultiArray& ma) const;
  MultiArray decode64(std::uint64_t s) const;
  std::uint64_t apply64(std::uint64_t s, int table_index) const;

  std::string encode_bytes(const MultiArray& ma) const;
  MultiArray decode_bytes(const std::string& s) const;
  std::string apply_bytes(const std::string& s, int table_index) const;

  // Perfect rank of a packed fast-path state (Lehmer code, orientations in
  // the low bits for signed mode).
  std::uint64_t rank64(std::uint64_t s) const;
  std::uint64_t unrank64(std::uint64_t r) const;

 private:
  std::vector<int> dims_;
  Mode mode_;
  int n_;
  std::uint64_t space_size_;
  std::vector<MoveTable> tables_;
};

// BFS distance map grown one full layer at a time from a root state.
class DistanceMap {
 public:
  DistanceMap(const Space& space, const MultiArray& root);

  // Expands the frontier into the next layer; returns the number of newly
  // discovered states (0 once the component is exhausted).
  std::uint64_t expand_layer(int threads);

  bool exhausted() const { return exhausted_; }
  int radius() const { return radius_; }  // distance of the newest layer
  std::uint64_t frontier_size() const {
    return fast_ ? frontier64_.size() : frontier_bytes_.size();
  }
  std::uint64_t nodes_expanded() const { return expanded_; }
  std::uint64_t visited_count() const { return visited_; }
  const std::vector<std::uint64_t>& layer_sizes() const { return layer_sizes_; }

  std::optional<int> distance(const MultiArray& ma) const;

  // Canonical-order greedy descent: moves that take `from` to the root, each
  // step reducing the distance by one. Empty optional if `from` is unknown.
  std::optional<MoveSequence> descend(const MultiArray& from) const;

  void for_each_frontier(const std::function<void(const MultiArray&)>& fn) const;
  void for_each_visited(
      const std::function<void(const MultiArray&, int)>& fn) const;

 private:
  std::optional<int> dist64(std::uint64_t s) const;
  std::optional<int> dist_bytes(const std::string& s) const;

  const Space& sp_;
  bool fast_;
  bool ranked_;
  std::vector<std::uint8_t> dist_vec_;               // ranked fast path
  std::unordered_map<std::uint64_t, int> dist_map64_;
  std::unordered_map<std::string, int> dist_map_bytes_;
  std::vector<std::uint64_t> frontier64_;
  std::vector<std::string> frontier_bytes_;
  std::vector<std::uint64_t> layer_sizes_;
  std::uint64_t expanded_ = 0;
  std::uint64_t visited_ = 1;
  int radius_ = 0;
  bool exhausted_ = false;
};

}  // namespace flipsort::detail
