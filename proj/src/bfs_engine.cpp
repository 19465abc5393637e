#include "bfs_engine.hpp"

#include <stdexcept>

namespace flipsort::detail {

namespace {

constexpr std::uint64_t kFactorial[21] = {
    1ull,
    1ull,
    2ull,
    6ull,
    24ull,
    120ull,
    720ull,
    5040ull,
    40320ull,
    362880ull,
    3628800ull,
    39916800ull,
    479001600ull,
    6227020800ull,
    87178291200ull,
    1307674368000ull,
    20922789888000ull,
    355687428096000ull,
    6402373705728000ull,
    121645100408832000ull,
    2432902008176640000ull};

int axis_coordinate(int pos, const std::vector<int>& dims, int axis) {
  int rem = pos;
  for (int k = static_cast<int>(dims.size()) - 1; k > axis; --k)
    rem /= dims[static_cast<size_t>(k)];
  return rem % dims[static_cast<size_t>(axis)];
}

}  // namespace

Space::Space(std::vector<int> dims, Mode mode)
    : dims_(std::move(dims)), mode_(mode) {
  check_dims(dims_);
  n_ = 1;
  for (int d : dims_) n_ *= d;
  if (n_ > 255)
    throw DimensionError("state-space search supports at most 255 cells");

  // n! (times 2^n in signed mode), saturating to 0 on overflow.
  space_size_ = n_ <= 20 ? kFactorial[n_] : 0;
  if (space_size_ != 0 && mode_ == Mode::Signed) {
    if (n_ + 0 < 64 && space_size_ <= (~0ull >> n_))
      space_size_ <<= n_;
    else
      space_size_ = 0;
  }

  const MultiArray probe = MultiArray::standard(dims_, mode_);
  for (const Move& mv : legal_moves(dims_)) {
    MoveTable mt;
    mt.move = mv;
    const MultiArray moved = apply_move(probe, mv);
    mt.src.resize(static_cast<size_t>(n_));
    mt.slab.resize(static_cast<size_t>(n_));
    int slab_cells = 0;
    for (int q = 0; q < n_; ++q) {
      mt.src[static_cast<size_t>(q)] =
          static_cast<std::uint16_t>(moved.cell(q).id - 1);
      const bool in_slab = axis_coordinate(q, dims_, mv.axis) < mv.depth;
      mt.slab[static_cast<size_t>(q)] = in_slab ? 1 : 0;
      slab_cells += in_slab ? 1 : 0;
    }
    mt.identity = mode_ == Mode::Unsigned && slab_cells == 1;
    tables_.push_back(std::move(mt));
  }
}

std::uint64_t Space::encode64(const MultiArray& ma) const {
  std::uint64_t s = 0;
  for (int p = 0; p < n_; ++p) {
    const Token& t = ma.cell(p);
    std::uint64_t f = static_cast<std::uint64_t>(t.id - 1) |
                      (t.orientation == Orientation::Down ? 32u : 0u);
    s |= f << (6 * p);
  }
  return s;
}

MultiArray Space::decode64(std::uint64_t s) const {
  std::vector<Token> cells(static_cast<size_t>(n_));
  for (int p = 0; p < n_; ++p) {
    const std::uint64_t f = (s >> (6 * p)) & 63u;
    cells[static_cast<size_t>(p)] =
        Token{static_cast<int>(f & 31u) + 1,
              (f & 32u) ? Orientation::Down : Orientation::Up};
  }
  return MultiArray::from_cells(dims_, mode_, std::move(cells));
}

std::uint64_t Space::apply64(std::uint64_t s, int table_index) const {
  const MoveTable& mt = tables_[static_cast<size_t>(table_index)];
  std::uint64_t out = 0;
  const bool flip = mode_ == Mode::Signed;
  for (int q = 0; q < n_; ++q) {
    std::uint64_t f = (s >> (6 * mt.src[static_cast<size_t>(q)])) & 63u;
    if (flip && mt.slab[static_cast<size_t>(q)]) f ^= 32u;
    out |= f << (6 * q);
  }
  return out;
}

std::string Space::encode_bytes(const MultiArray& ma) const {
  const size_t obytes = mode_ == Mode::Signed ? (static_cast<size_t>(n_) + 7) / 8 : 0;
  std::string s(static_cast<size_t>(n_) + obytes, '\0');
  for (int p = 0; p < n_; ++p) {
    const Token& t = ma.cell(p);
    s[static_cast<size_t>(p)] = static_cast<char>(t.id - 1);
    if (t.orientation == Orientation::Down)
      s[static_cast<size_t>(n_) + static_cast<size_t>(p / 8)] |=
          static_cast<char>(1 << (p % 8));
  }
  return s;
}

MultiArray Space::decode_bytes(const std::string& s) const {
  std::vector<Token> cells(static_cast<size_t>(n_));
  for (int p = 0; p < n_; ++p) {
    Orientation o = Orientation::Up;
    if (mode_ == Mode::Signed &&
        (static_cast<unsigned char>(
             s[static_cast<size_t>(n_) + static_cast<size_t>(p / 8)]) >>
         (p % 8)) &
            1)
      o = Orientation::Down;
    cells[static_cast<size_t>(p)] =
        Token{static_cast<int>(static_cast<unsigned char>(s[static_cast<size_t>(p)])) + 1, o};
  }
  return MultiArray::from_cells(dims_, mode_, std::move(cells));
}

std::string Space::apply_bytes(const std::string& s, int table_index) const {
  const MoveTable& mt = tables_[static_cast<size_t>(table_index)];
  std::string out(s.size(), '\0');
  for (int q = 0; q < n_; ++q)
    out[static_cast<size_t>(q)] = s[mt.src[static_cast<size_t>(q)]];
  if (mode_ == Mode::Signed) {
    for (int q = 0; q < n_; ++q) {
      int bit = (static_cast<unsigned char>(
                     s[static_cast<size_t>(n_) +
                       static_cast<size_t>(mt.src[static_cast<size_t>(q)] / 8)]) >>
                 (mt.src[static_cast<size_t>(q)] % 8)) &
                1;
      bit ^= mt.slab[static_cast<size_t>(q)];
      if (bit)
        out[static_cast<size_t>(n_) + static_cast<size_t>(q / 8)] |=
            static_cast<char>(1 << (q % 8));
    }
  }
  return out;
}

std::uint64_t Space::rank64(std::uint64_t s) const {
  // Lehmer code over the id fields.
  std::uint64_t rank = 0;
  for (int i = 0; i < n_; ++i) {
    const unsigned vi = (s >> (6 * i)) & 31u;
    unsigned smaller_after = 0;
    for (int j = i + 1; j < n_; ++j)
      smaller_after += ((s >> (6 * j)) & 31u) < vi ? 1u : 0u;
    rank += smaller_after * kFactorial[n_ - 1 - i];
  }
  if (mode_ == Mode::Signed) {
    std::uint64_t bits = 0;
    for (int i = 0; i < n_; ++i) bits |= ((s >> (6 * i + 5)) & 1u) << i;
    rank = (rank << n_) | bits;
  }
  return rank;
}

std::uint64_t Space::unrank64(std::uint64_t r) const {
  std::uint64_t bits = 0;
  if (mode_ == Mode::Signed) {
    bits = r & ((1ull << n_) - 1);
    r >>= n_;
  }
  // Invert the Lehmer code.
  std::vector<int> digits(static_cast<size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    digits[static_cast<size_t>(i)] =
        static_cast<int>(r / kFactorial[n_ - 1 - i]);
    r %= kFactorial[n_ - 1 - i];
  }
  std::vector<int> pool(static_cast<size_t>(n_));
  for (int i = 0; i < n_; ++i) pool[static_cast<size_t>(i)] = i;
  std::uint64_t s = 0;
  for (int i = 0; i < n_; ++i) {
    const int idx = digits[static_cast<size_t>(i)];
    const std::uint64_t v = static_cast<std::uint64_t>(pool[static_cast<size_t>(idx)]);
    pool.erase(pool.begin() + idx);
    s |= (v | (((bits >> i) & 1u) << 5)) << (6 * i);
  }
  return s;
}

DistanceMap::DistanceMap(const Space& space, const MultiArray& root)
    : sp_(space), fast_(space.fast()) {
  ranked_ = fast_ && sp_.space_size() != 0 && sp_.space_size() <= kRankStoreCap;
  if (ranked_) dist_vec_.assign(sp_.space_size(), kUnseen);
  if (fast_) {
    const std::uint64_t r = sp_.encode64(root);
    if (ranked_)
      dist_vec_[sp_.rank64(r)] = 0;
    else
      dist_map64_[r] = 0;
    frontier64_.push_back(r);
  } else {
    const std::string r = sp_.encode_bytes(root);
    dist_map_bytes_[r] = 0;
    frontier_bytes_.push_back(r);
  }
  layer_sizes_.push_back(1);
}

std::optional<int> DistanceMap::dist64(std::uint64_t s) const {
  if (ranked_) {
    const std::uint8_t d = dist_vec_[sp_.rank64(s)];
    if (d == kUnseen) return std::nullopt;
    return static_cast<int>(d);
  }
  auto it = dist_map64_.find(s);
  if (it == dist_map64_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> DistanceMap::dist_bytes(const std::string& s) const {
  auto it = dist_map_bytes_.find(s);
  if (it == dist_map_bytes_.end()) return std::nullopt;
  return it->second;
}

std::uint64_t DistanceMap::expand_layer(int threads) {
  if (exhausted_) return 0;
  const int moves = sp_.move_count();
  const int depth = radius_ + 1;
  if (depth >= 250)
    throw std::runtime_error("BFS depth exceeds the distance-store limit");

  std::uint64_t discovered = 0;
  if (fast_) {
    expanded_ += frontier64_.size();
    // Generate candidate children, pre-filtered against the current store
    // (read-only during this phase, so workers can probe concurrently).
    auto generate = [&](size_t begin, size_t end, std::vector<std::uint64_t>& out) {
      for (size_t i = begin; i < end; ++i) {
        const std::uint64_t s = frontier64_[i];
        for (int m = 0; m < moves; ++m) {
          const std::uint64_t c = sp_.apply64(s, m);
          if (!dist64(c)) out.push_back(c);
        }
      }
    };
    std::vector<std::vector<std::uint64_t>> bufs;
    int workers = std::max(threads, 1);
    const std::uint64_t worker_cap = frontier64_.size() / 512 + 1;
    if (static_cast<std::uint64_t>(workers) > worker_cap)
      workers = static_cast<int>(worker_cap);
    bufs.resize(static_cast<size_t>(workers));
    if (workers <= 1) {
      generate(0, frontier64_.size(), bufs[0]);
    } else {
      std::vector<std::thread> pool;
      const size_t chunk = (frontier64_.size() + workers - 1) / workers;
      for (int w = 0; w < workers; ++w) {
        const size_t b = std::min(frontier64_.size(), static_cast<size_t>(w) * chunk);
        const size_t e = std::min(frontier64_.size(), b + chunk);
        pool.emplace_back(generate, b, e, std::ref(bufs[static_cast<size_t>(w)]));
      }
      for (auto& t : pool) t.join();
    }
    std::vector<std::uint64_t> next;
    for (auto& buf : bufs)
      for (std::uint64_t c : buf) {
        if (ranked_) {
          std::uint8_t& slot = dist_vec_[sp_.rank64(c)];
          if (slot != kUnseen) continue;
          slot = static_cast<std::uint8_t>(depth);
        } else {
          if (!dist_map64_.emplace(c, depth).second) continue;
        }
        next.push_back(c);
      }
    discovered = next.size();
    frontier64_ = std::move(next);
  } else {
    expanded_ += frontier_bytes_.size();
    std::vector<std::string> next;
    for (const std::string& s : frontier_bytes_) {
      for (int m = 0; m < moves; ++m) {
        std::string c = sp_.apply_bytes(s, m);
        if (dist_map_bytes_.emplace(c, depth).second) next.push_back(std::move(c));
      }
    }
    discovered = next.size();
    frontier_bytes_ = std::move(next);
  }

  if (discovered == 0) {
    exhausted_ = true;
  } else {
    radius_ = depth;
    visited_ += discovered;
    layer_sizes_.push_back(discovered);
  }
  return discovered;
}

std::optional<int> DistanceMap::distance(const MultiArray& ma) const {
  return fast_ ? dist64(sp_.encode64(ma)) : dist_bytes(sp_.encode_bytes(ma));
}

std::optional<MoveSequence> DistanceMap::descend(const MultiArray& from) const {
  std::optional<int> d0 = distance(from);
  if (!d0) return std::nullopt;
  MoveSequence moves;
  moves.reserve(static_cast<size_t>(*d0));
  if (fast_) {
    std::uint64_t cur = sp_.encode64(from);
    for (int k = *d0; k > 0; --k) {
      bool stepped = false;
      for (int m = 0; m < sp_.move_count() && !stepped; ++m) {
        const std::uint64_t c = sp_.apply64(cur, m);
        if (auto dc = dist64(c); dc && *dc == k - 1) {
          moves.push_back(sp_.tables()[static_cast<size_t>(m)].move);
          cur = c;
          stepped = true;
        }
      }
      if (!stepped) return std::nullopt;
    }
  } else {
    std::string cur = sp_.encode_bytes(from);
    for (int k = *d0; k > 0; --k) {
      bool stepped = false;
      for (int m = 0; m < sp_.move_count() && !stepped; ++m) {
        const std::string c = sp_.apply_bytes(cur, m);
        if (auto dc = dist_bytes(c); dc && *dc == k - 1) {
          moves.push_back(sp_.tables()[static_cast<size_t>(m)].move);
          cur = c;
          stepped = true;
        }
      }
      if (!stepped) return std::nullopt;
    }
  }
  return moves;
}

void DistanceMap::for_each_frontier(
    const std::function<void(const MultiArray&)>& fn) const {
  if (fast_)
    for (std::uint64_t s : frontier64_) fn(sp_.decode64(s));
  else
    for (const std::string& s : frontier_bytes_) fn(sp_.decode_bytes(s));
}

void DistanceMap::for_each_visited(
    const std::function<void(const MultiArray&, int)>& fn) const {
  if (ranked_) {
    for (std::uint64_t r = 0; r < dist_vec_.size(); ++r)
      if (dist_vec_[r] != kUnseen)
        fn(sp_.decode64(sp_.unrank64(r)), dist_vec_[r]);
  } else if (fast_) {
    for (const auto& [s, d] : dist_map64_) fn(sp_.decode64(s), d);
  } else {
    for (const auto& [s, d] : dist_map_bytes_) fn(sp_.decode_bytes(s), d);
  }
}

}  // namespace flipsort::detail
