#include "lifelogic/hashlife.hpp"

#include <algorithm>
#include <stdexcept>

namespace lifelogic {

namespace {

constexpr int kLeafLevel = 3;
constexpr int kBaseLevel = 5;  // levels 4 and 5 are stepped directly

std::uint64_t mix(std::uint64_t h) {
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdULL;
  h ^= h >> 33;
  h *= 0xc4ceb9fe1a85ec53ULL;
  h ^= h >> 33;
  return h;
}

std::uint64_t node_hash(std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d, std::uint64_t bits,
                        int level) {
  std::uint64_t h = mix(bits ^ (static_cast<std::uint64_t>(level) << 58));
  h = mix(h ^ ((static_cast<std::uint64_t>(a) << 32) | b));
  h = mix(h ^ ((static_cast<std::uint64_t>(c) << 32) | d));
  return h;
}

// One generation on `n` rows of width `n` (n <= 32); cells outside are dead.
void step_rows(std::uint64_t* rows, int n) {
  const std::uint64_t mask = n == 64 ? ~0ULL : ((1ULL << n) - 1);
  std::uint64_t next[32];
  for (int i = 0; i < n; ++i) {
    const std::uint64_t up = i > 0 ? rows[i - 1] : 0, dn = i + 1 < n ? rows[i + 1] : 0, m = rows[i];
    const std::uint64_t a_l = up << 1, a_r = up >> 1;
    const std::uint64_t a0 = a_l ^ up ^ a_r, a1 = (a_l & up) | (a_l & a_r) | (up & a_r);
    const std::uint64_t c_l = dn << 1, c_r = dn >> 1;
    const std::uint64_t c0 = c_l ^ dn ^ c_r, c1 = (c_l & dn) | (c_l & c_r) | (dn & c_r);
    const std::uint64_t b0 = (m << 1) ^ (m >> 1), b1 = (m << 1) & (m >> 1);
    const std::uint64_t ones = a0 ^ b0 ^ c0;
    const std::uint64_t carry = (a0 & b0) | (a0 & c0) | (b0 & c0);
    const std::uint64_t p = a1 ^ b1, q = c1 ^ carry;
    const std::uint64_t exactly_one = (p ^ q) & ~((a1 & b1) | (c1 & carry));
    next[i] = exactly_one & (ones | m) & mask;
  }
  std::copy(next, next + n, rows);
}

}  // namespace

HashLife::HashLife() { clear(); }

void HashLife::clear() {
  nodes_.assign(1, Node{});
  table_.assign(std::size_t{1} << 16, 0);
  empties_.clear();
  memo_.assign(std::size_t{1} << 16, {0, 0});
  memo_used_ = 0;
  root_ = empty(6);
  root_level_ = 6;
  ox_ = oy_ = 0;
  generation_ = 0;
}

void HashLife::grow_table() {
  std::vector<Id> t(table_.size() * 2, 0);
  const std::size_t mask = t.size() - 1;
  for (Id id : table_) {
    if (!id) continue;
    const Node& n = nodes_[id];
    std::size_t s = node_hash(n.nw, n.ne, n.sw, n.se, n.bits, n.level) & mask;
    while (t[s]) s = (s + 1) & mask;
    t[s] = id;
  }
  table_ = std::move(t);
}

HashLife::Id HashLife::intern(const Node& n, std::uint64_t h) {
  std::size_t mask = table_.size() - 1;
  std::size_t s = h & mask;
  while (Id id = table_[s]) {
    const Node& m = nodes_[id];
    if (m.level == n.level && m.bits == n.bits && m.nw == n.nw && m.ne == n.ne && m.sw == n.sw && m.se == n.se)
      return id;
    s = (s + 1) & mask;
  }
  const Id id = static_cast<Id>(nodes_.size());
  if (nodes_.size() >= 0xfffffff0u) throw std::length_error("hashlife node space exhausted");
  nodes_.push_back(n);
  table_[s] = id;
  if (nodes_.size() * 2 > table_.size()) grow_table();
  return id;
}

HashLife::Id HashLife::leaf(std::uint64_t bits) {
  Node n;
  n.bits = bits;
  n.level = kLeafLevel;
  return intern(n, node_hash(0, 0, 0, 0, bits, kLeafLevel));
}

HashLife::Id HashLife::join(Id nw, Id ne, Id sw, Id se) {
  Node n;
  n.nw = nw;
  n.ne = ne;
  n.sw = sw;
  n.se = se;
  n.level = static_cast<std::uint8_t>(nodes_[nw].level + 1);
  return intern(n, node_hash(nw, ne, sw, se, 0, n.level));
}

HashLife::Id HashLife::empty(int level) {
  while (static_cast<int>(empties_.size()) <= level) {
    const int l = static_cast<int>(empties_.size());
    if (l < kLeafLevel) {
      empties_.push_back(0);
    } else if (l == kLeafLevel) {
      empties_.push_back(leaf(0));
    } else {
      const Id e = empties_.back();
      empties_.push_back(join(e, e, e, e));
    }
  }
  return empties_[static_cast<std::size_t>(level)];
}

HashLife::Id HashLife::centre(Id id) {
  const Node n = nodes_[id];
  return join(nodes_[n.nw].se, nodes_[n.ne].sw, nodes_[n.sw].ne, nodes_[n.se].nw);
}

void HashLife::paint(Id id, std::uint64_t* rows, int x0, int y0) const {
  const Node& n = nodes_[id];
  if (n.level == kLeafLevel) {
    for (int y = 0; y < 8; ++y) rows[y0 + y] |= ((n.bits >> (8 * y)) & 0xffu) << x0;
    return;
  }
  if (id == empties_[n.level]) return;
  const int h = 1 << (n.level - 1);
  paint(n.nw, rows, x0, y0);
  paint(n.ne, rows, x0 + h, y0);
  paint(n.sw, rows, x0, y0 + h);
  paint(n.se, rows, x0 + h, y0 + h);
}

HashLife::Id HashLife::from_rows(const std::uint64_t* rows, int x0, int y0, int level) {
  if (level == kLeafLevel) {
    std::uint64_t bits = 0;
    for (int y = 0; y < 8; ++y) bits |= ((rows[y0 + y] >> x0) & 0xffu) << (8 * y);
    return leaf(bits);
  }
  const int h = 1 << (level - 1);
  return join(from_rows(rows, x0, y0, level - 1), from_rows(rows, x0 + h, y0, level - 1),
              from_rows(rows, x0, y0 + h, level - 1), from_rows(rows, x0 + h, y0 + h, level - 1));
}

HashLife::Id HashLife::base_result(Id id, int j) {
  const int level = nodes_[id].level;
  const int size = 1 << level;
  std::uint64_t rows[32] = {};
  paint(id, rows, 0, 0);
  for (int s = 0; s < (1 << j); ++s) step_rows(rows, size);
  return from_rows(rows, size / 4, size / 4, level - 1);
}

// Centre half of `id` after 2^j generations; requires j <= level - 2.
HashLife::Id HashLife::result(Id id, int j) {
  const int k = nodes_[id].level;
  if (id == empty(k)) return empty(k - 1);
  const std::uint64_t key = (static_cast<std::uint64_t>(id) << 6) | static_cast<std::uint64_t>(j);
  std::size_t mask = memo_.size() - 1;
  std::size_t s = mix(key) & mask;
  while (memo_[s].first) {
    if (memo_[s].first == key) return memo_[s].second;
    s = (s + 1) & mask;
  }

  Id r;
  if (k <= kBaseLevel) {
    r = base_result(id, j);
  } else {
    const Node n = nodes_[id];
    const Node a = nodes_[n.nw], b = nodes_[n.ne], c = nodes_[n.sw], d = nodes_[n.se];
    const Id sub[9] = {n.nw,
                       join(a.ne, b.nw, a.se, b.sw),
                       n.ne,
                       join(a.sw, a.se, c.nw, c.ne),
                       join(a.se, b.sw, c.ne, d.nw),
                       join(b.sw, b.se, d.nw, d.ne),
                       n.sw,
                       join(c.ne, d.nw, c.se, d.sw),
                       n.se};
    const bool full = j == k - 2;
    Id q[9];
    for (int i = 0; i < 9; ++i) q[i] = full ? result(sub[i], k - 3) : centre(sub[i]);
    const int jj = full ? k - 3 : j;
    r = join(result(join(q[0], q[1], q[3], q[4]), jj), result(join(q[1], q[2], q[4], q[5]), jj),
             result(join(q[3], q[4], q[6], q[7]), jj), result(join(q[4], q[5], q[7], q[8]), jj));
  }

  if ((memo_used_ + 1) * 2 > memo_.size()) {
    std::vector<std::pair<std::uint64_t, Id>> t(memo_.size() * 2, {0, 0});
    const std::size_t m2 = t.size() - 1;
    for (const auto& e : memo_) {
      if (!e.first) continue;
      std::size_t p = mix(e.first) & m2;
      while (t[p].first) p = (p + 1) & m2;
      t[p] = e;
    }
    memo_ = std::move(t);
    mask = memo_.size() - 1;
  }
  s = mix(key) & mask;
  while (memo_[s].first) s = (s + 1) & mask;
  memo_[s] = {key, r};
  ++memo_used_;
  return r;
}

bool HashLife::inner_fits() const {
  const Node& r = nodes_[root_];
  const int l = root_level_ - 2;
  const Id e = empties_[static_cast<std::size_t>(l)];
  const Node &nw = nodes_[r.nw], &ne = nodes_[r.ne], &sw = nodes_[r.sw], &se = nodes_[r.se];
  return nw.nw == e && nw.ne == e && nw.sw == e && ne.nw == e && ne.ne == e && ne.se == e && sw.nw == e &&
         sw.sw == e && sw.se == e && se.ne == e && se.sw == e && se.se == e;
}

void HashLife::expand() {
  empty(root_level_ + 1);
  const Node r = nodes_[root_];
  const Id e = empty(root_level_ - 1);
  root_ = join(join(e, e, e, r.nw), join(e, e, r.ne, e), join(e, r.sw, e, e), join(r.se, e, e, e));
  const std::int64_t q = std::int64_t{1} << (root_level_ - 1);
  ox_ -= q;
  oy_ -= q;
  ++root_level_;
}

void HashLife::step_pow2(int j) {
  while (root_level_ < j + 2 || !inner_fits()) expand();
  expand();
  root_ = result(root_, j);
  const std::int64_t q = std::int64_t{1} << (root_level_ - 2);
  ox_ += q;
  oy_ += q;
  --root_level_;
  generation_ += std::int64_t{1} << j;
}

void HashLife::advance(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("cannot step backwards");
  for (int j = 62; j >= 0; --j)
    if ((n >> j) & 1) step_pow2(j);
}

HashLife::Id HashLife::build(std::vector<Cell>& cells, std::size_t lo, std::size_t hi, std::int64_t x0,
                             std::int64_t y0, int level) {
  if (lo == hi) return empty(level);
  if (level == kLeafLevel) {
    std::uint64_t bits = 0;
    for (std::size_t i = lo; i < hi; ++i) bits |= 1ULL << (8 * (cells[i].y - y0) + (cells[i].x - x0));
    return leaf(bits);
  }
  const std::int64_t h = std::int64_t{1} << (level - 1);
  const auto top = std::partition(cells.begin() + lo, cells.begin() + hi, [&](Cell c) { return c.y < y0 + h; });
  const std::size_t mid = static_cast<std::size_t>(top - cells.begin());
  const auto tl = std::partition(cells.begin() + lo, cells.begin() + mid, [&](Cell c) { return c.x < x0 + h; });
  const auto bl = std::partition(cells.begin() + mid, cells.begin() + hi, [&](Cell c) { return c.x < x0 + h; });
  const std::size_t a = static_cast<std::size_t>(tl - cells.begin());
  const std::size_t b = static_cast<std::size_t>(bl - cells.begin());
  const Id nw = build(cells, lo, a, x0, y0, level - 1);
  const Id ne = build(cells, a, mid, x0 + h, y0, level - 1);
  const Id sw = build(cells, mid, b, x0, y0 + h, level - 1);
  const Id se = build(cells, b, hi, x0 + h, y0 + h, level - 1);
  return join(nw, ne, sw, se);
}

void HashLife::load(const Universe& u) {
  if (nodes_.size() > max_nodes) clear();
  generation_ = u.generation();
  std::vector<Cell> cells = u.cells();
  if (cells.empty()) {
    root_level_ = 6;
    root_ = empty(6);
    ox_ = oy_ = 0;
    return;
  }
  const Box b = *u.bounding_box();
  int level = 6;
  while ((std::int64_t{1} << level) < std::max<std::int64_t>(b.width(), b.height())) ++level;
  root_level_ = level;
  ox_ = b.min.x;
  oy_ = b.min.y;
  empty(level + 1);
  root_ = build(cells, 0, cells.size(), ox_, oy_, level);
}

bool HashLife::alive(Cell c) const {
  std::int64_t x = c.x - ox_, y = c.y - oy_;
  const std::int64_t size = std::int64_t{1} << root_level_;
  if (x < 0 || y < 0 || x >= size || y >= size) return false;
  Id id = root_;
  for (int l = root_level_; l > kLeafLevel; --l) {
    if (id == empties_[static_cast<std::size_t>(l)]) return false;
    const std::int64_t h = std::int64_t{1} << (l - 1);
    const Node& n = nodes_[id];
    const bool right = x >= h, down = y >= h;
    id = down ? (right ? n.se : n.sw) : (right ? n.ne : n.nw);
    if (right) x -= h;
    if (down) y -= h;
  }
  return (nodes_[id].bits >> (8 * y + x)) & 1u;
}

void HashLife::collect(Id id, std::int64_t x0, std::int64_t y0, std::vector<Cell>& out) const {
  const Node& n = nodes_[id];
  if (n.level == kLeafLevel) {
    for (std::uint64_t bits = n.bits; bits; bits &= bits - 1) {
      const int i = __builtin_ctzll(bits);
      out.push_back({static_cast<std::int32_t>(x0 + (i & 7)), static_cast<std::int32_t>(y0 + (i >> 3))});
    }
    return;
  }
  if (id == empties_[n.level]) return;
  const std::int64_t h = std::int64_t{1} << (n.level - 1);
  collect(n.nw, x0, y0, out);
  collect(n.ne, x0 + h, y0, out);
  collect(n.sw, x0, y0 + h, out);
  collect(n.se, x0 + h, y0 + h, out);
}

Universe HashLife::universe() const {
  std::vector<Cell> cells;
  collect(root_, ox_, oy_, cells);
  return Universe(cells, generation_);
}

std::size_t HashLife::count(Id id, std::vector<std::int64_t>& memo) const {
  if (memo[id] >= 0) return static_cast<std::size_t>(memo[id]);
  const Node& n = nodes_[id];
  std::size_t c;
  if (n.level == kLeafLevel)
    c = static_cast<std::size_t>(__builtin_popcountll(n.bits));
  else
    c = count(n.nw, memo) + count(n.ne, memo) + count(n.sw, memo) + count(n.se, memo);
  memo[id] = static_cast<std::int64_t>(c);
  return c;
}

std::size_t HashLife::population() const {
  std::vector<std::int64_t> memo(nodes_.size(), -1);
  return count(root_, memo);
}

}  // namespace lifelogic
