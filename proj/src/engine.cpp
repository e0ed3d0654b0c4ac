#include "lifelogic/engine.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace lifelogic {

namespace {

constexpr int kSize = Universe::kTileSize;
constexpr std::uint64_t kTopBit = std::uint64_t{1} << 63;

const Universe::Tile kZeroTile{};

bool tile_empty(const Universe::Tile& t) {
  return std::all_of(t.begin(), t.end(), [](std::uint64_t w) { return w == 0; });
}

std::int32_t floor_tile(std::int32_t v) { return v >> Universe::kTileBits; }
int tile_bit(std::int32_t v) { return v & (kSize - 1); }

// Neighbour tiles in the order NW, N, NE, W, C, E, SW, S, SE.
using Neighbourhood = std::array<const Universe::Tile*, 9>;

// One generation for the centre tile. Bit j of row i is the cell
// (64*tx + j, 64*ty + i).
void step_tile(const Neighbourhood& nb, Universe::Tile& out) {
  const auto& nw = *nb[0];
  const auto& n = *nb[1];
  const auto& ne = *nb[2];
  const auto& w = *nb[3];
  const auto& c = *nb[4];
  const auto& e = *nb[5];
  const auto& sw = *nb[6];
  const auto& s = *nb[7];
  const auto& se = *nb[8];

  // Rows -1..64 of the centre column with the cells left/right of it folded in.
  std::array<std::uint64_t, kSize + 2> mid{}, left{}, right{};
  auto load = [&](int r, std::uint64_t m, std::uint64_t wl, std::uint64_t er) {
    mid[r] = m;
    left[r] = (m << 1) | (wl >> 63);
    right[r] = (m >> 1) | (er << 63);
  };
  load(0, n[kSize - 1], nw[kSize - 1], ne[kSize - 1]);
  for (int i = 0; i < kSize; ++i) load(i + 1, c[i], w[i], e[i]);
  load(kSize + 1, s[0], sw[0], se[0]);

  for (int i = 1; i <= kSize; ++i) {
    // Two-bit horizontal sums of the rows above and below, one-bit pairs in
    // the centre row (the cell itself is excluded).
    const std::uint64_t a_l = left[i - 1], a_m = mid[i - 1], a_r = right[i - 1];
    const std::uint64_t a0 = a_l ^ a_m ^ a_r;
    const std::uint64_t a1 = (a_l & a_m) | (a_l & a_r) | (a_m & a_r);
    const std::uint64_t c_l = left[i + 1], c_m = mid[i + 1], c_r = right[i + 1];
    const std::uint64_t c0 = c_l ^ c_m ^ c_r;
    const std::uint64_t c1 = (c_l & c_m) | (c_l & c_r) | (c_m & c_r);
    const std::uint64_t b0 = left[i] ^ right[i];
    const std::uint64_t b1 = left[i] & right[i];

    const std::uint64_t ones = a0 ^ b0 ^ c0;
    const std::uint64_t carry = (a0 & b0) | (a0 & c0) | (b0 & c0);
    // total = ones + 2 * (a1 + b1 + c1 + carry); 2 or 3 iff exactly one twos bit.
    const std::uint64_t p = a1 ^ b1;
    const std::uint64_t q = c1 ^ carry;
    const std::uint64_t exactly_one = (p ^ q) & ~((a1 & b1) | (c1 & carry));
    out[i - 1] = exactly_one & (ones | mid[i]);
  }
}

}  // namespace

const char* heading_name(Heading h) {
  switch (h) {
    case Heading::SE: return "SE";
    case Heading::SW: return "SW";
    case Heading::NE: return "NE";
    case Heading::NW: return "NW";
  }
  return "?";
}

Universe::Universe(std::span<const Cell> live, std::int64_t generation)
    : generation_(generation) {
  for (const Cell& c : live) set(c, true);
}

bool Universe::alive(Cell c) const {
  auto it = tiles_.find(key(floor_tile(c.x), floor_tile(c.y)));
  if (it == tiles_.end()) return false;
  return (it->second[tile_bit(c.y)] >> tile_bit(c.x)) & 1u;
}

void Universe::set(Cell c, bool alive) {
  const auto k = key(floor_tile(c.x), floor_tile(c.y));
  const std::uint64_t mask = std::uint64_t{1} << tile_bit(c.x);
  if (alive) {
    tiles_[k][tile_bit(c.y)] |= mask;
    return;
  }
  auto it = tiles_.find(k);
  if (it == tiles_.end()) return;
  it->second[tile_bit(c.y)] &= ~mask;
  if (tile_empty(it->second)) tiles_.erase(it);
}

std::size_t Universe::population() const {
  std::size_t n = 0;
  for (const auto& [k, t] : tiles_)
    for (std::uint64_t w : t) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::optional<Box> Universe::bounding_box() const {
  if (tiles_.empty()) return std::nullopt;
  Box b{{INT32_MAX, INT32_MAX}, {INT32_MIN, INT32_MIN}};
  for (const auto& [k, t] : tiles_) {
    const std::int32_t ox = key_x(k) * kSize, oy = key_y(k) * kSize;
    std::uint64_t any = 0;
    for (int i = 0; i < kSize; ++i) {
      if (t[i] == 0) continue;
      any |= t[i];
      b.min.y = std::min(b.min.y, oy + i);
      b.max.y = std::max(b.max.y, oy + i);
    }
    b.min.x = std::min(b.min.x, ox + std::countr_zero(any));
    b.max.x = std::max(b.max.x, ox + 63 - std::countl_zero(any));
  }
  return b;
}

std::vector<Cell> Universe::cells() const {
  std::vector<Cell> out;
  for (const auto& [k, t] : tiles_) {
    const std::int32_t ox = key_x(k) * kSize, oy = key_y(k) * kSize;
    for (int i = 0; i < kSize; ++i) {
      for (std::uint64_t w = t[i]; w != 0; w &= w - 1)
        out.push_back({ox + std::countr_zero(w), oy + i});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Cell> Universe::cells_in(const Box& box) const {
  std::vector<Cell> out;
  for (const auto& [k, t] : tiles_) {
    const std::int32_t ox = key_x(k) * kSize, oy = key_y(k) * kSize;
    if (ox > box.max.x || ox + kSize - 1 < box.min.x || oy > box.max.y ||
        oy + kSize - 1 < box.min.y)
      continue;
    for (int i = 0; i < kSize; ++i) {
      for (std::uint64_t w = t[i]; w != 0; w &= w - 1) {
        const Cell c{ox + std::countr_zero(w), oy + i};
        if (box.contains(c)) out.push_back(c);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t Universe::population_in(const Box& box) const { return cells_in(box).size(); }

int Universe::neighbor_count(Cell c) const {
  int n = 0;
  for (int dy = -1; dy <= 1; ++dy)
    for (int dx = -1; dx <= 1; ++dx)
      if ((dx != 0 || dy != 0) && alive({c.x + dx, c.y + dy})) ++n;
  return n;
}

Universe Universe::step() const {
  Universe next = *this;
  next.advance();
  return next;
}

Universe Universe::run(std::int64_t n) const {
  Universe next = *this;
  next.advance(n);
  return next;
}

void Universe::advance(std::int64_t n) {
  for (std::int64_t i = 0; i < n; ++i) advance();
}

void Universe::advance() {
  std::vector<std::uint64_t> work;
  work.reserve(tiles_.size() * 2);
  for (const auto& [k, t] : tiles_) {
    const std::int32_t tx = key_x(k), ty = key_y(k);
    work.push_back(k);
    std::uint64_t left_col = 0, right_col = 0;
    for (std::uint64_t w : t) {
      left_col |= w & 1u;
      right_col |= w & kTopBit;
    }
    const bool top = t[0] != 0, bottom = t[kSize - 1] != 0;
    if (top) work.push_back(key(tx, ty - 1));
    if (bottom) work.push_back(key(tx, ty + 1));
    if (left_col) work.push_back(key(tx - 1, ty));
    if (right_col) work.push_back(key(tx + 1, ty));
    if (t[0] & 1u) work.push_back(key(tx - 1, ty - 1));
    if (t[0] & kTopBit) work.push_back(key(tx + 1, ty - 1));
    if (t[kSize - 1] & 1u) work.push_back(key(tx - 1, ty + 1));
    if (t[kSize - 1] & kTopBit) work.push_back(key(tx + 1, ty + 1));
  }
  std::sort(work.begin(), work.end());
  work.erase(std::unique(work.begin(), work.end()), work.end());

  auto lookup = [this](std::int32_t tx, std::int32_t ty) -> const Tile* {
    auto it = tiles_.find(key(tx, ty));
    return it == tiles_.end() ? &kZeroTile : &it->second;
  };

  std::unordered_map<std::uint64_t, Tile> next;
  next.reserve(work.size());
  Tile out;
  for (std::uint64_t k : work) {
    const std::int32_t tx = key_x(k), ty = key_y(k);
    const Neighbourhood nb{lookup(tx - 1, ty - 1), lookup(tx, ty - 1), lookup(tx + 1, ty - 1),
                           lookup(tx - 1, ty),     lookup(tx, ty),     lookup(tx + 1, ty),
                           lookup(tx - 1, ty + 1), lookup(tx, ty + 1), lookup(tx + 1, ty + 1)};
    step_tile(nb, out);
    if (!tile_empty(out)) next.emplace(k, out);
  }
  tiles_ = std::move(next);
  ++generation_;
}

bool Universe::same_cells(const Universe& other) const {
  if (tiles_.size() != other.tiles_.size()) return false;
  for (const auto& [k, t] : tiles_) {
    auto it = other.tiles_.find(k);
    if (it == other.tiles_.end() || it->second != t) return false;
  }
  return true;
}

Universe Universe::translated(Cell offset) const {
  Universe out;
  out.generation_ = generation_;
  for (const Cell& c : cells()) out.set(c + offset);
  return out;
}

void Universe::merge(const Universe& other) {
  for (const auto& [k, t] : other.tiles_) {
    auto& dst = tiles_[k];
    for (int i = 0; i < kSize; ++i) dst[i] |= t[i];
  }
}

// --- gliders ---------------------------------------------------------------

namespace {

struct GliderForms {
  // forms[heading][phase], cells sorted, inside a 3x3 box at the origin.
  std::array<std::array<std::vector<Cell>, 4>, 4> forms;
};

std::vector<Cell> normalise(std::vector<Cell> cells) {
  std::int32_t mx = INT32_MAX, my = INT32_MAX;
  for (const Cell& c : cells) {
    mx = std::min(mx, c.x);
    my = std::min(my, c.y);
  }
  for (Cell& c : cells) c = {c.x - mx, c.y - my};
  std::sort(cells.begin(), cells.end());
  return cells;
}

const GliderForms& glider_forms() {
  static const GliderForms table = [] {
    GliderForms g;
    // Phase 0, heading SE:  .o. / ..o / ooo
    std::vector<Cell> base{{1, 0}, {2, 1}, {0, 2}, {1, 2}, {2, 2}};
    Universe u(base);
    for (int phase = 0; phase < 4; ++phase) {
      const auto se = normalise(u.cells());
      for (int h = 0; h < 4; ++h) {
        std::vector<Cell> f = se;
        const Heading heading = static_cast<Heading>(h);
        for (Cell& c : f) {
          if (heading == Heading::SW || heading == Heading::NW) c.x = -c.x;
          if (heading == Heading::NE || heading == Heading::NW) c.y = -c.y;
        }
        g.forms[h][phase] = normalise(std::move(f));
      }
      u.advance();
    }
    return g;
  }();
  return table;
}

}  // namespace

std::span<const Cell> glider_form(int phase, Heading heading) {
  return glider_forms().forms[static_cast<int>(heading)][phase & 3];
}

std::vector<GliderMatch> find_gliders(const Universe& u) {
  const auto& table = glider_forms();
  std::vector<GliderMatch> out;
  const auto live = u.cells();
  // Each glider form's first cell (in (x,y) order) anchors a candidate box.
  for (const Cell& c : live) {
    for (int h = 0; h < 4; ++h) {
      for (int phase = 0; phase < 4; ++phase) {
        const auto& form = table.forms[h][phase];
        const Cell origin = c - form.front();
        bool ok = true;
        for (std::int32_t dy = -1; dy <= 3 && ok; ++dy) {
          for (std::int32_t dx = -1; dx <= 3 && ok; ++dx) {
            const bool want = std::binary_search(form.begin(), form.end(), Cell{dx, dy});
            if (u.alive({origin.x + dx, origin.y + dy}) != want) ok = false;
          }
        }
        if (ok) out.push_back({origin, phase, static_cast<Heading>(h)});
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void erase_glider(Universe& u, const GliderMatch& g) {
  for (const Cell& c : glider_form(g.phase, g.heading)) u.set(g.position + c, false);
}

Universe strip_escaping_gliders(const Universe& u) {
  const auto gliders = find_gliders(u);
  if (gliders.empty()) return u;
  Universe residue = u;
  for (const auto& g : gliders) erase_glider(residue, g);
  const auto box = residue.bounding_box();
  Universe out = u;
  for (const auto& g : gliders) {
    bool escaping = true;
    if (box) {
      const Cell v = heading_vector(g.heading);
      const std::int32_t gx0 = g.position.x, gx1 = g.position.x + 2;
      const std::int32_t gy0 = g.position.y, gy1 = g.position.y + 2;
      escaping = (v.x > 0 && gx0 > box->max.x) || (v.x < 0 && gx1 < box->min.x) ||
                 (v.y > 0 && gy0 > box->max.y) || (v.y < 0 && gy1 < box->min.y);
    }
    if (escaping) erase_glider(out, g);
  }
  return out;
}

std::optional<Stabilization> detect_stabilization(const Universe& u, std::int64_t max_gen,
                                                  int max_period) {
  if (max_gen <= 0 || max_period < 1) return std::nullopt;
  std::vector<Universe> history;  // residues, index = generation offset
  Universe current = u;
  std::optional<Stabilization> best;
  for (std::int64_t g = 0; g <= max_gen; ++g) {
    history.push_back(strip_escaping_gliders(current));
    const Universe& now = history.back();
    for (int p = max_period; p >= 1; --p) {
      if (g - p < 0) continue;
      if (history[static_cast<std::size_t>(g - p)].same_cells(now)) {
        if (!best || g - p < best->stabilized_at) best = Stabilization{g - p, p};
        break;
      }
    }
    // Any earlier start would have to be confirmed within max_period more steps.
    if (best && g >= best->stabilized_at + 2 * max_period) break;
    current.advance();
  }
  if (best) {
    // Smallest period at the chosen start.
    for (int p = 1; p <= max_period; ++p) {
      const auto a = static_cast<std::size_t>(best->stabilized_at);
      if (a + p < history.size() && history[a].same_cells(history[a + p])) {
        best->period = p;
        break;
      }
    }
  }
  return best;
}

}  // namespace lifelogic
