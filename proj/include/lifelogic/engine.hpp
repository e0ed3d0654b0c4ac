#pragma once

// Game of Life (B3/S23) on an unbounded plane.
//
// The universe is stored sparsely as 64x64 bit tiles and stepped with a
// bit-sliced adder network, 64 cells per machine word. A dense reference
// implementation lives in reference.hpp and is used to check this one.

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace lifelogic {

/// x grows rightward, y grows downward.
struct Cell {
  std::int32_t x = 0;
  std::int32_t y = 0;

  friend constexpr auto operator<=>(const Cell&, const Cell&) = default;
  friend constexpr Cell operator+(Cell a, Cell b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Cell operator-(Cell a, Cell b) { return {a.x - b.x, a.y - b.y}; }
};

struct Box {
  Cell min;
  Cell max;

  constexpr std::int32_t width() const { return max.x - min.x + 1; }
  constexpr std::int32_t height() const { return max.y - min.y + 1; }
  constexpr bool contains(Cell c) const {
    return c.x >= min.x && c.x <= max.x && c.y >= min.y && c.y <= max.y;
  }
  friend constexpr bool operator==(const Box&, const Box&) = default;
};

/// Birth/survival neighbour-count sets. Only B3/S23 is supported.
struct Rule {
  std::uint16_t birth = 1u << 3;
  std::uint16_t survival = (1u << 2) | (1u << 3);

  static constexpr Rule conway() { return {}; }
  constexpr bool next_state(bool alive, int neighbours) const {
    return ((alive ? survival : birth) >> neighbours) & 1u;
  }
  friend constexpr bool operator==(const Rule&, const Rule&) = default;
};

/// Diagonal direction of travel. Names follow screen orientation (y down).
enum class Heading : std::uint8_t { SE = 0, SW = 1, NE = 2, NW = 3 };

constexpr Cell heading_vector(Heading h) {
  switch (h) {
    case Heading::SE: return {1, 1};
    case Heading::SW: return {-1, 1};
    case Heading::NE: return {1, -1};
    case Heading::NW: return {-1, -1};
  }
  return {0, 0};
}

const char* heading_name(Heading h);

class Universe {
 public:
  static constexpr int kTileBits = 6;
  static constexpr int kTileSize = 1 << kTileBits;
  using Tile = std::array<std::uint64_t, kTileSize>;

  Universe() = default;
  explicit Universe(std::span<const Cell> live, std::int64_t generation = 0);

  bool alive(Cell c) const;
  void set(Cell c, bool alive = true);

  std::int64_t generation() const { return generation_; }
  void set_generation(std::int64_t g) { generation_ = g; }

  std::size_t population() const;
  bool empty() const { return tiles_.empty(); }
  std::optional<Box> bounding_box() const;

  /// Live cells sorted by (x, y).
  std::vector<Cell> cells() const;
  /// Live cells inside `box`, sorted by (x, y).
  std::vector<Cell> cells_in(const Box& box) const;
  std::size_t population_in(const Box& box) const;

  /// Number of live Moore neighbours of c (c itself excluded).
  int neighbor_count(Cell c) const;

  /// Next generation; *this is left untouched.
  Universe step() const;
  /// n successive steps.
  Universe run(std::int64_t n) const;
  /// In-place variants for long simulations.
  void advance();
  void advance(std::int64_t n);

  /// Live sets equal, generation ignored.
  bool same_cells(const Universe& other) const;
  friend bool operator==(const Universe& a, const Universe& b) {
    return a.generation_ == b.generation_ && a.same_cells(b);
  }

  /// Live cells shifted by `offset`.
  Universe translated(Cell offset) const;
  /// Union of the live sets; generation of *this is kept.
  void merge(const Universe& other);

 private:
  static std::uint64_t key(std::int32_t tx, std::int32_t ty) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(tx)) << 32) |
           static_cast<std::uint32_t>(ty);
  }
  static std::int32_t key_x(std::uint64_t k) { return static_cast<std::int32_t>(k >> 32); }
  static std::int32_t key_y(std::uint64_t k) {
    return static_cast<std::int32_t>(k & 0xffffffffu);
  }

  std::unordered_map<std::uint64_t, Tile> tiles_;
  std::int64_t generation_ = 0;
};

/// A glider found by shape matching.
struct GliderMatch {
  Cell position;  // top-left of the glider's 3x3 bounding box
  int phase = 0;  // 0..3; phase k is the catalog glider stepped k times
  Heading heading = Heading::SE;

  friend auto operator<=>(const GliderMatch&, const GliderMatch&) = default;
};

/// Glider cells (3x3 box, top-left at origin) for a given phase/heading.
std::span<const Cell> glider_form(int phase, Heading heading);

/// Every isolated glider: exactly one of the 16 forms inside a 3x3 box,
/// with the surrounding one-cell ring empty. Sorted by position.
std::vector<GliderMatch> find_gliders(const Universe& u);

/// Removes the five cells of a detected glider.
void erase_glider(Universe& u, const GliderMatch& g);

struct Stabilization {
  std::int64_t stabilized_at = 0;
  int period = 0;
};

/// Steps forward, stripping gliders that are outside the residue's bounding
/// box and moving away from it. Returns the first generation G (relative to
/// u's generation) whose residue recurs at G + p, p <= max_period.
std::optional<Stabilization> detect_stabilization(const Universe& u, std::int64_t max_gen,
                                                  int max_period);

/// The residue used by detect_stabilization: u minus its outward-bound gliders.
Universe strip_escaping_gliders(const Universe& u);

}  // namespace lifelogic
