#pragma once

// Memoised quadtree stepping for long runs of large, mostly periodic
// patterns. Produces the same states as Universe::advance.

#include <cstdint>
#include <vector>

#include "lifelogic/engine.hpp"

namespace lifelogic {

class HashLife {
 public:
  HashLife();

  /// Replaces the current pattern. The memo tables are kept, unless they have
  /// grown past the node budget.
  void load(const Universe& u);
  void advance(std::int64_t n);

  bool alive(Cell c) const;
  Universe universe() const;
  std::int64_t generation() const { return generation_; }
  std::size_t population() const;

  std::size_t node_count() const { return nodes_.size(); }
  /// Drops every node and memo entry, and the current pattern.
  void clear();

  /// Node budget above which load() starts from empty tables.
  std::size_t max_nodes = std::size_t{1} << 24;

 private:
  using Id = std::uint32_t;
  struct Node {
    Id nw = 0, ne = 0, sw = 0, se = 0;
    std::uint64_t bits = 0;  // level-3 leaves: bit 8*y + x
    std::uint8_t level = 0;
  };

  Id leaf(std::uint64_t bits);
  Id join(Id nw, Id ne, Id sw, Id se);
  Id empty(int level);
  Id intern(const Node& n, std::uint64_t h);
  void grow_table();

  Id centre(Id n);
  Id result(Id n, int j);
  Id base_result(Id n, int j);
  void paint(Id n, std::uint64_t* rows, int x0, int y0) const;
  Id from_rows(const std::uint64_t* rows, int x0, int y0, int level);

  bool inner_fits() const;
  void expand();
  void step_pow2(int j);

  Id build(std::vector<Cell>& cells, std::size_t lo, std::size_t hi, std::int64_t x0, std::int64_t y0, int level);
  void collect(Id n, std::int64_t x0, std::int64_t y0, std::vector<Cell>& out) const;
  std::size_t count(Id n, std::vector<std::int64_t>& memo) const;

  std::vector<Node> nodes_;
  std::vector<Id> table_;  // open addressing, 0 = free
  std::vector<Id> empties_;
  std::vector<std::pair<std::uint64_t, Id>> memo_;  // key 0 = free
  std::size_t memo_used_ = 0;

  Id root_ = 0;
  int root_level_ = 0;
  std::int64_t ox_ = 0, oy_ = 0;
  std::int64_t generation_ = 0;
};

}  // namespace lifelogic
