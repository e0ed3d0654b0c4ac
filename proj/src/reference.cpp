#include "lifelogic/reference.hpp"

#include <vector>

namespace lifelogic {

Universe reference_step(const Universe& u, Rule rule) {
  Universe next;
  next.set_generation(u.generation() + 1);
  const auto box = u.bounding_box();
  if (!box) return next;

  // Grid covers the box plus a margin of 2 so that every neighbour lookup of
  // a margin cell stays in range.
  const std::int32_t x0 = box->min.x - 2, y0 = box->min.y - 2;
  const std::int32_t w = box->width() + 4, h = box->height() + 4;
  std::vector<unsigned char> grid(static_cast<std::size_t>(w) * h, 0);
  auto at = [&](std::int32_t x, std::int32_t y) -> unsigned char& {
    return grid[static_cast<std::size_t>(y - y0) * w + (x - x0)];
  };
  for (const Cell& c : u.cells()) at(c.x, c.y) = 1;

  for (std::int32_t y = box->min.y - 1; y <= box->max.y + 1; ++y) {
    for (std::int32_t x = box->min.x - 1; x <= box->max.x + 1; ++x) {
      int n = 0;
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx)
          if (dx != 0 || dy != 0) n += at(x + dx, y + dy);
      if (rule.next_state(at(x, y) != 0, n)) next.set({x, y});
    }
  }
  return next;
}

}  // namespace lifelogic
