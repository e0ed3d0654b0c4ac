#include "lifelogic/layout.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <stdexcept>

namespace lifelogic {

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

bool is_mirrored(Orientation o) {
  if (o == Orientation::identity()) return false;
  if (o == Orientation::flip_x()) return true;
  throw std::invalid_argument("layout placements use identity or flip_x only, got " + o.name());
}

std::int32_t pattern_width(const std::string& name) { return catalog(name).bounds().width(); }

}  // namespace

std::int32_t lane_of(Heading h, Cell c) {
  const Cell v = heading_vector(h);
  return v.y * c.x - v.x * c.y;
}

std::int32_t along_of(Heading h, Cell c) { return heading_vector(h).x * c.x; }

int stream_phase(const StreamEvent& e) {
  return static_cast<int>(floor_mod(e.t - 4 * static_cast<std::int64_t>(along_of(e.heading, e.at)), kGunPeriod));
}

bool same_stream(const StreamEvent& a, const StreamEvent& b) {
  return a.heading == b.heading && lane_of(a.heading, a.at) == lane_of(b.heading, b.at) &&
         stream_phase(a) == stream_phase(b);
}

StreamEvent event_at_along(const StreamEvent& e, std::int32_t along) {
  const std::int32_t d = along - along_of(e.heading, e.at);
  const Cell v = heading_vector(e.heading);
  return {{e.at.x + v.x * d, e.at.y + v.y * d}, e.t + 4 * static_cast<std::int64_t>(d), e.heading};
}

StreamEvent event_from_match(const GliderMatch& m, std::int64_t generation) {
  // Offsets from a phase-k top-left to the next phase-0 top-left, per heading.
  static const auto table = [] {
    std::array<std::array<Cell, 4>, 4> t{};
    for (int h = 0; h < 4; ++h) {
      for (int k = 0; k < 4; ++k) {
        const auto form = glider_form(k, static_cast<Heading>(h));
        Universe u(std::span<const Cell>(form.data(), form.size()));
        u.advance((4 - k) % 4);
        const auto found = find_gliders(u);
        t[h][k] = found.at(0).position;
      }
    }
    return t;
  }();
  const int k = m.phase & 3;
  return {m.position + table[static_cast<int>(m.heading)][k], generation + (4 - k) % 4, m.heading};
}

void PQBox::add(Cell c) {
  const PQ v = to_pq(c);
  pmin = std::min(pmin, v.p);
  pmax = std::max(pmax, v.p);
  qmin = std::min(qmin, v.q);
  qmax = std::max(qmax, v.q);
}

void PQBox::add(const PQBox& b) {
  if (b.empty()) return;
  pmin = std::min(pmin, b.pmin);
  pmax = std::max(pmax, b.pmax);
  qmin = std::min(qmin, b.qmin);
  qmax = std::max(qmax, b.qmax);
}

bool PQBox::intersects(const PQBox& b) const {
  return !empty() && !b.empty() && pmin <= b.pmax && b.pmin <= pmax && qmin <= b.qmax &&
         b.qmin <= qmax;
}

std::vector<Cell> placement_footprint(const Placement& p) {
  const Pattern t = transform(catalog(p.pattern), p.orientation);
  std::vector<Cell> out;
  out.reserve(t.cells.size());
  for (const Cell& c : t.cells) out.push_back(c + p.at);
  return out;
}

std::vector<Cell> placement_cells(const Placement& p) {
  if (p.phase == 0) return placement_footprint(p);
  // Evolved gun states are cached per (pattern, orientation, phase).
  static std::mutex mutex;
  static std::map<std::tuple<std::string, int, int, int, int, int>, std::vector<Cell>> cache;
  const auto k = std::make_tuple(p.pattern, p.orientation.xx, p.orientation.xy, p.orientation.yx,
                                 p.orientation.yy, p.phase);
  std::vector<Cell> base;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find(k);
    if (it == cache.end()) {
      const Pattern t = transform(catalog(p.pattern), p.orientation);
      it = cache.emplace(k, t.to_universe().run(p.phase).cells()).first;
    }
    base = it->second;
  }
  for (Cell& c : base) c = c + p.at;
  return base;
}

Placement mirror(const Placement& p) {
  Placement out = p;
  const std::int32_t w = transform(catalog(p.pattern), p.orientation).bounds().width();
  out.orientation = compose(Orientation::flip_x(), p.orientation);
  out.at = {-p.at.x - w + 1, p.at.y};
  return out;
}

const GliderPhysics& physics() {
  static const GliderPhysics phys = [] {
    GliderPhysics g;
    const Pattern& gun = catalog("gun_p30");
    g.gun_width = gun.bounds().width();
    Universe u = gun.to_universe();
    bool found = false;
    for (int t = 1; t <= kGunPeriod && !found; ++t) {
      u.advance();
      for (const auto& m : find_gliders(u)) {
        if (m.phase == 0) {
          g.gun_event = {m.position, t, m.heading};
          found = true;
          break;
        }
      }
    }
    if (!found || g.gun_event.heading != Heading::SE)
      throw CatalogError("gun_p30: no SE glider within one period");

    g.stopper_glider = eater_alignment("eater_stopper").glider_at;
    g.detector_glider = eater_alignment("eater_detector").glider_at;
    g.stopper_control = stopper_entry_offset();
    g.detector_probe = detector_probe_offset();

    // A SW glider one column-pair to the right and one row up meets the SE
    // glider symmetrically; both vanish without a trace.
    g.sw_offset = {6, -1};
    g.reaction_time = 8;
    Universe pair;
    for (const Cell& c : glider_form(0, Heading::SE)) pair.set(c);
    for (const Cell& c : glider_form(0, Heading::SW)) pair.set(c + g.sw_offset);
    pair.advance(g.reaction_time);
    if (!pair.empty()) throw CatalogError("crossing reaction leaves debris");
    return g;
  }();
  return phys;
}

StreamEvent gun_stream(const Placement& gun) {
  const GliderPhysics& ph = physics();
  const StreamEvent& b = ph.gun_event;
  const std::int64_t t = b.t - gun.phase;
  if (!is_mirrored(gun.orientation)) return {gun.at + b.at, t, Heading::SE};
  return {{gun.at.x + ph.gun_width - 1 - (b.at.x + 2), gun.at.y + b.at.y}, t, Heading::SW};
}

Placement gun_emitting(Heading heading, Cell nascent, int phase) {
  const GliderPhysics& ph = physics();
  const StreamEvent& b = ph.gun_event;
  Placement p{"gun_p30", {}, Orientation::identity(), static_cast<int>(floor_mod(phase, kGunPeriod))};
  if (heading == Heading::SE) {
    p.at = nascent - b.at;
  } else if (heading == Heading::SW) {
    p.orientation = Orientation::flip_x();
    p.at = {nascent.x - (ph.gun_width - 1) + b.at.x + 2, nascent.y - b.at.y};
  } else {
    throw std::invalid_argument("guns emit SE or SW only");
  }
  return p;
}

namespace {

// Approach of the eater's glider relative to the placement's top-left.
Cell approach_offset(const std::string& name, bool mirrored) {
  const Cell g = eater_alignment(name).glider_at;
  if (!mirrored) return g;
  return {pattern_width(name) - 3 - g.x, g.y};
}

}  // namespace

Placement eater_for(const std::string& name, const StreamEvent& e, std::int32_t along) {
  const bool mirrored = e.heading == Heading::SW;
  if (!mirrored && e.heading != Heading::SE) throw std::invalid_argument("eaters catch SE or SW streams");
  const Cell catch_at = event_at_along(e, along).at;
  return {name, catch_at - approach_offset(name, mirrored),
          mirrored ? Orientation::flip_x() : Orientation::identity(), 0};
}

Cell eater_control_cell(const Placement& eater) {
  const bool mirrored = is_mirrored(eater.orientation);
  Cell off = eater.pattern == "eater_stopper" ? stopper_entry_offset() : detector_probe_offset();
  if (mirrored) off.x = pattern_width(eater.pattern) - 1 - off.x;
  return eater.at + off;
}

std::int32_t eater_catch_along(const Placement& eater, Heading h) {
  return along_of(h, eater.at + approach_offset(eater.pattern, is_mirrored(eater.orientation)));
}

std::optional<StreamEvent> crossing_partner(const StreamEvent& se, std::int32_t sw_lane) {
  const Cell off = physics().sw_offset;
  const std::int32_t base = lane_of(Heading::SW, se.at + off);
  const std::int32_t diff = sw_lane - base;
  if (diff % 2 != 0) return std::nullopt;
  const std::int32_t k = diff / 2;
  return StreamEvent{{se.at.x + k + off.x, se.at.y + k + off.y}, se.t + 4 * static_cast<std::int64_t>(k),
                     Heading::SW};
}

std::optional<StreamEvent> crossing_partner_se(const StreamEvent& sw, std::int32_t se_lane) {
  // k steps along the SW stream put the SE partner at sw.at + (-k, k) - off.
  const Cell se0 = sw.at - physics().sw_offset;
  const std::int32_t diff = lane_of(Heading::SE, se0) - se_lane;
  if (diff % 2 != 0) return std::nullopt;
  const std::int32_t k = diff / 2;
  return StreamEvent{{se0.x - k, se0.y + k}, sw.t + 4 * static_cast<std::int64_t>(k), Heading::SE};
}

bool corridor_contains(const Corridor& c, Cell cell, int margin) {
  // Glider cells lie in the 3x3 box right of and below the event's top-left,
  // so the cells' lane and along values are offset from the event's.
  const std::int32_t lane = lane_of(c.heading, cell);
  const std::int32_t a = along_of(c.heading, cell);
  const Cell v = heading_vector(c.heading);
  const std::int32_t lane_lo = c.lane + std::min(0, v.y * 2) - std::max(0, v.x * 2);
  const std::int32_t lane_hi = c.lane + std::max(0, v.y * 2) - std::min(0, v.x * 2);
  const std::int32_t along_lo = c.from + std::min(0, v.x * 2);
  const std::int32_t along_hi = c.to + std::max(0, v.x * 2);
  return lane >= lane_lo - margin && lane <= lane_hi + margin && a >= along_lo - margin &&
         a <= along_hi + margin;
}
}  // namespace lifelogic
