#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>

#include "lifelogic/patterns.hpp"

#ifndef LIFELOGIC_FIXTURE_DIR
#define LIFELOGIC_FIXTURE_DIR "fixtures"
#endif

namespace lifelogic {

const char* kind_name(PatternKind k) {
  switch (k) {
    case PatternKind::StillLife: return "still-life";
    case PatternKind::Oscillator: return "oscillator";
    case PatternKind::Spaceship: return "spaceship";
    case PatternKind::Gun: return "gun";
    case PatternKind::Eater: return "eater";
    case PatternKind::Methuselah: return "methuselah";
  }
  return "?";
}

// --- orientation ---------------------------------------------------------------

const std::array<Orientation, 8>& Orientation::all() {
  static const std::array<Orientation, 8> table{
      identity(), rotate90(), rotate180(), rotate270(),
      flip_x(),   flip_y(),   transpose(), anti_transpose()};
  return table;
}

namespace {
constexpr std::array<std::pair<std::string_view, Orientation>, 8> kOrientationNames{{
    {"identity", Orientation::identity()},
    {"rotate90", Orientation::rotate90()},
    {"rotate180", Orientation::rotate180()},
    {"rotate270", Orientation::rotate270()},
    {"flip_x", Orientation::flip_x()},
    {"flip_y", Orientation::flip_y()},
    {"transpose", Orientation::transpose()},
    {"anti_transpose", Orientation::anti_transpose()},
}};
}  // namespace

std::optional<Orientation> Orientation::from_name(std::string_view name) {
  for (const auto& [n, o] : kOrientationNames)
    if (n == name) return o;
  return std::nullopt;
}

std::string Orientation::name() const {
  for (const auto& [n, o] : kOrientationNames)
    if (o == *this) return std::string(n);
  return "invalid";
}

Heading Orientation::apply(Heading h) const {
  const Cell v = apply(heading_vector(h));
  if (v.x > 0) return v.y > 0 ? Heading::SE : Heading::NE;
  return v.y > 0 ? Heading::SW : Heading::NW;
}

// --- patterns ----------------------------------------------------------------

std::vector<Cell> normalise_cells(std::vector<Cell> cells) {
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  if (cells.empty()) return cells;
  std::int32_t mx = INT32_MAX, my = INT32_MAX;
  for (const Cell& c : cells) {
    mx = std::min(mx, c.x);
    my = std::min(my, c.y);
  }
  for (Cell& c : cells) c = {c.x - mx, c.y - my};
  std::sort(cells.begin(), cells.end());
  return cells;
}

Pattern make_pattern(std::string name, std::vector<Cell> cells, PatternKind kind) {
  Pattern p;
  p.name = std::move(name);
  p.cells = normalise_cells(std::move(cells));
  p.kind = kind;
  return p;
}

Box Pattern::bounds() const {
  Box b{{0, 0}, {-1, -1}};
  for (const Cell& c : cells) {
    b.max.x = std::max(b.max.x, c.x);
    b.max.y = std::max(b.max.y, c.y);
  }
  return b;
}

Universe Pattern::to_universe(Cell at) const {
  Universe u;
  for (const Cell& c : cells) u.set(c + at);
  return u;
}

Pattern transform(const Pattern& p, Orientation o) {
  Pattern out = p;
  std::vector<Cell> moved;
  moved.reserve(p.cells.size());
  for (const Cell& c : p.cells) moved.push_back(o.apply(c));
  out.cells = normalise_cells(std::move(moved));
  if (p.velocity) {
    const Cell v = o.apply(Cell{p.velocity->dx, p.velocity->dy});
    out.velocity = Velocity{v.x, v.y, p.velocity->per};
  }
  return out;
}

OverlapError::OverlapError(Cell c)
    : std::runtime_error("placement overlaps live cell (" + std::to_string(c.x) + "," +
                         std::to_string(c.y) + ")"),
      cell_(c) {}

void place_into(Universe& u, const Pattern& p, Cell at, Orientation o) {
  const Pattern t = o == Orientation::identity() ? p : transform(p, o);
  for (const Cell& c : t.cells)
    if (u.alive(c + at)) throw OverlapError(c + at);
  for (const Cell& c : t.cells) u.set(c + at);
}

Universe place(const Universe& u, const Pattern& p, Cell at, Orientation o) {
  Universe out = u;
  place_into(out, p, at, o);
  return out;
}

// --- catalog -----------------------------------------------------------------

UnknownPatternError::UnknownPatternError(const std::string& name)
    : std::runtime_error([&] {
        std::string msg = "unknown pattern '" + name + "'; valid names:";
        for (const auto& n : catalog_names()) msg += " " + n;
        return msg;
      }()) {}

std::filesystem::path fixture_dir() {
  if (const char* env = std::getenv("LIFE_FIXTURE_DIR"); env && *env) return env;
  return LIFELOGIC_FIXTURE_DIR;
}

namespace {

struct CatalogEntry {
  std::string_view name;
  PatternKind kind;
  std::optional<int> period;
  std::optional<Velocity> velocity;
};

constexpr std::array<CatalogEntry, 8> kEntries{{
    {"block", PatternKind::StillLife, 1, std::nullopt},
    {"beehive", PatternKind::StillLife, 1, std::nullopt},
    {"blinker", PatternKind::Oscillator, 2, std::nullopt},
    {"glider", PatternKind::Spaceship, 4, Velocity{1, 1, 4}},
    {"r_pentomino", PatternKind::Methuselah, std::nullopt, std::nullopt},
    {"gun_p30", PatternKind::Gun, 30, std::nullopt},
    {"eater_stopper", PatternKind::Eater, 1, std::nullopt},
    {"eater_detector", PatternKind::Eater, 1, std::nullopt},
}};

// Found by simulating a phase-0 SE glider against each eater over a window of
// offsets. Both eaters also accept (-4,-4) (recovery 6); (-5,-5) keeps the
// glider clear of the eater body for one more step, which the gate layouts
// rely on.
constexpr EaterAlignment kStopperAlignment{{-5, -5}, 10};
constexpr EaterAlignment kDetectorAlignment{{-5, -5}, 10};
// Left of the hook's lower arm; born at generation 8 of a consumption.
constexpr Cell kDetectorProbe{-1, 1};
// One live cell here turns the fishhook into a pattern that dies out
// completely in nine generations.
constexpr Cell kStopperEntry{-1, 1};
constexpr int kStopperDeath = 9;

bool cells_equal(const Universe& u, const std::vector<Cell>& cells) {
  return u.cells() == cells;
}

void verify_eater(const Pattern& p, const EaterAlignment& a) {
  Universe u = p.to_universe();
  if (!cells_equal(u.step(), p.cells)) throw CatalogError(p.name + ": eater is not a still life");
  Universe hit = u;
  place_into(hit, glider_phase(0), a.glider_at);
  bool probe_seen = false;
  for (int g = 0; g < a.recovery; ++g) {
    hit.advance();
    probe_seen = probe_seen || hit.alive(kDetectorProbe);
  }
  if (!cells_equal(hit, p.cells))
    throw CatalogError(p.name + ": eater does not recover from its calibrated glider");
  if (p.name == "eater_detector" && !probe_seen)
    throw CatalogError(p.name + ": probe cell never fires during consumption");
  if (p.name == "eater_stopper") {
    Universe opened = u;
    opened.set(kStopperEntry);
    opened.advance(kStopperDeath);
    if (!opened.empty()) throw CatalogError(p.name + ": entry cell does not destroy the stopper");
  }
}

void verify_gun(const Pattern& p) {
  const int period = p.period.value_or(0);
  if (period <= 0) throw CatalogError(p.name + ": gun lacks a period");
  const Universe start = p.to_universe();
  Universe u = start;
  for (int k = 1; k <= 10; ++k) {
    u.advance(period);
    Universe body = u;
    const auto gliders = find_gliders(u);
    for (const auto& g : gliders) erase_glider(body, g);
    if (gliders.size() != static_cast<std::size_t>(k) || !body.same_cells(start))
      throw CatalogError(p.name + ": gun does not emit exactly one glider per period");
  }
}

}  // namespace

Pattern glider_phase(int phase) {
  const auto form = glider_form(phase & 3, Heading::SE);
  Pattern p = make_pattern("glider", {form.begin(), form.end()}, PatternKind::Spaceship);
  p.period = 4;
  p.velocity = Velocity{1, 1, 4};
  return p;
}

EaterAlignment eater_alignment(std::string_view eater_name) {
  if (eater_name == "eater_stopper") return kStopperAlignment;
  if (eater_name == "eater_detector") return kDetectorAlignment;
  throw UnknownPatternError(std::string(eater_name));
}

Cell detector_probe_offset() { return kDetectorProbe; }
Cell stopper_entry_offset() { return kStopperEntry; }
int stopper_death_generations() { return kStopperDeath; }

void verify_pattern(const Pattern& p) {
  if (p.cells.empty()) throw CatalogError(p.name + ": empty pattern");
  const Universe u = p.to_universe();
  switch (p.kind) {
    case PatternKind::StillLife:
      if (!cells_equal(u.step(), p.cells)) throw CatalogError(p.name + ": not a still life");
      break;
    case PatternKind::Oscillator: {
      const int period = p.period.value_or(0);
      Universe v = u;
      for (int g = 1; g <= period; ++g) {
        v.advance();
        if (v.same_cells(u) != (g == period))
          throw CatalogError(p.name + ": oscillator period mismatch");
      }
      break;
    }
    case PatternKind::Spaceship: {
      if (!p.period || !p.velocity) throw CatalogError(p.name + ": spaceship lacks period/velocity");
      const Universe v = u.run(*p.period);
      if (!v.same_cells(u.translated({p.velocity->dx, p.velocity->dy})))
        throw CatalogError(p.name + ": spaceship does not translate by its velocity");
      break;
    }
    case PatternKind::Gun:
      verify_gun(p);
      break;
    case PatternKind::Eater:
      verify_eater(p, eater_alignment(p.name));
      break;
    case PatternKind::Methuselah:
      break;
  }
}

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& e : kEntries) v.emplace_back(e.name);
    return v;
  }();
  return names;
}

const Pattern& catalog(std::string_view name) {
  static std::mutex mutex;
  static std::map<std::string, Pattern, std::less<>> loaded;
  std::lock_guard lock(mutex);
  if (auto it = loaded.find(name); it != loaded.end()) return it->second;

  const auto entry = std::find_if(kEntries.begin(), kEntries.end(),
                                  [&](const CatalogEntry& e) { return e.name == name; });
  if (entry == kEntries.end()) throw UnknownPatternError(std::string(name));

  Pattern p = read_rle_file(fixture_dir() / "patterns" / (std::string(name) + ".rle"));
  p.name = std::string(name);
  p.kind = entry->kind;
  p.period = entry->period;
  p.velocity = entry->velocity;
  verify_pattern(p);
  return loaded.emplace(std::string(name), std::move(p)).first->second;
}

}  // namespace lifelogic
