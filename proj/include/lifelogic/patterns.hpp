#pragma once

// Pattern catalog, RLE I/O and dihedral transforms.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lifelogic/engine.hpp"

namespace lifelogic {

enum class PatternKind { StillLife, Oscillator, Spaceship, Gun, Eater, Methuselah };

const char* kind_name(PatternKind k);

/// Displacement (dx, dy) every `per` generations.
struct Velocity {
  std::int32_t dx = 0;
  std::int32_t dy = 0;
  std::int32_t per = 1;
  friend bool operator==(const Velocity&, const Velocity&) = default;
};

/// One of the eight symmetries of the square, stored as an integer matrix
/// acting on (x, y): (x, y) -> (xx*x + xy*y, yx*x + yy*y).
struct Orientation {
  std::int8_t xx = 1, xy = 0, yx = 0, yy = 1;

  static constexpr Orientation identity() { return {1, 0, 0, 1}; }
  /// Quarter turn clockwise on screen (y down).
  static constexpr Orientation rotate90() { return {0, -1, 1, 0}; }
  static constexpr Orientation rotate180() { return {-1, 0, 0, -1}; }
  static constexpr Orientation rotate270() { return {0, 1, -1, 0}; }
  /// x -> -x (left/right mirror).
  static constexpr Orientation flip_x() { return {-1, 0, 0, 1}; }
  /// y -> -y (top/bottom mirror).
  static constexpr Orientation flip_y() { return {1, 0, 0, -1}; }
  static constexpr Orientation transpose() { return {0, 1, 1, 0}; }
  static constexpr Orientation anti_transpose() { return {0, -1, -1, 0}; }

  static const std::array<Orientation, 8>& all();
  static std::optional<Orientation> from_name(std::string_view name);
  std::string name() const;

  constexpr Cell apply(Cell c) const {
    return {xx * c.x + xy * c.y, yx * c.x + yy * c.y};
  }
  Heading apply(Heading h) const;

  /// (outer ∘ inner): apply `inner` first.
  friend constexpr Orientation compose(Orientation outer, Orientation inner) {
    return {static_cast<std::int8_t>(outer.xx * inner.xx + outer.xy * inner.yx),
            static_cast<std::int8_t>(outer.xx * inner.xy + outer.xy * inner.yy),
            static_cast<std::int8_t>(outer.yx * inner.xx + outer.yy * inner.yx),
            static_cast<std::int8_t>(outer.yx * inner.xy + outer.yy * inner.yy)};
  }
  friend constexpr bool operator==(const Orientation&, const Orientation&) = default;
};

struct Pattern {
  std::string name;
  std::vector<Cell> cells;  // sorted; normalised so min x == 0 and min y == 0
  PatternKind kind = PatternKind::StillLife;
  std::optional<int> period;
  std::optional<Velocity> velocity;

  Box bounds() const;
  Universe to_universe(Cell at = {0, 0}) const;
  friend bool operator==(const Pattern&, const Pattern&) = default;
};

/// Sorts, dedups and shifts cells so the minimum x and y are 0.
std::vector<Cell> normalise_cells(std::vector<Cell> cells);

/// Pattern from raw cells (normalised).
Pattern make_pattern(std::string name, std::vector<Cell> cells,
                     PatternKind kind = PatternKind::StillLife);

// --- RLE -------------------------------------------------------------------

class RleError : public std::runtime_error {
 public:
  enum class Kind { MalformedHeader, UnexpectedCharacter, MissingTerminator, UnsupportedRule };
  RleError(Kind kind, int line, int column, const std::string& what);
  Kind kind() const { return kind_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  Kind kind_;
  int line_;
  int column_;
};

/// Parses an RLE document (B3/S23 only). `#N` comments set the name.
Pattern parse_rle(std::string_view text);
/// Canonical RLE: header line then body wrapped at 70 columns, no trailing newline.
std::string emit_rle(const Pattern& p);

Pattern read_rle_file(const std::filesystem::path& path);
void write_rle_file(const std::filesystem::path& path, const Pattern& p);

// --- geometry ----------------------------------------------------------------

/// Applies `o` to every offset and renormalises. Velocity follows the transform.
Pattern transform(const Pattern& p, Orientation o);

class OverlapError : public std::runtime_error {
 public:
  explicit OverlapError(Cell c);
  Cell cell() const { return cell_; }

 private:
  Cell cell_;
};

/// Adds transform(p, o) offset by `at`. Throws OverlapError if any placed
/// cell is already live.
Universe place(const Universe& u, const Pattern& p, Cell at,
               Orientation o = Orientation::identity());
/// In-place variant.
void place_into(Universe& u, const Pattern& p, Cell at, Orientation o = Orientation::identity());

// --- catalog -----------------------------------------------------------------

class UnknownPatternError : public std::runtime_error {
 public:
  explicit UnknownPatternError(const std::string& name);
};

class CatalogError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Directory holding fixture files; $LIFE_FIXTURE_DIR overrides the built-in path.
std::filesystem::path fixture_dir();

const std::vector<std::string>& catalog_names();
/// Loads (once) and verifies the named catalog pattern.
const Pattern& catalog(std::string_view name);

/// Glider in the given phase (0..3), heading SE, normalised.
Pattern glider_phase(int phase);

/// How a glider must approach an eater for the eater to consume it:
/// a SE-heading phase-0 glider whose top-left is `glider_at` relative to the
/// eater's top-left. `recovery` bounds the generations until the eater is
/// back to its exact cells.
struct EaterAlignment {
  Cell glider_at;
  int recovery = 0;
};
EaterAlignment eater_alignment(std::string_view eater_name);

/// Detector cell of eater_detector (relative to its top-left): dead at rest,
/// live for at least one generation while a glider is being consumed.
Cell detector_probe_offset();

/// Entry cell of eater_stopper (relative to its top-left): setting it live
/// makes the stopper die out within stopper_death_generations().
Cell stopper_entry_offset();
int stopper_death_generations();

/// Verifies the kind-specific invariant by simulation; throws CatalogError.
void verify_pattern(const Pattern& p);

}  // namespace lifelogic
