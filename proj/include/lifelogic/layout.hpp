#pragma once

// Glider-stream geometry shared by gate templates and the circuit compiler.
//
// Every signal in this toolkit is a stream of gliders emitted by a p30 gun,
// one glider per 30 generations. A stream is pinned down by a single
// "event": the top-left cell of a phase-0 glider and the generation at which
// it sits there. Two events describe the same infinite stream when they
// share a lane and agree modulo the 30-generation period.
//
// Layouts are built for streams heading SE or SW only, so everything flows
// down the screen. In the rotated coordinates p = x + y and q = y - x a SE
// stream runs along +p and a SW stream along +q; mirroring x -> -x swaps p
// and q.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lifelogic/engine.hpp"
#include "lifelogic/patterns.hpp"

namespace lifelogic {

inline constexpr int kGunPeriod = 30;

struct StreamEvent {
  Cell at;             // top-left of the phase-0 glider
  std::int64_t t = 0;  // generation
  Heading heading = Heading::SE;
  friend bool operator==(const StreamEvent&, const StreamEvent&) = default;
};

/// Invariant of a lane: constant for all cells a glider visits.
std::int32_t lane_of(Heading h, Cell c);
/// Coordinate along the direction of travel (grows by one per glider step).
std::int32_t along_of(Heading h, Cell c);
/// Stream phase in [0, 30): equal for all events of one stream.
int stream_phase(const StreamEvent& e);
bool same_stream(const StreamEvent& a, const StreamEvent& b);
/// Event of the same stream whose glider sits at `along` on the lane.
StreamEvent event_at_along(const StreamEvent& e, std::int32_t along);
/// Event derived from a find_gliders match seen at `generation`.
StreamEvent event_from_match(const GliderMatch& m, std::int64_t generation);

struct PQ {
  std::int32_t p = 0;
  std::int32_t q = 0;
};
constexpr PQ to_pq(Cell c) { return {c.x + c.y, c.y - c.x}; }

/// Axis-aligned box in (p, q).
struct PQBox {
  std::int32_t pmin = INT32_MAX, pmax = INT32_MIN, qmin = INT32_MAX, qmax = INT32_MIN;
  bool empty() const { return pmin > pmax; }
  void add(Cell c);
  void add(const PQBox& b);
  bool intersects(const PQBox& b) const;
};

/// One pattern instance. Guns advance `phase` generations before time 0.
struct Placement {
  std::string pattern;
  Cell at;  // top-left of the transformed phase-0 pattern
  Orientation orientation = Orientation::identity();
  int phase = 0;
  friend bool operator==(const Placement&, const Placement&) = default;
};

/// Live cells of a placement at generation 0.
std::vector<Cell> placement_cells(const Placement& p);
/// Cells of the transformed phase-0 pattern (no evolution); used for extents.
std::vector<Cell> placement_footprint(const Placement& p);

/// x -> -x for a placement, preserving the cells it produces.
Placement mirror(const Placement& p);

/// Measured once from the catalog by simulation.
struct GliderPhysics {
  StreamEvent gun_event;        // canonical gun_p30, phase 0
  std::int32_t gun_width = 0;   // of the canonical gun
  Cell stopper_glider;          // SE approach relative to eater_stopper top-left
  Cell detector_glider;         // SE approach relative to eater_detector top-left
  Cell stopper_control;         // entry cell relative to eater_stopper top-left
  Cell detector_probe;          // probe cell relative to eater_detector top-left
  /// Annihilating 90-degree pair: SE phase-0 glider at the origin and SW
  /// phase-0 glider at `sw_offset`, both at the same generation.
  Cell sw_offset;
  int reaction_time = 0;
};
const GliderPhysics& physics();

/// First stream event of a gun placement (identity or flip_x orientation).
StreamEvent gun_stream(const Placement& gun);
/// Gun placement emitting on `heading` (SE or SW) whose nascent event is at `nascent`.
Placement gun_emitting(Heading heading, Cell nascent, int phase);

/// Eater whose canonical approach is the lane of `e`, catching gliders at `along`.
Placement eater_for(const std::string& name, const StreamEvent& e, std::int32_t along);
/// Stopper entry cell or detector probe cell for an eater placement.
Cell eater_control_cell(const Placement& eater);
/// Where the glider of `eater`'s lane is when the eater catches it.
std::int32_t eater_catch_along(const Placement& eater, Heading h);

/// Phase-0 SW event at the same generation that annihilates with SE event `se`
/// when the SW stream runs on lane `sw_lane`; nullopt when the lane parity does
/// not admit the reaction.
std::optional<StreamEvent> crossing_partner(const StreamEvent& se, std::int32_t sw_lane);
/// Same question from the SW side.
std::optional<StreamEvent> crossing_partner_se(const StreamEvent& sw, std::int32_t se_lane);

/// Straight stretch of a stream, used for debris containment checks.
struct Corridor {
  Heading heading = Heading::SE;
  std::int32_t lane = 0;
  std::int32_t from = 0;  // along-coordinates, inclusive
  std::int32_t to = 0;
};
bool corridor_contains(const Corridor& c, Cell cell, int margin);

}  // namespace lifelogic
