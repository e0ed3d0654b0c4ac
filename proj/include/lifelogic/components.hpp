#pragma once

// Functional elements (inputs, guns, stoppers, outputs), collision geometry and
// the AND / OR / NOT gate templates.

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lifelogic/engine.hpp"
#include "lifelogic/layout.hpp"
#include "lifelogic/patterns.hpp"

namespace lifelogic {

enum class Role { Input, Gun, Stopper, Output };
const char* role_name(Role r);

/// A placed functional element.
///
/// Inputs are a gun plus the stopper that blocks its stream; the control cell
/// is the stopper's entry cell. Outputs are a detector eater whose control
/// cell is the probe cell.
struct Component {
  Role role = Role::Gun;
  std::string pattern_name;
  Cell at;
  Orientation orientation = Orientation::identity();
  std::optional<Cell> control_cell;
  std::optional<int> emission_phase;
  std::optional<Placement> stopper;  // inputs only
  std::string label;                 // variable name for inputs

  Placement placement() const;
  /// Every pattern instance the component consists of.
  std::vector<Placement> parts() const;
  friend bool operator==(const Component&, const Component&) = default;
};

/// Cells of all parts at generation 0 (guns advanced to their phase).
std::vector<Cell> component_cells(const Component& c);
/// Generation-0 universe holding every component.
Universe assemble(const std::vector<Component>& components);
/// Bounding region of a component's static parts, grown by `margin`.
Box component_region(const Component& c, int margin = 0);

class RoleError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};
class AlreadyActivatedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Sets an input's entry cell live. Inputs are applied at generation 0.
Universe activate_input(const Universe& u, const Component& c);
/// True iff the output's probe cell is live in any of the sampled states.
bool probe_output(const std::vector<Universe>& window, const Component& c);

// --- collisions ----------------------------------------------------------------

/// Two guns side by side whose streams cross: gun_a emits SE, gun_b is its
/// mirror image emitting SW. Distance and offset are measured between the
/// nascent gliders' top-left cells (gun_b minus gun_a).
struct CollisionSpec {
  Component gun_a;
  Component gun_b;
  int lateral_offset = 0;
  int nascent_distance = 0;
};

enum class Annihilation { Clean, TwoPhaseBlock, Misaligned };
const char* annihilation_name(Annihilation a);

/// Builds the gun pair for a given nascent distance and lateral offset.
CollisionSpec make_collision(int nascent_distance, int lateral_offset);
/// Geometric verdict, no simulation.
Annihilation check_annihilation_alignment(const CollisionSpec& s);
/// Verdict from running the pair until the streams have settled.
Annihilation simulate_annihilation(const CollisionSpec& s);

// --- gate templates ----------------------------------------------------------------

enum class GateKind { And, Or, Not };
const char* gate_kind_name(GateKind k);
std::optional<GateKind> gate_kind_from_name(std::string_view name);
int gate_arity(GateKind k);
bool gate_truth(GateKind k, const std::vector<bool>& inputs);

/// Spacing parameters of a gate layout, in cells. Along-distances count
/// diagonal glider steps; gaps in the rotated p/q frame count p or q units.
struct GateGeometry {
  int stopper_distance = 12;  // input gun's nascent glider -> stopper catch point
  int gun_clearance = 2;      // gate gun body -> first crossing lane
  int child_gap = 4;          // between stacked sub-layouts
  int lane_margin = 6;        // sub-layout -> crossing stream column
  int eater_gap = 8;          // crossing -> eater catch point
  int exit_gap = 6;           // crossing -> sub-layout exit
  int detector_gap = 8;       // exit -> detector catch point
  friend bool operator==(const GateGeometry&, const GateGeometry&) = default;
};

struct CertificateRow {
  std::vector<bool> inputs;
  bool output = false;
  bool clean = false;
};

struct GateTemplate {
  GateKind kind = GateKind::And;
  std::vector<Component> components;
  std::vector<std::pair<std::string, Cell>> input_cells;  // slot name -> entry cell
  Cell output_cell;
  Heading output_heading = Heading::SE;
  std::vector<Heading> input_headings;
  std::int64_t probe_generation = 0;
  int probe_window = kGunPeriod;
  GateGeometry geometry;
  std::vector<Corridor> corridors;
  std::vector<CertificateRow> certificate;
};

/// Lays out a gate with fresh input components A (and B) and a detector.
GateTemplate layout_gate(GateKind kind, const GateGeometry& g);

struct GateRun {
  bool output = false;
  bool clean = false;           // no live cells outside regions and corridors
  bool stoppers_ok = true;      // inactive stoppers survive, active ones are gone
};
GateRun run_gate(const GateTemplate& t, const std::vector<bool>& inputs);

/// Runs every assignment and fills t.certificate. True iff all rows pass.
bool certify(GateTemplate& t);

class CalibrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inclusive range searched for one geometry parameter; empty when lo > hi.
struct ParamRange {
  int lo = 0;
  int hi = -1;
  bool empty() const { return lo > hi; }
};

struct CalibrationSearch {
  ParamRange stopper_distance;
  ParamRange gun_clearance;
  ParamRange eater_gap;
  ParamRange exit_gap;
  ParamRange detector_gap;
  int child_gap = 4;
  int lane_margin = 6;
};

/// Seed ranges; `width` values per parameter starting at the seed.
CalibrationSearch default_search(GateKind kind, int width = 4);

/// Exhaustive search; first geometry whose certificate passes every row with
/// no debris. Throws CalibrationError("no-valid-placement") when exhausted.
GateTemplate calibrate(GateKind kind, const CalibrationSearch& search);

/// Fixture files: <dir>/<name>.rle and <dir>/<name>.meta.
void save_gate_fixture(const GateTemplate& t, const std::filesystem::path& dir);
GateTemplate load_gate_fixture(GateKind kind, const std::filesystem::path& dir);
std::filesystem::path gate_fixture_dir();

/// Shipped templates, loaded once and re-verified against their fixture cells
/// and truth table. Throw CalibrationError if a fixture fails.
const GateTemplate& build_and();
const GateTemplate& build_or();
const GateTemplate& build_not();
const GateTemplate& shipped_gate(GateKind kind);

// --- layout assembly ----------------------------------------------------------------

/// A gate (or input) inside an assembled layout.
struct GateNode {
  GateKind kind = GateKind::And;
  Heading output_heading = Heading::SE;
  std::vector<std::size_t> components;  // indices into Block::components
  std::array<int, 2> child_gate{-1, -1};   // producing gate per slot, or -1
  std::array<int, 2> child_input{-1, -1};  // input component per slot, or -1
};

/// A self-contained piece of circuitry whose output leaves as one glider
/// stream. Built for a SE output and mirrored for SW.
struct Block {
  std::vector<Component> components;
  std::vector<Corridor> corridors;
  std::vector<GateNode> gates;
  int root_gate = -1;   // -1 for a bare input
  int root_input = -1;  // component index when root_gate == -1
  PQBox box;
  StreamEvent out;
  std::int32_t exit_along = 0;
  std::int64_t steady = 0;  // output at exit_along is periodic from here on
  int guns = 0;
};

void translate(Block& b, Cell d);
void shift_time(Block& b, int generations);
Block mirrored(const Block& b);

Block input_block(const std::string& label, const GateGeometry& g);
Block and_block(Block a, Block b, const GateGeometry& g);
Block or_block(Block a, Block b, const GateGeometry& g);
/// `a` must output SW; the result outputs SE.
Block not_block(Block a, const GateGeometry& g);

struct Detector {
  Component output;
  std::int64_t probe_generation = 0;
};
/// Detector eater on the block's output lane, with a safe probe generation.
Detector attach_detector(Block& b, const GateGeometry& g);

}  // namespace lifelogic
