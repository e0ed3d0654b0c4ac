#include "lifelogic/components.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

namespace lifelogic {

namespace {

int mod30(std::int64_t v) {
  const std::int64_t r = v % kGunPeriod;
  return static_cast<int>(r < 0 ? r + kGunPeriod : r);
}

bool is_even(std::int64_t v) { return v % 2 == 0; }

PQBox pq_box(const std::vector<Cell>& cells, int margin = 0) {
  PQBox b;
  for (const Cell& c : cells) b.add(c);
  if (!b.empty()) {
    b.pmin -= margin;
    b.pmax += margin;
    b.qmin -= margin;
    b.qmax += margin;
  }
  return b;
}

Cell cell_on(Heading h, std::int32_t lane, std::int32_t along) {
  // Inverse of lane_of/along_of for the two headings used in layouts.
  if (h == Heading::SE) return {along, along - lane};
  if (h == Heading::SW) return {-along, lane - along};
  throw std::invalid_argument("layouts use SE or SW streams");
}

PQBox corridor_box(const Corridor& c) {
  PQBox b;
  for (std::int32_t a : {c.from, c.to}) {
    const Cell tl = cell_on(c.heading, c.lane, a);
    b.add(tl);
    b.add(tl + Cell{2, 0});
    b.add(tl + Cell{0, 2});
    b.add(tl + Cell{2, 2});
  }
  return b;
}

Corridor corridor_of(const StreamEvent& e, std::int32_t from, std::int32_t to) {
  return {e.heading, lane_of(e.heading, e.at), std::min(from, to), std::max(from, to)};
}

StreamEvent mirror_event(const StreamEvent& e) {
  const Heading h = e.heading == Heading::SE ? Heading::SW : Heading::SE;
  return {{-e.at.x - 2, e.at.y}, e.t, h};
}

Corridor mirror_corridor(const Corridor& c) {
  const StreamEvent a = mirror_event({cell_on(c.heading, c.lane, c.from), 0, c.heading});
  const StreamEvent b = mirror_event({cell_on(c.heading, c.lane, c.to), 0, c.heading});
  return corridor_of(a, along_of(a.heading, a.at), along_of(b.heading, b.at));
}

Component mirror_component(const Component& c) {
  Component out = c;
  const Placement m = mirror(c.placement());
  out.at = m.at;
  out.orientation = m.orientation;
  if (c.stopper) out.stopper = mirror(*c.stopper);
  if (c.control_cell) out.control_cell = Cell{-c.control_cell->x, c.control_cell->y};
  return out;
}

Component gun_component(const Placement& p) {
  Component c;
  c.role = Role::Gun;
  c.pattern_name = p.pattern;
  c.at = p.at;
  c.orientation = p.orientation;
  c.emission_phase = p.phase;
  return c;
}

Component eater_component(const Placement& p) {
  Component c;
  c.role = Role::Stopper;
  c.pattern_name = p.pattern;
  c.at = p.at;
  c.orientation = p.orientation;
  return c;
}

std::size_t add_component(Block& b, Component c) {
  b.box.add(pq_box(component_cells(c), 2));
  if (c.role == Role::Gun || c.role == Role::Input) ++b.guns;
  b.components.push_back(std::move(c));
  return b.components.size() - 1;
}

void add_corridor(Block& b, const Corridor& c) {
  b.box.add(corridor_box(c));
  b.corridors.push_back(c);
}

/// Moves src's contents into dst. Returns the index of src's root gate and
/// root input inside dst.
std::pair<int, int> absorb(Block& dst, Block&& src) {
  const int comp_off = static_cast<int>(dst.components.size());
  const int gate_off = static_cast<int>(dst.gates.size());
  for (auto& c : src.components) dst.components.push_back(std::move(c));
  for (auto& c : src.corridors) dst.corridors.push_back(c);
  for (GateNode g : src.gates) {
    for (auto& i : g.components) i += static_cast<std::size_t>(comp_off);
    for (auto& k : g.child_gate)
      if (k >= 0) k += gate_off;
    for (auto& k : g.child_input)
      if (k >= 0) k += comp_off;
    dst.gates.push_back(std::move(g));
  }
  dst.box.add(src.box);
  dst.guns += src.guns;
  return {src.root_gate >= 0 ? src.root_gate + gate_off : -1,
          src.root_gate >= 0 ? -1 : src.root_input + comp_off};
}

void link_child(GateNode& node, int slot, std::pair<int, int> root) {
  node.child_gate[slot] = root.first;
  node.child_input[slot] = root.second;
}

std::int64_t gun_steady(const StreamEvent& nascent, std::int32_t along) {
  return physics().gun_event.t + 4 * static_cast<std::int64_t>(along - along_of(nascent.heading, nascent.at)) + 1;
}

constexpr int kCrossingSettle = 8;

/// Translates an SE-output block so its box lies left of `pmax_limit`, its box
/// top is at or below `qmin_limit` and its lane row at or below `row_min`,
/// choosing parities so the stream can meet a SW stream on `sw_lane`.
void place_se_child(Block& c, std::int32_t row_min, std::int32_t qmin_limit, std::int32_t pmax_limit,
                    std::int32_t sw_lane) {
  const PQ o = to_pq(c.out.at);
  std::int32_t r = std::max(row_min - o.q, qmin_limit - c.box.qmin);
  std::int32_t s = pmax_limit - c.box.pmax;
  if (!is_even(static_cast<std::int64_t>(sw_lane) - (o.p + s) - physics().sw_offset.x - physics().sw_offset.y))
    --s;
  if (!is_even(static_cast<std::int64_t>(s) - r)) ++r;
  translate(c, {(s - r) / 2, (s + r) / 2});
}

/// Time-shifts `c` so that its output stream annihilates with `sw`.
StreamEvent align_se_child(Block& c, const StreamEvent& sw) {
  const auto partner = crossing_partner_se(sw, lane_of(Heading::SE, c.out.at));
  if (!partner) throw std::logic_error("crossing parity mismatch");
  shift_time(c, mod30(stream_phase(c.out) - stream_phase(*partner)));
  if (!same_stream(c.out, *partner)) throw std::logic_error("crossing alignment failed");
  return *partner;
}

StreamEvent sw_at_crossing(const StreamEvent& se, const StreamEvent& sw_stream) {
  const auto p = crossing_partner(se, lane_of(Heading::SW, sw_stream.at));
  if (!p || !same_stream(*p, sw_stream)) throw std::logic_error("crossing is not aligned");
  return *p;
}

/// Gate gun emitting SW with its nascent glider at the origin.
Placement gate_gun_sw() { return gun_emitting(Heading::SW, {0, 0}, 0); }

/// Shared first half of AND and OR: gun Q crossing inputs a then b.
struct TwoInput {
  Block out;
  GateNode node;
  StreamEvent q;             // Q's nascent event
  StreamEvent cross_b_se;    // b's glider at the crossing
  StreamEvent cross_b_sw;    // Q's glider at the crossing
  std::int64_t settle_b = 0;
  PQBox upper;               // everything that b must stay below
};

TwoInput cross_two(Block a, Block b, GateKind kind, const GateGeometry& g) {
  TwoInput r;
  Block& out = r.out;
  const Placement qgun = gate_gun_sw();
  r.q = gun_stream(qgun);
  const std::int32_t q_lane = lane_of(Heading::SW, r.q.at);
  const PQBox qbox = pq_box(placement_footprint(qgun));
  r.node.kind = kind;
  r.node.components.push_back(add_component(out, gun_component(qgun)));

  place_se_child(a, qbox.qmax + g.gun_clearance + 3, INT32_MIN / 2, qbox.pmin - g.lane_margin, q_lane);
  const StreamEvent cross_a = align_se_child(a, r.q);
  const StreamEvent cross_a_sw = sw_at_crossing(cross_a, r.q);
  const std::int32_t along_a = along_of(Heading::SE, cross_a.at);
  if (along_a <= a.exit_along) throw std::logic_error("input a exits past its crossing");
  const Placement eat_a = eater_for("eater_stopper", cross_a, along_a + g.eater_gap);
  add_corridor(out, corridor_of(cross_a, a.exit_along, eater_catch_along(eat_a, Heading::SE)));
  const std::int64_t settle_a =
      std::max(a.steady + 4 * static_cast<std::int64_t>(along_a - a.exit_along),
               gun_steady(r.q, along_of(Heading::SW, cross_a_sw.at))) +
      kCrossingSettle;

  r.upper = a.box;
  r.upper.add(qbox);
  const auto a_root = absorb(out, std::move(a));
  link_child(r.node, 0, a_root);
  const std::size_t ea = add_component(out, eater_component(eat_a));
  r.node.components.push_back(ea);
  r.upper.add(pq_box(component_cells(out.components[ea])));

  place_se_child(b, INT32_MIN / 2, r.upper.qmax + g.child_gap, q_lane - g.lane_margin, q_lane);
  r.cross_b_se = align_se_child(b, r.q);
  r.cross_b_sw = sw_at_crossing(r.cross_b_se, r.q);
  const std::int32_t along_b = along_of(Heading::SE, r.cross_b_se.at);
  if (along_b <= b.exit_along) throw std::logic_error("input b exits past its crossing");
  r.settle_b = std::max(b.steady + 4 * static_cast<std::int64_t>(along_b - b.exit_along),
                        settle_a + 4 * static_cast<std::int64_t>(along_of(Heading::SW, r.cross_b_sw.at) -
                                                                 along_of(Heading::SW, cross_a_sw.at))) +
               kCrossingSettle;
  const std::int32_t b_exit = b.exit_along;
  const StreamEvent b_out = b.out;
  r.upper.add(b.box);
  const auto b_root = absorb(out, std::move(b));
  link_child(r.node, 1, b_root);
  out.out = b_out;
  out.exit_along = b_exit;
  return r;
}

}  // namespace

const char* role_name(Role r) {
  switch (r) {
    case Role::Input: return "input";
    case Role::Gun: return "gun";
    case Role::Stopper: return "stopper";
    case Role::Output: return "output";
  }
  return "?";
}

Placement Component::placement() const {
  return {pattern_name, at, orientation, emission_phase.value_or(0)};
}

std::vector<Placement> Component::parts() const {
  std::vector<Placement> v{placement()};
  if (stopper) v.push_back(*stopper);
  return v;
}

std::vector<Cell> component_cells(const Component& c) {
  std::vector<Cell> out;
  for (const Placement& p : c.parts()) {
    const auto cells = placement_cells(p);
    out.insert(out.end(), cells.begin(), cells.end());
  }
  return out;
}

Universe assemble(const std::vector<Component>& components) {
  Universe u;
  for (const Component& c : components) {
    for (const Cell& cell : component_cells(c)) {
      if (u.alive(cell)) throw OverlapError(cell);
      u.set(cell);
    }
  }
  return u;
}

Box component_region(const Component& c, int margin) {
  Box b{{INT32_MAX, INT32_MAX}, {INT32_MIN, INT32_MIN}};
  for (const Placement& p : c.parts()) {
    for (const Cell& cell : placement_footprint(p)) {
      b.min = {std::min(b.min.x, cell.x), std::min(b.min.y, cell.y)};
      b.max = {std::max(b.max.x, cell.x), std::max(b.max.y, cell.y)};
    }
  }
  b.min = b.min - Cell{margin, margin};
  b.max = b.max + Cell{margin, margin};
  return b;
}

Universe activate_input(const Universe& u, const Component& c) {
  if (c.role != Role::Input || !c.control_cell)
    throw RoleError(std::string("activate_input needs an input component, got ") + role_name(c.role));
  if (u.generation() != 0) throw std::invalid_argument("inputs are applied at generation 0");
  if (u.alive(*c.control_cell)) throw AlreadyActivatedError("input '" + c.label + "' is already active");
  Universe out = u;
  out.set(*c.control_cell);
  return out;
}

bool probe_output(const std::vector<Universe>& window, const Component& c) {
  if (c.role != Role::Output || !c.control_cell)
    throw RoleError(std::string("probe_output needs an output component, got ") + role_name(c.role));
  return std::any_of(window.begin(), window.end(),
                     [&](const Universe& u) { return u.alive(*c.control_cell); });
}

// --- collisions ----------------------------------------------------------------

const char* annihilation_name(Annihilation a) {
  switch (a) {
    case Annihilation::Clean: return "clean-annihilation";
    case Annihilation::TwoPhaseBlock: return "two-phase-block";
    case Annihilation::Misaligned: return "misaligned";
  }
  return "?";
}

namespace {

// Nascent glider of a gun component at generation 15 of its cycle.
Cell nascent_glider(const Component& gun) {
  Universe u = assemble({gun});
  u.advance(physics().gun_event.t);
  const auto found = find_gliders(u);
  if (found.size() != 1) throw std::logic_error("gun has no single nascent glider");
  return found[0].position;
}

bool isolated_block_at(const Universe& u, Cell c) {
  for (int dy = -1; dy <= 2; ++dy)
    for (int dx = -1; dx <= 2; ++dx) {
      const bool inside = (dx == 0 || dx == 1) && (dy == 0 || dy == 1);
      if (u.alive(c + Cell{dx, dy}) != inside) return false;
    }
  return true;
}

}  // namespace

CollisionSpec make_collision(int nascent_distance, int lateral_offset) {
  CollisionSpec s;
  s.gun_a = gun_component({"gun_p30", {0, 0}, Orientation::transpose(), 0});
  s.gun_b = gun_component(
      {"gun_p30", {0, 0}, compose(Orientation::flip_x(), Orientation::transpose()), 0});
  const Cell ga = nascent_glider(s.gun_a);
  const Cell gb = nascent_glider(s.gun_b);
  s.gun_b.at = ga + Cell{nascent_distance, lateral_offset} - gb;
  s.nascent_distance = nascent_distance;
  s.lateral_offset = lateral_offset;
  return s;
}

Annihilation check_annihilation_alignment(const CollisionSpec& s) {
  if (s.nascent_distance % 2 != 0) return Annihilation::Misaligned;
  const int o = std::abs(s.lateral_offset);
  if (o == 1 || o == 2) return Annihilation::Clean;
  if (o == 0) return Annihilation::TwoPhaseBlock;
  return Annihilation::Misaligned;
}

Annihilation simulate_annihilation(const CollisionSpec& s) {
  constexpr int kSettle = 900;
  const Box ra = component_region(s.gun_a, 3);
  const Box rb = component_region(s.gun_b, 3);
  const Cell ga = nascent_glider(s.gun_a);
  // The streams meet about half the nascent distance below the nascent gliders.
  const std::int32_t meet_y = ga.y + std::abs(s.nascent_distance) / 2 + 4;

  Universe u = assemble({s.gun_a, s.gun_b});
  u.advance(kSettle);
  const Universe start = u;
  bool debris_clears = false, blocks = false, escaped = false, p30 = false;
  for (int k = 1; k <= 2 * kGunPeriod; ++k) {
    Universe rest = u;
    for (const auto& g : find_gliders(u)) {
      if (g.position.y > meet_y + 6) escaped = true;
      erase_glider(rest, g);
    }
    bool any = false;
    for (const Cell& c : rest.cells()) {
      if (ra.contains(c) || rb.contains(c)) continue;
      any = true;
      if (isolated_block_at(rest, c)) blocks = true;
    }
    debris_clears = debris_clears || !any;
    u.advance();
    if (k == kGunPeriod) p30 = u.same_cells(start);
  }
  const bool p60 = u.same_cells(start);
  if (escaped || !debris_clears) return Annihilation::Misaligned;
  if (p30) return Annihilation::Clean;  // transient 2x2 shapes inside the reaction are not debris
  if (!p30 && p60 && blocks) return Annihilation::TwoPhaseBlock;
  return Annihilation::Misaligned;
}

// --- gates -------------------------------------------------------------------

const char* gate_kind_name(GateKind k) {
  switch (k) {
    case GateKind::And: return "AND";
    case GateKind::Or: return "OR";
    case GateKind::Not: return "NOT";
  }
  return "?";
}

std::optional<GateKind> gate_kind_from_name(std::string_view name) {
  std::string n(name);
  for (char& c : n) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (n == "AND") return GateKind::And;
  if (n == "OR") return GateKind::Or;
  if (n == "NOT") return GateKind::Not;
  return std::nullopt;
}

int gate_arity(GateKind k) { return k == GateKind::Not ? 1 : 2; }

bool gate_truth(GateKind k, const std::vector<bool>& in) {
  switch (k) {
    case GateKind::And: return in.at(0) && in.at(1);
    case GateKind::Or: return in.at(0) || in.at(1);
    case GateKind::Not: return !in.at(0);
  }
  return false;
}

// --- blocks ----------------------------------------------------------------------

void translate(Block& b, Cell d) {
  for (Component& c : b.components) {
    c.at = c.at + d;
    if (c.stopper) c.stopper->at = c.stopper->at + d;
    if (c.control_cell) c.control_cell = *c.control_cell + d;
  }
  for (Corridor& c : b.corridors) {
    c.lane += lane_of(c.heading, d);
    c.from += along_of(c.heading, d);
    c.to += along_of(c.heading, d);
  }
  if (!b.box.empty()) {
    const PQ v = to_pq(d);
    b.box.pmin += v.p;
    b.box.pmax += v.p;
    b.box.qmin += v.q;
    b.box.qmax += v.q;
  }
  b.exit_along += along_of(b.out.heading, d);
  b.out.at = b.out.at + d;
}

void shift_time(Block& b, int generations) {
  const int g = mod30(generations);
  if (g == 0) return;
  for (Component& c : b.components)
    if (c.emission_phase) c.emission_phase = mod30(*c.emission_phase + g);
  b.out.t -= g;
}

Block mirrored(const Block& b) {
  Block m = b;
  for (Component& c : m.components) c = mirror_component(c);
  for (Corridor& c : m.corridors) c = mirror_corridor(c);
  for (GateNode& g : m.gates) g.output_heading = g.output_heading == Heading::SE ? Heading::SW : Heading::SE;
  m.box = PQBox{b.box.qmin, b.box.qmax, b.box.pmin, b.box.pmax};
  const StreamEvent exit_event = mirror_event(event_at_along(b.out, b.exit_along));
  m.out = mirror_event(b.out);
  m.exit_along = along_of(exit_event.heading, exit_event.at);
  return m;
}

Block input_block(const std::string& label, const GateGeometry& g) {
  Block b;
  const Placement gun{"gun_p30", {0, 0}, Orientation::identity(), 0};
  const StreamEvent n = gun_stream(gun);
  const std::int32_t start = along_of(Heading::SE, n.at);
  const Placement stop = eater_for("eater_stopper", n, start + g.stopper_distance);
  Component c = gun_component(gun);
  c.role = Role::Input;
  c.stopper = stop;
  c.control_cell = eater_control_cell(stop);
  c.label = label;
  b.root_input = static_cast<int>(add_component(b, std::move(c)));
  b.out = n;
  b.exit_along = eater_catch_along(stop, Heading::SE) + 10;
  add_corridor(b, corridor_of(n, start, b.exit_along));
  b.steady = gun_steady(n, b.exit_along);
  return b;
}

Block and_block(Block a, Block b, const GateGeometry& g) {
  TwoInput r = cross_two(std::move(a), std::move(b), GateKind::And, g);
  Block& out = r.out;
  const std::int32_t along_b = along_of(Heading::SE, r.cross_b_se.at);
  const std::int32_t q_after = along_of(Heading::SW, r.cross_b_sw.at);
  const Placement eat_q = eater_for("eater_stopper", r.q, q_after + g.eater_gap);
  r.node.components.push_back(add_component(out, eater_component(eat_q)));
  add_corridor(out, corridor_of(r.q, along_of(Heading::SW, r.q.at), eater_catch_along(eat_q, Heading::SW)));
  add_corridor(out, corridor_of(r.cross_b_se, out.exit_along, along_b + g.exit_gap));
  out.exit_along = along_b + g.exit_gap;
  out.steady = r.settle_b + 4 * static_cast<std::int64_t>(g.exit_gap);
  out.gates.push_back(r.node);
  out.root_gate = static_cast<int>(out.gates.size()) - 1;
  out.root_input = -1;
  return out;
}

Block or_block(Block a, Block b, const GateGeometry& g) {
  TwoInput r = cross_two(std::move(a), std::move(b), GateKind::Or, g);
  Block& out = r.out;
  const std::int32_t q_lane = lane_of(Heading::SW, r.q.at);
  const std::int32_t along_b = along_of(Heading::SE, r.cross_b_se.at);

  // B's stream, when Q is gone, runs on into an eater.
  const Placement eat_b = eater_for("eater_stopper", r.cross_b_se, along_b + g.eater_gap);
  r.node.components.push_back(add_component(out, eater_component(eat_b)));
  add_corridor(out, corridor_of(r.cross_b_se, out.exit_along, eater_catch_along(eat_b, Heading::SE)));
  r.upper.add(pq_box(component_cells(out.components.back())));

  // Parallel gun P below everything, left of Q's column.
  const PQBox fp = pq_box(placement_footprint(gun_emitting(Heading::SE, {0, 0}, 0)));
  std::int32_t qp = r.upper.qmax + g.child_gap - fp.qmin;
  std::int32_t pp = q_lane - g.lane_margin - fp.pmax;
  // P's lane is -qp; the crossing needs (q_lane - p(Q glider) ...) parity, see crossing_partner_se.
  const Cell se0 = r.q.at - physics().sw_offset;
  if (!is_even(static_cast<std::int64_t>(lane_of(Heading::SE, se0)) + qp)) ++qp;
  if (!is_even(static_cast<std::int64_t>(pp) - qp)) --pp;
  const Cell np{(pp - qp) / 2, (pp + qp) / 2};
  const Placement p0 = gun_emitting(Heading::SE, np, 0);
  const auto partner = crossing_partner_se(r.q, lane_of(Heading::SE, np));
  if (!partner) throw std::logic_error("parallel gun parity mismatch");
  const Placement pgun =
      gun_emitting(Heading::SE, np, mod30(stream_phase(gun_stream(p0)) - stream_phase(*partner)));
  const StreamEvent pe = gun_stream(pgun);
  if (!same_stream(pe, *partner)) throw std::logic_error("parallel gun alignment failed");
  r.node.components.push_back(add_component(out, gun_component(pgun)));

  const StreamEvent cross_p_sw = sw_at_crossing(*partner, r.q);
  const std::int32_t along_p = along_of(Heading::SE, partner->at);
  const std::int64_t settle_p =
      std::max(gun_steady(pe, along_p),
               r.settle_b + 4 * static_cast<std::int64_t>(along_of(Heading::SW, cross_p_sw.at) -
                                                         along_of(Heading::SW, r.cross_b_sw.at))) +
      kCrossingSettle;

  const Placement eat_q =
      eater_for("eater_stopper", r.q, along_of(Heading::SW, cross_p_sw.at) + g.eater_gap);
  r.node.components.push_back(add_component(out, eater_component(eat_q)));
  add_corridor(out, corridor_of(r.q, along_of(Heading::SW, r.q.at), eater_catch_along(eat_q, Heading::SW)));
  out.out = pe;
  out.exit_along = along_p + g.exit_gap;
  add_corridor(out, corridor_of(pe, along_of(Heading::SE, pe.at), out.exit_along));
  out.steady = settle_p + 4 * static_cast<std::int64_t>(g.exit_gap);
  out.gates.push_back(r.node);
  out.root_gate = static_cast<int>(out.gates.size()) - 1;
  out.root_input = -1;
  return out;
}

Block not_block(Block a, const GateGeometry& g) {
  if (a.out.heading != Heading::SW) throw std::invalid_argument("not_block expects a SW input");
  Block out;
  GateNode node;
  node.kind = GateKind::Not;
  const std::int32_t lane = lane_of(Heading::SW, a.out.at);
  const PQBox fp = pq_box(placement_footprint(gun_emitting(Heading::SE, {0, 0}, 0)));
  std::int32_t qg = a.box.qmax + g.child_gap - fp.qmin;
  std::int32_t pg = lane - g.lane_margin - fp.pmax;
  const Cell off = physics().sw_offset;
  if (!is_even(static_cast<std::int64_t>(lane) - pg - off.x - off.y)) --pg;
  if (!is_even(static_cast<std::int64_t>(pg) - qg)) ++qg;
  const Cell ng{(pg - qg) / 2, (pg + qg) / 2};

  const auto p0 = crossing_partner(gun_stream(gun_emitting(Heading::SE, ng, 0)), lane);
  if (!p0) throw std::logic_error("NOT gun parity mismatch");
  const Placement gun = gun_emitting(Heading::SE, ng, mod30(stream_phase(*p0) - stream_phase(a.out)));
  const StreamEvent ge = gun_stream(gun);
  const auto cross_sw = crossing_partner(ge, lane);
  if (!cross_sw || !same_stream(*cross_sw, a.out)) throw std::logic_error("NOT alignment failed");
  const auto cross_se = crossing_partner_se(*cross_sw, lane_of(Heading::SE, ge.at));
  const std::int32_t along_in = along_of(Heading::SW, cross_sw->at);
  const std::int32_t along_out = along_of(Heading::SE, cross_se->at);
  if (along_in <= a.exit_along) throw std::logic_error("NOT input exits past its crossing");

  const std::int64_t settle =
      std::max(a.steady + 4 * static_cast<std::int64_t>(along_in - a.exit_along), gun_steady(ge, along_out)) +
      kCrossingSettle;
  const Placement eat = eater_for("eater_stopper", *cross_sw, along_in + g.eater_gap);
  add_corridor(out, corridor_of(*cross_sw, a.exit_along, eater_catch_along(eat, Heading::SW)));
  link_child(node, 0, absorb(out, std::move(a)));
  node.components.push_back(add_component(out, gun_component(gun)));
  node.components.push_back(add_component(out, eater_component(eat)));

  out.out = ge;
  out.exit_along = along_out + g.exit_gap;
  add_corridor(out, corridor_of(ge, along_of(Heading::SE, ge.at), out.exit_along));
  out.steady = settle + 4 * static_cast<std::int64_t>(g.exit_gap);
  out.gates.push_back(node);
  out.root_gate = static_cast<int>(out.gates.size()) - 1;
  return out;
}

Detector attach_detector(Block& b, const GateGeometry& g) {
  const std::int32_t catch_along = b.exit_along + g.detector_gap;
  const Placement det = eater_for("eater_detector", b.out, catch_along);
  Component c;
  c.role = Role::Output;
  c.pattern_name = det.pattern;
  c.at = det.at;
  c.orientation = det.orientation;
  c.control_cell = eater_control_cell(det);
  add_corridor(b, corridor_of(b.out, b.exit_along, catch_along));
  add_component(b, c);
  // The stream is periodic at the exit from b.steady on; the probe cell fires
  // eight generations after a glider reaches the catch point.
  return {c, b.steady + 4 * static_cast<std::int64_t>(g.detector_gap) + 12};
}

GateTemplate layout_gate(GateKind kind, const GateGeometry& g) {
  Block blk;
  switch (kind) {
    case GateKind::And: blk = and_block(input_block("A", g), input_block("B", g), g); break;
    case GateKind::Or: blk = or_block(input_block("A", g), input_block("B", g), g); break;
    case GateKind::Not: blk = not_block(mirrored(input_block("A", g)), g); break;
  }
  const Detector det = attach_detector(blk, g);
  GateTemplate t;
  t.kind = kind;
  t.geometry = g;
  t.components = blk.components;
  t.corridors = blk.corridors;
  for (const Component& c : t.components) {
    if (c.role != Role::Input) continue;
    t.input_cells.emplace_back(c.label, *c.control_cell);
    t.input_headings.push_back(c.orientation == Orientation::identity() ? Heading::SE : Heading::SW);
  }
  std::sort(t.input_cells.begin(), t.input_cells.end());
  t.output_cell = *det.output.control_cell;
  t.output_heading = blk.out.heading;
  t.probe_generation = det.probe_generation;
  return t;
}

namespace {

bool in_allowed_region(Cell c, const std::vector<Box>& regions, const std::vector<Corridor>& corridors) {
  for (const Box& b : regions)
    if (b.contains(c)) return true;
  for (const Corridor& k : corridors)
    if (corridor_contains(k, c, 1)) return true;
  return false;
}

}  // namespace

GateRun run_gate(const GateTemplate& t, const std::vector<bool>& inputs) {
  if (inputs.size() != t.input_cells.size()) throw std::invalid_argument("wrong number of gate inputs");
  Universe u = assemble(t.components);
  std::vector<const Component*> active, idle;
  const Component* output = nullptr;
  for (const Component& c : t.components) {
    if (c.role == Role::Output) output = &c;
    if (c.role != Role::Input) continue;
    const auto slot = std::find_if(t.input_cells.begin(), t.input_cells.end(),
                                   [&](const auto& e) { return e.first == c.label; }) -
                      t.input_cells.begin();
    if (inputs[static_cast<std::size_t>(slot)]) {
      u = activate_input(u, c);
      active.push_back(&c);
    } else {
      idle.push_back(&c);
    }
  }
  if (!output) throw std::logic_error("gate has no output component");

  GateRun r;
  u.advance(stopper_death_generations());
  for (const Component* c : active)
    for (const Cell& cell : placement_footprint(*c->stopper))
      if (u.alive(cell)) r.stoppers_ok = false;
  u.advance(std::max<std::int64_t>(0, t.probe_generation - u.generation()));

  std::vector<bool> idle_seen(idle.size(), false);
  for (int k = 0; k < t.probe_window; ++k) {
    if (u.alive(*output->control_cell)) r.output = true;
    for (std::size_t i = 0; i < idle.size(); ++i) {
      const auto cells = placement_footprint(*idle[i]->stopper);
      if (std::all_of(cells.begin(), cells.end(), [&](const Cell& c) { return u.alive(c); }))
        idle_seen[i] = true;
    }
    u.advance();
  }
  for (bool s : idle_seen) r.stoppers_ok = r.stoppers_ok && s;

  std::vector<Box> regions;
  for (const Component& c : t.components) regions.push_back(component_region(c, 3));
  r.clean = true;
  for (const Cell& c : u.cells()) {
    if (!in_allowed_region(c, regions, t.corridors)) {
      r.clean = false;
      break;
    }
  }
  return r;
}

bool certify(GateTemplate& t) {
  const int n = gate_arity(t.kind);
  t.certificate.clear();
  bool ok = true;
  for (int m = 0; m < (1 << n); ++m) {
    std::vector<bool> in(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) in[static_cast<std::size_t>(i)] = (m >> (n - 1 - i)) & 1;
    const GateRun r = run_gate(t, in);
    t.certificate.push_back({in, r.output, r.clean && r.stoppers_ok});
    ok = ok && r.output == gate_truth(t.kind, in) && r.clean && r.stoppers_ok;
  }
  return ok;
}

CalibrationSearch default_search(GateKind, int width) {
  CalibrationSearch s;
  const auto range = [&](int seed) { return ParamRange{seed, seed + width - 1}; };
  s.stopper_distance = range(12);
  s.gun_clearance = range(2);
  s.eater_gap = range(8);
  s.exit_gap = range(6);
  s.detector_gap = range(8);
  return s;
}

GateTemplate calibrate(GateKind kind, const CalibrationSearch& s) {
  for (const ParamRange* r : {&s.stopper_distance, &s.gun_clearance, &s.eater_gap, &s.exit_gap, &s.detector_gap})
    if (r->empty() || r->hi - r->lo >= 64) throw CalibrationError("no-valid-placement");
  GateGeometry g;
  g.child_gap = s.child_gap;
  g.lane_margin = s.lane_margin;
  for (g.stopper_distance = s.stopper_distance.lo; g.stopper_distance <= s.stopper_distance.hi; ++g.stopper_distance)
    for (g.gun_clearance = s.gun_clearance.lo; g.gun_clearance <= s.gun_clearance.hi; ++g.gun_clearance)
      for (g.eater_gap = s.eater_gap.lo; g.eater_gap <= s.eater_gap.hi; ++g.eater_gap)
        for (g.exit_gap = s.exit_gap.lo; g.exit_gap <= s.exit_gap.hi; ++g.exit_gap)
          for (g.detector_gap = s.detector_gap.lo; g.detector_gap <= s.detector_gap.hi; ++g.detector_gap) {
            GateTemplate t;
            try {
              t = layout_gate(kind, g);
            } catch (const OverlapError&) {
              continue;
            } catch (const std::logic_error&) {
              continue;
            }
            if (certify(t)) return t;
          }
  throw CalibrationError("no-valid-placement");
}

// --- fixtures --------------------------------------------------------------------

namespace {

std::string cell_text(Cell c) { return std::to_string(c.x) + "," + std::to_string(c.y); }

Cell parse_cell(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw CalibrationError("bad cell '" + s + "' in gate fixture");
  return {std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
}

std::string lower_name(GateKind k) {
  std::string n = gate_kind_name(k);
  for (char& c : n) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return n;
}

std::vector<Cell> template_cells(const GateTemplate& t) { return assemble(t.components).cells(); }

}  // namespace

std::filesystem::path gate_fixture_dir() { return fixture_dir() / "gates"; }

void save_gate_fixture(const GateTemplate& t, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const std::string name = lower_name(t.kind);
  const auto cells = template_cells(t);
  Pattern p = make_pattern(name, cells);
  write_rle_file(dir / (name + ".rle"), p);

  Cell origin{INT32_MAX, INT32_MAX};
  for (const Cell& c : cells) origin = {std::min(origin.x, c.x), std::min(origin.y, c.y)};

  std::ofstream out(dir / (name + ".meta"));
  if (!out) throw std::runtime_error("cannot write gate fixture in " + dir.string());
  out << "kind = " << gate_kind_name(t.kind) << '\n';
  out << "origin = " << cell_text(origin) << '\n';
  for (const auto& [slot, cell] : t.input_cells) out << "input_cell." << slot << " = " << cell_text(cell) << '\n';
  out << "output_cell = " << cell_text(t.output_cell) << '\n';
  out << "output_heading = " << heading_name(t.output_heading) << '\n';
  out << "probe_generation = " << t.probe_generation << '\n';
  out << "probe_window = " << t.probe_window << '\n';
  const GateGeometry& g = t.geometry;
  out << "stopper_distance = " << g.stopper_distance << '\n';
  out << "gun_clearance = " << g.gun_clearance << '\n';
  out << "child_gap = " << g.child_gap << '\n';
  out << "lane_margin = " << g.lane_margin << '\n';
  out << "eater_gap = " << g.eater_gap << '\n';
  out << "exit_gap = " << g.exit_gap << '\n';
  out << "detector_gap = " << g.detector_gap << '\n';
  for (const CertificateRow& r : t.certificate) {
    std::string in;
    for (bool b : r.inputs) in += b ? '1' : '0';
    out << "certificate." << in << " = " << (r.output ? 1 : 0) << '\n';
  }
  if (!out) throw std::runtime_error("write failed in " + dir.string());
}

GateTemplate load_gate_fixture(GateKind kind, const std::filesystem::path& dir) {
  const std::string name = lower_name(kind);
  std::ifstream in(dir / (name + ".meta"));
  if (!in) throw CalibrationError("missing gate fixture " + (dir / (name + ".meta")).string());
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw CalibrationError("malformed line in " + name + ".meta: " + line);
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t\r"));
      s.erase(s.find_last_not_of(" \t\r") + 1);
      return s;
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  auto get = [&](const std::string& k) {
    const auto it = kv.find(k);
    if (it == kv.end()) throw CalibrationError(name + ".meta lacks '" + k + "'");
    return it->second;
  };
  if (get("kind") != gate_kind_name(kind)) throw CalibrationError(name + ".meta has the wrong kind");

  GateGeometry g;
  g.stopper_distance = std::stoi(get("stopper_distance"));
  g.gun_clearance = std::stoi(get("gun_clearance"));
  g.child_gap = std::stoi(get("child_gap"));
  g.lane_margin = std::stoi(get("lane_margin"));
  g.eater_gap = std::stoi(get("eater_gap"));
  g.exit_gap = std::stoi(get("exit_gap"));
  g.detector_gap = std::stoi(get("detector_gap"));

  GateTemplate t = layout_gate(kind, g);
  t.probe_window = std::stoi(get("probe_window"));

  // The fixture is the ground truth: the re-derived layout must match it cell for cell.
  const Pattern stored = read_rle_file(dir / (name + ".rle"));
  const Cell origin = parse_cell(get("origin"));
  std::vector<Cell> expect;
  for (const Cell& c : stored.cells) expect.push_back(c + origin);
  std::sort(expect.begin(), expect.end());
  if (template_cells(t) != expect) throw CalibrationError(name + " fixture cells do not match its geometry");
  if (cell_text(t.output_cell) != get("output_cell") ||
      std::to_string(t.probe_generation) != get("probe_generation") ||
      heading_name(t.output_heading) != get("output_heading"))
    throw CalibrationError(name + " fixture metadata does not match its geometry");
  for (const auto& [slot, cell] : t.input_cells)
    if (cell_text(cell) != get("input_cell." + slot))
      throw CalibrationError(name + " fixture input cell mismatch for " + slot);
  return t;
}

namespace {

const GateTemplate& shipped(GateKind kind) {
  static std::mutex mutex;
  static std::map<GateKind, GateTemplate> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(kind); it != cache.end()) return it->second;
  GateTemplate t = load_gate_fixture(kind, gate_fixture_dir());
  if (!certify(t)) throw CalibrationError(std::string(gate_kind_name(kind)) + " fixture fails its truth table");
  return cache.emplace(kind, std::move(t)).first->second;
}

}  // namespace

const GateTemplate& build_and() { return shipped(GateKind::And); }
const GateTemplate& build_or() { return shipped(GateKind::Or); }
const GateTemplate& build_not() { return shipped(GateKind::Not); }
const GateTemplate& shipped_gate(GateKind kind) { return shipped(kind); }

}  // namespace lifelogic
