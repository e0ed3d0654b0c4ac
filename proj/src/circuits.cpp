#include "lifelogic/circuits.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_map>

#include "lifelogic/hashlife.hpp"

namespace lifelogic {

namespace {

const GateGeometry& geometry_for(GateKind k) { return shipped_gate(k).geometry; }

GateKind kind_of(Expr::Op op) {
  switch (op) {
    case Expr::Op::And: return GateKind::And;
    case Expr::Op::Or: return GateKind::Or;
    case Expr::Op::Not: return GateKind::Not;
    default: throw std::invalid_argument("not a gate operator");
  }
}

Heading opposite(Heading h) { return h == Heading::SE ? Heading::SW : Heading::SE; }

Oriented flip_all(const Oriented& o) {
  Oriented f{o.expr, opposite(o.heading), {}};
  for (const auto& c : o.children) f.children.push_back(flip_all(c));
  return f;
}

/// Layout for `o`, whose output leaves on o.heading. Inputs take their stopper
/// spacing from the gate consuming them.
Block build(const Oriented& o, const GateGeometry& parent) {
  if (o.heading == Heading::SW) return mirrored(build(flip_all(o), parent));
  if (o.heading != Heading::SE) throw std::invalid_argument("circuits route SE and SW streams only");
  const Expr& e = *o.expr;
  if (e.op == Expr::Op::Var) return input_block(e.name, parent);
  const GateKind kind = kind_of(e.op);
  const GateGeometry& g = geometry_for(kind);
  Block b;
  try {
    switch (kind) {
      case GateKind::Not: b = not_block(build(o.children.at(0), g), g); break;
      case GateKind::And: b = and_block(build(o.children.at(0), g), build(o.children.at(1), g), g); break;
      case GateKind::Or: b = or_block(build(o.children.at(0), g), build(o.children.at(1), g), g); break;
    }
  } catch (const std::logic_error& err) {
    throw CompileError(CompileError::Kind::AlignmentFailure, err.what());
  }
  return b;
}

std::uint64_t cell_key(Cell c) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.x)) << 32) | static_cast<std::uint32_t>(c.y);
}

/// Distinct components must keep at least two dead cells between them.
void check_conflicts(const std::vector<Component>& comps) {
  std::unordered_map<std::uint64_t, std::size_t> owner;
  std::vector<std::vector<Cell>> cells;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    cells.push_back(component_cells(comps[i]));
    for (const Cell& c : cells.back()) owner.emplace(cell_key(c), i);
  }
  for (std::size_t i = 0; i < comps.size(); ++i)
    for (const Cell& c : cells[i])
      for (int dy = -2; dy <= 2; ++dy)
        for (int dx = -2; dx <= 2; ++dx) {
          const auto it = owner.find(cell_key(c + Cell{dx, dy}));
          if (it != owner.end() && it->second != i)
            throw CompileError(CompileError::Kind::PlacementConflict,
                               "components " + std::to_string(i) + " and " + std::to_string(it->second) +
                                   " overlap near (" + std::to_string(c.x) + "," + std::to_string(c.y) + ")");
        }
}

Box xy_extent(const Circuit& c) {
  Box b{{INT32_MAX, INT32_MAX}, {INT32_MIN, INT32_MIN}};
  auto add = [&](Cell p) {
    b.min = {std::min(b.min.x, p.x), std::min(b.min.y, p.y)};
    b.max = {std::max(b.max.x, p.x), std::max(b.max.y, p.y)};
  };
  for (const Component& comp : c.components()) {
    const Box r = component_region(comp);
    add(r.min);
    add(r.max);
  }
  for (const Corridor& k : c.corridors) {
    for (std::int32_t a : {k.from, k.to}) {
      const Cell v = heading_vector(k.heading);
      // Any cell on the lane with the given along value.
      const Cell at = v.x > 0 ? Cell{a, a - k.lane} : Cell{-a, k.lane - a};
      add(at);
      add(at + Cell{2, 2});
    }
  }
  return b;
}

}  // namespace

std::vector<Component> Circuit::components() const {
  std::vector<Component> all;
  for (const InputInstance& in : inputs) all.push_back(in.component);
  for (const PlacedGate& g : gates) all.insert(all.end(), g.components.begin(), g.components.end());
  all.push_back(output);
  return all;
}

Circuit compile(const ExprPtr& e, XorForm form) {
  const ExprPtr bin = binarize(e, form);
  const Oriented tree = orient(bin, Heading::SE);
  const GateGeometry& root_g =
      bin->op == Expr::Op::Var ? geometry_for(GateKind::And) : geometry_for(kind_of(bin->op));
  Block blk = build(tree, root_g);
  const Detector det = attach_detector(blk, root_g);

  Circuit c;
  c.expression = to_string(bin);
  c.output = det.output;
  c.output_heading = blk.out.heading;
  c.probe_generation = det.probe_generation;
  c.gun_count = blk.guns;
  c.corridors = blk.corridors;
  c.sink = blk.root_gate;
  for (std::size_t gi = 0; gi < blk.gates.size(); ++gi) {
    const GateNode& n = blk.gates[gi];
    PlacedGate pg{n.kind, {}, n.output_heading};
    for (std::size_t ci : n.components) pg.components.push_back(blk.components[ci]);
    c.gates.push_back(std::move(pg));
    for (int s = 0; s < 2; ++s) {
      if (n.child_gate[s] >= 0) c.wiring.push_back({n.child_gate[s], static_cast<int>(gi), s});
      if (n.child_input[s] >= 0) {
        const Component& in = blk.components[static_cast<std::size_t>(n.child_input[s])];
        c.inputs.push_back({in.label, in, static_cast<int>(gi), s});
      }
    }
  }
  if (blk.root_gate < 0) {
    const Component& in = blk.components[static_cast<std::size_t>(blk.root_input)];
    c.inputs.push_back({in.label, in, -1, 0});
  }
  check_conflicts(c.components());
  return c;
}

Universe prepare(const Circuit& c, const Assignment& a) {
  Universe u = assemble(c.components());
  for (const InputInstance& in : c.inputs) {
    const auto it = a.find(in.variable);
    if (it == a.end()) throw MissingVariableError(in.variable);
    if (it->second) u.set(*in.component.control_cell);
  }
  return u;
}

namespace {

// Circuits of one compile share most of their structure; keeping the memo
// tables between evaluations is what makes truth-table sweeps cheap.
HashLife& shared_engine() {
  thread_local HashLife engine;
  return engine;
}

}  // namespace

bool evaluate(const Circuit& c, const Assignment& a) {
  HashLife& h = shared_engine();
  h.load(prepare(c, a));
  h.advance(c.probe_generation);
  for (int k = 0; k < c.probe_window; ++k) {
    if (h.alive(c.output_cell())) return true;
    h.advance(1);
  }
  return false;
}

void translate(Circuit& c, Cell d) {
  auto move = [&](Component& comp) {
    comp.at = comp.at + d;
    if (comp.stopper) comp.stopper->at = comp.stopper->at + d;
    if (comp.control_cell) comp.control_cell = *comp.control_cell + d;
  };
  for (InputInstance& in : c.inputs) move(in.component);
  for (PlacedGate& g : c.gates)
    for (Component& comp : g.components) move(comp);
  move(c.output);
  for (Corridor& k : c.corridors) {
    k.lane += lane_of(k.heading, d);
    k.from += along_of(k.heading, d);
    k.to += along_of(k.heading, d);
  }
}

Lattice share_lattice(std::vector<Circuit> circuits) {
  constexpr std::int32_t kGap = 48;
  Lattice l;
  std::int32_t next_x = 0;
  for (Circuit& c : circuits) {
    const Box b = xy_extent(c);
    translate(c, {next_x - b.min.x, -b.min.y});
    next_x += b.width() + kGap;
    l.circuits.push_back(std::move(c));
  }
  return l;
}

std::vector<bool> evaluate(const Lattice& l, const Assignment& a) {
  Universe u;
  std::int64_t begin = INT64_MAX, end = 0;
  for (const Circuit& c : l.circuits) {
    u.merge(prepare(c, a));
    begin = std::min(begin, c.probe_generation);
    end = std::max(end, c.probe_generation + c.probe_window);
  }
  std::vector<bool> out(l.circuits.size(), false);
  if (l.circuits.empty()) return out;
  HashLife& h = shared_engine();
  h.load(u);
  h.advance(begin);
  for (std::int64_t g = begin; g < end; ++g) {
    for (std::size_t i = 0; i < l.circuits.size(); ++i) {
      const Circuit& c = l.circuits[i];
      if (g >= c.probe_generation && g < c.probe_generation + c.probe_window && h.alive(c.output_cell()))
        out[i] = true;
    }
    h.advance(1);
  }
  return out;
}

ExprPtr adder_equation(int bit) {
  switch (bit) {
    case 0: return parse_expression("x0 ^ y0");
    case 1: return parse_expression("y1 ^ x1 ^ (x0 & y0)");
    case 2: return parse_expression("(x1 & y1) | ((x1 ^ y1) & (x0 & y0))");
    default: throw std::out_of_range("the adder has sum bits 0..2");
  }
}

Assignment Adder::operands(unsigned x, unsigned y) {
  if (x > 3 || y > 3) throw std::out_of_range("adder operands are 2-bit");
  return {{"x0", (x & 1u) != 0},
          {"x1", (x & 2u) != 0},
          {"y0", (y & 1u) != 0},
          {"y1", (y & 2u) != 0}};
}

const Adder& build_adder() {
  static const Adder adder = [] {
    std::vector<Circuit> cs;
    for (int bit = 0; bit < 3; ++bit) cs.push_back(compile(adder_equation(bit)));
    return Adder{share_lattice(std::move(cs))};
  }();
  return adder;
}

unsigned add(const Adder& adder, unsigned x, unsigned y) {
  const auto bits = evaluate(adder.lattice, Adder::operands(x, y));
  unsigned v = 0;
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) v |= 1u << i;
  return v;
}

ResponseEstimate estimate_response(const ExprPtr& e, XorForm form) {
  const ExprPtr bin = binarize(e, form);
  const OperatorCounts k = count_operators(bin);
  const Circuit c = compile(bin, form);
  ResponseEstimate r;
  r.d = kGunPeriod / 4.0;
  r.n_not = k.n_not;
  r.n_and = k.n_and;
  r.n_or = k.n_or;
  r.weighted = k.n_not + 2 * k.n_and + 3 * k.n_or;
  const GateGeometry& g =
      bin->op == Expr::Op::Var ? geometry_for(GateKind::And) : geometry_for(kind_of(bin->op));
  r.b = g.exit_gap + g.detector_gap;
  r.gun_total = c.gun_count;
  r.probe_generation = c.probe_generation;
  return r;
}

void save_circuit(const Circuit& c, const std::filesystem::path& stem) {
  const auto cells = assemble(c.components()).cells();
  Pattern p = make_pattern(stem.filename().string(), cells);
  auto rle = stem;
  rle += ".rle";
  write_rle_file(rle, p);
  Cell origin{INT32_MAX, INT32_MAX};
  for (const Cell& x : cells) origin = {std::min(origin.x, x.x), std::min(origin.y, x.y)};
  auto meta_path = stem;
  meta_path += ".meta";
  std::ofstream meta(meta_path);
  if (!meta) throw std::runtime_error("cannot write " + meta_path.string());
  meta << "expression = " << c.expression << '\n';
  meta << "origin = " << origin.x << ',' << origin.y << '\n';
  for (std::size_t i = 0; i < c.inputs.size(); ++i) {
    const Cell x = *c.inputs[i].component.control_cell;
    meta << "input_cell." << i << " = " << c.inputs[i].variable << ':' << x.x << ',' << x.y << '\n';
  }
  meta << "output_cell = " << c.output_cell().x << ',' << c.output_cell().y << '\n';
  meta << "output_heading = " << heading_name(c.output_heading) << '\n';
  meta << "probe_generation = " << c.probe_generation << '\n';
  meta << "probe_window = " << c.probe_window << '\n';
  meta << "gun_count = " << c.gun_count << '\n';
  if (!meta) throw std::runtime_error("write failed: " + meta_path.string());
}

}  // namespace lifelogic
