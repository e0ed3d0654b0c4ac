#pragma once

// Compiling Boolean expressions into glider circuits and evaluating them.

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lifelogic/components.hpp"
#include "lifelogic/expr.hpp"

namespace lifelogic {

struct PlacedGate {
  GateKind kind = GateKind::And;
  std::vector<Component> components;  // gate-owned guns and eaters
  Heading output_heading = Heading::SE;
};

/// Output of gate `from` feeds input slot `slot` of gate `to`.
struct Wire {
  int from = 0;
  int to = 0;
  int slot = 0;
};

struct InputInstance {
  std::string variable;
  Component component;
  int gate = -1;  // consuming gate, -1 when the input feeds the output directly
  int slot = 0;
};

struct Circuit {
  std::string expression;  // binarized, as compiled
  std::vector<PlacedGate> gates;
  std::vector<Wire> wiring;
  int sink = -1;  // gate feeding the output, -1 for a bare variable
  std::vector<InputInstance> inputs;
  Component output;
  Heading output_heading = Heading::SE;
  std::int64_t probe_generation = 0;
  int probe_window = kGunPeriod;
  int gun_count = 0;
  std::vector<Corridor> corridors;

  /// Every component (inputs, gate parts, output).
  std::vector<Component> components() const;
  Cell output_cell() const { return *output.control_cell; }
};

class CompileError : public std::runtime_error {
 public:
  enum class Kind { PlacementConflict, AlignmentFailure };
  CompileError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Binarizes (with the given XOR expansion), orients for a SE output, and lays
/// out one gate per operator and one input component per variable instance.
Circuit compile(const ExprPtr& e, XorForm form = XorForm::ConjunctiveNegated);

/// Generation-0 universe of the circuit with the assignment's inputs applied.
Universe prepare(const Circuit& c, const Assignment& a);
/// Simulates to probe_generation + probe_window and reads the output cell.
bool evaluate(const Circuit& c, const Assignment& a);

/// Several circuits sharing one universe.
struct Lattice {
  std::vector<Circuit> circuits;
};
/// Places circuits left to right with disjoint regions.
Lattice share_lattice(std::vector<Circuit> circuits);
void translate(Circuit& c, Cell d);
/// One simulation, one result per circuit.
std::vector<bool> evaluate(const Lattice& l, const Assignment& a);

struct Adder {
  Lattice lattice;  // circuits b0, b1, b2 in that order
  static Assignment operands(unsigned x, unsigned y);
};
/// The three sum-bit equations of the 2-bit adder on one lattice.
const Adder& build_adder();
ExprPtr adder_equation(int bit);
/// b2 b1 b0 as an integer, from one shared simulation.
unsigned add(const Adder& adder, unsigned x, unsigned y);

struct ResponseEstimate {
  double d = 0;  // cells between consecutive gliders of a stream
  int n_not = 0;
  int n_and = 0;
  int n_or = 0;
  int weighted = 0;  // n + 2a + 3o
  int b = 0;         // cells from the sink crossing to the output catch point
  int gun_total = 0;
  std::int64_t probe_generation = 0;
};
ResponseEstimate estimate_response(const ExprPtr& e, XorForm form = XorForm::ConjunctiveNegated);

/// Circuit export: <stem>.rle (generation 0, no inputs applied) and <stem>.meta.
void save_circuit(const Circuit& c, const std::filesystem::path& stem);

}  // namespace lifelogic
