#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "lifelogic/circuits.hpp"
#include "oracle.hpp"

using namespace lifelogic;

namespace {

void check_truth_table(const std::string& text, XorForm form = XorForm::ConjunctiveNegated) {
  const ExprPtr e = parse_expression(text);
  const Circuit c = compile(e, form);
  for (const auto& a : oracle::all_assignments(variables(e))) {
    INFO(text << " assignment " << a.size());
    CHECK(evaluate(c, a) == oracle::interpret(*e, a));
  }
}

Assignment bits(unsigned x, unsigned y) {
  return {{"x0", (x & 1u) != 0}, {"x1", (x & 2u) != 0}, {"y0", (y & 1u) != 0}, {"y1", (y & 2u) != 0}};
}

}  // namespace

TEST_SUITE("circuits") {
  TEST_CASE("single gates") {
    check_truth_table("A & B");
    check_truth_table("A | B");
    check_truth_table("!A");
  }

  TEST_CASE("composed circuits") {
    check_truth_table("A & B & C");
    check_truth_table("!A & B");
    const Circuit c = compile(parse_expression("!A & B"));
    CHECK(evaluate(c, {{"A", false}, {"B", true}}));
    CHECK(evaluate(compile(parse_expression("A & B & C")), {{"A", true}, {"B", true}, {"C", true}}));
  }

  TEST_CASE("identity circuit") {
    const Circuit c = compile(parse_expression("A"));
    CHECK(c.gates.empty());
    CHECK(c.sink == -1);
    CHECK(c.inputs.size() == 1);
    CHECK(c.gun_count == 1);
    CHECK(evaluate(c, {{"A", true}}));
    CHECK_FALSE(evaluate(c, {{"A", false}}));
  }

  TEST_CASE("gun counts") {
    CHECK(compile(parse_expression("A")).gun_count == 1);
    CHECK(compile(parse_expression("!A")).gun_count == 2);
    CHECK(compile(parse_expression("A & B")).gun_count == 3);
    CHECK(compile(parse_expression("A | B")).gun_count == 4);
    CHECK(compile(parse_expression("x ^ y")).gun_count == 9);
    CHECK(compile(parse_expression("x ^ y"), XorForm::Disjunctive).gun_count == 10);
  }

  TEST_CASE("both XOR forms compute XOR") {
    check_truth_table("x ^ y");
    check_truth_table("x ^ y", XorForm::Disjunctive);
  }

  TEST_CASE("repeated variables get one input each") {
    const Circuit c = compile(parse_expression("A & !A"));
    CHECK(c.inputs.size() == 2);
    CHECK_FALSE(evaluate(c, {{"A", true}}));
    CHECK_FALSE(evaluate(c, {{"A", false}}));
  }

  TEST_CASE("wiring forms a tree into one sink") {
    const Circuit c = compile(parse_expression("(A | B) & !(C & D)"));
    REQUIRE(c.sink >= 0);
    std::vector<int> consumers(c.gates.size(), 0);
    for (const Wire& w : c.wiring) {
      CHECK(w.from != c.sink);
      ++consumers[static_cast<std::size_t>(w.from)];
    }
    for (std::size_t g = 0; g < c.gates.size(); ++g)
      CHECK(consumers[g] == (static_cast<int>(g) == c.sink ? 0 : 1));
    CHECK(c.inputs.size() == 4);
    // Interior gates keep no detector; only the circuit output has one.
    for (const PlacedGate& g : c.gates)
      for (const Component& comp : g.components) CHECK(comp.role != Role::Output);
  }

  TEST_CASE("output stream heads SE") {
    for (const char* text : {"A", "!A", "A & B", "!(A | B)", "x ^ y"}) {
      const Circuit c = compile(parse_expression(text));
      CHECK(c.output_heading == Heading::SE);
      if (c.sink >= 0) CHECK(c.gates[static_cast<std::size_t>(c.sink)].output_heading == Heading::SE);
    }
  }

  TEST_CASE("missing variable") {
    const Circuit c = compile(parse_expression("A & B"));
    CHECK_THROWS_AS(evaluate(c, {{"A", true}}), MissingVariableError);
    CHECK_THROWS_AS(prepare(c, {{"B", true}}), MissingVariableError);
  }

  TEST_CASE("compilation is deterministic") {
    const Circuit a = compile(parse_expression("(A | B) & !C"));
    const Circuit b = compile(parse_expression("(A | B) & !C"));
    CHECK(prepare(a, {{"A", true}, {"B", false}, {"C", true}}) ==
          prepare(b, {{"A", true}, {"B", false}, {"C", true}}));
    CHECK(a.probe_generation == b.probe_generation);
  }

  TEST_CASE("translation keeps the result") {
    Circuit c = compile(parse_expression("A & !B"));
    translate(c, {1000, -333});
    CHECK(evaluate(c, {{"A", true}, {"B", false}}));
    CHECK_FALSE(evaluate(c, {{"A", true}, {"B", true}}));
  }

  TEST_CASE("random expressions match the interpreter") {
    std::mt19937 rng(2024);
    for (int i = 0; i < 25; ++i) {
      const ExprPtr e = oracle::random_expr(rng, 3);
      const Circuit c = compile(e);
      for (const auto& a : oracle::all_assignments(variables(e))) {
        INFO(to_string(e));
        REQUIRE(evaluate(c, a) == oracle::interpret(*e, a));
      }
    }
  }

  TEST_CASE("evaluation agrees with a plain tile-engine run") {
    const ExprPtr e = parse_expression("(A | !B) & C");
    const Circuit c = compile(e);
    for (const auto& a : oracle::all_assignments(variables(e))) {
      Universe u = prepare(c, a);
      u.advance(c.probe_generation);
      bool seen = false;
      for (int g = 0; g < c.probe_window; ++g) {
        seen = seen || u.alive(c.output_cell());
        u.advance();
      }
      CHECK(seen == evaluate(c, a));
    }
  }

  TEST_CASE("response estimate") {
    const ResponseEstimate v = estimate_response(parse_expression("A"));
    CHECK(v.n_not == 0);
    CHECK(v.n_and == 0);
    CHECK(v.n_or == 0);
    CHECK(v.weighted == 0);
    const ResponseEstimate x = estimate_response(parse_expression("x ^ y"));
    CHECK(x.gun_total == 9);
    CHECK(x.weighted == 1 + 2 * 2 + 3 * 1);
    CHECK(x.d == doctest::Approx(30.0 / 4.0));
    CHECK(estimate_response(parse_expression("x ^ y"), XorForm::Disjunctive).gun_total == 10);
  }

  TEST_CASE("adder equations") {
    for (unsigned x = 0; x < 4; ++x)
      for (unsigned y = 0; y < 4; ++y) {
        const unsigned s = x + y;
        for (int bit = 0; bit < 3; ++bit)
          CHECK(boolean_eval(adder_equation(bit), bits(x, y)) == (((s >> bit) & 1u) != 0));
      }
    CHECK(Adder::operands(2, 1) == bits(2, 1));
  }

  TEST_CASE("adder spot cases") {
    const Adder& adder = build_adder();
    REQUIRE(adder.lattice.circuits.size() == 3);
    CHECK_FALSE(evaluate(adder.lattice.circuits[0], bits(0b10, 0b10)));
    CHECK(evaluate(adder.lattice.circuits[1], bits(0b10, 0b01)));
    CHECK(add(adder, 0b11, 0b11) == 0b110);
    CHECK(add(adder, 0, 0) == 0);
  }

  TEST_CASE("adder: all pairs, shared lattice equals isolated circuits") {
    const Adder& adder = build_adder();
    for (unsigned x = 0; x < 4; ++x)
      for (unsigned y = 0; y < 4; ++y) {
        const Assignment a = Adder::operands(x, y);
        const std::vector<bool> shared = evaluate(adder.lattice, a);
        unsigned sum = 0;
        for (int bit = 0; bit < 3; ++bit) {
          const bool alone = evaluate(adder.lattice.circuits[static_cast<std::size_t>(bit)], a);
          CHECK(alone == shared[static_cast<std::size_t>(bit)]);
          if (shared[static_cast<std::size_t>(bit)]) sum |= 1u << bit;
        }
        CHECK(sum == x + y);
      }
  }

  TEST_CASE("lattice regions are disjoint") {
    const Adder& adder = build_adder();
    std::vector<Box> boxes;
    for (const Circuit& c : adder.lattice.circuits) {
      Box b{{INT32_MAX, INT32_MAX}, {INT32_MIN, INT32_MIN}};
      for (const Component& comp : c.components())
        for (const Cell& cell : component_cells(comp)) {
          b.min.x = std::min(b.min.x, cell.x);
          b.min.y = std::min(b.min.y, cell.y);
          b.max.x = std::max(b.max.x, cell.x);
          b.max.y = std::max(b.max.y, cell.y);
        }
      boxes.push_back(b);
    }
    for (std::size_t i = 0; i < boxes.size(); ++i)
      for (std::size_t j = i + 1; j < boxes.size(); ++j)
        CHECK((boxes[i].max.x < boxes[j].min.x || boxes[j].max.x < boxes[i].min.x));
  }

  TEST_CASE("circuit export") {
    const auto dir = std::filesystem::temp_directory_path() / "lifelogic_circuit_export";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    const Circuit c = compile(parse_expression("A & B"));
    save_circuit(c, dir / "and");
    const Pattern p = read_rle_file(dir / "and.rle");
    CHECK(p.cells.size() == assemble(c.components()).population());
    std::ifstream meta(dir / "and.meta");
    const std::string text((std::istreambuf_iterator<char>(meta)), std::istreambuf_iterator<char>());
    CHECK(text.find("probe_generation") != std::string::npos);
    CHECK(text.find("output") != std::string::npos);
    std::filesystem::remove_all(dir);
  }
}
