#include <string>
#include <vector>

#include "doctest.h"
#include "lifelogic/lifelogic.h"

TEST_SUITE("capi") {
  TEST_CASE("universe lifecycle") {
    ll_universe* u = nullptr;
    REQUIRE(ll_universe_new(&u) == LL_OK);
    int has = 1;
    ll_box box{};
    CHECK(ll_universe_bbox(u, &box, &has) == LL_OK);
    CHECK(has == 0);
    for (int x = -1; x <= 1; ++x) CHECK(ll_universe_set(u, x, 0, 1) == LL_OK);
    CHECK(ll_universe_step(u, 1) == LL_OK);
    int alive = 0;
    CHECK(ll_universe_alive(u, 0, -1, &alive) == LL_OK);
    CHECK(alive == 1);
    CHECK(ll_universe_alive(u, -1, 0, &alive) == LL_OK);
    CHECK(alive == 0);
    int64_t gen = 0;
    uint64_t pop = 0;
    CHECK(ll_universe_generation(u, &gen) == LL_OK);
    CHECK(ll_universe_population(u, &pop) == LL_OK);
    CHECK(gen == 1);
    CHECK(pop == 3);
    CHECK(ll_universe_bbox(u, &box, &has) == LL_OK);
    CHECK(has == 1);
    CHECK(box.min_x == 0);
    CHECK(box.min_y == -1);
    CHECK(box.max_y == 1);
    size_t n = 0;
    CHECK(ll_universe_cells(u, nullptr, 0, &n) == LL_OK);
    CHECK(n == 3);
    std::vector<int32_t> xy(2 * n);
    CHECK(ll_universe_cells(u, xy.data(), n, &n) == LL_OK);
    CHECK(xy == std::vector<int32_t>{0, -1, 0, 0, 0, 1});
    CHECK(ll_universe_step(u, -1) == LL_ERR_ARGUMENT);
    ll_universe_free(u);
    ll_universe_free(nullptr);
  }

  TEST_CASE("catalog, gliders and RLE") {
    ll_universe* u = nullptr;
    REQUIRE(ll_universe_load("gun_p30", &u) == LL_OK);
    CHECK(ll_universe_step(u, 120) == LL_OK);
    size_t n = 0;
    CHECK(ll_universe_gliders(u, nullptr, 0, &n) == LL_OK);
    CHECK(n == 4);
    std::vector<ll_glider> gs(n);
    CHECK(ll_universe_gliders(u, gs.data(), gs.size(), &n) == LL_OK);
    for (const ll_glider& g : gs) CHECK(g.heading == 0);
    size_t size = 0;
    CHECK(ll_universe_to_rle(u, nullptr, 0, &size) == LL_OK);
    std::string buf(size, '\0');
    CHECK(ll_universe_to_rle(u, buf.data(), buf.size(), &size) == LL_OK);
    ll_universe* back = nullptr;
    REQUIRE(ll_universe_from_rle(buf.c_str(), &back) == LL_OK);
    uint64_t a = 0, b = 0;
    ll_universe_population(u, &a);
    ll_universe_population(back, &b);
    CHECK(a == b);
    ll_universe_free(back);
    ll_universe_free(u);
  }

  TEST_CASE("stabilization") {
    ll_universe* u = nullptr;
    REQUIRE(ll_universe_load("r_pentomino", &u) == LL_OK);
    int found = 0, period = 0;
    int64_t at = 0;
    CHECK(ll_universe_stabilization(u, 1500, 64, &found, &at, &period) == LL_OK);
    CHECK(found == 1);
    CHECK(at == 1103);
    CHECK(period == 2);
    ll_universe_free(u);
  }

  TEST_CASE("errors") {
    ll_universe* u = nullptr;
    CHECK(ll_universe_load("no_such_pattern", &u) == LL_ERR_PARSE);
    CHECK(u == nullptr);
    CHECK(std::string(ll_last_error()).find("no_such_pattern") != std::string::npos);
    CHECK(ll_universe_from_rle("x = 3, y = 2\nooo$\no?o!", &u) == LL_ERR_PARSE);
    int line = 0, column = 0;
    ll_last_error_position(&line, &column);
    CHECK(line > 0);
    CHECK(ll_universe_new(nullptr) == LL_ERR_ARGUMENT);
    ll_circuit* c = nullptr;
    CHECK(ll_circuit_compile("A & & B", LL_XOR_CONJUNCTIVE, &c) == LL_ERR_PARSE);
    ll_last_error_position(&line, &column);
    CHECK(column == 5);
    unsigned sum = 0;
    CHECK(ll_adder_add(4, 0, &sum) == LL_ERR_PARSE);
  }

  TEST_CASE("circuits") {
    ll_circuit* c = nullptr;
    REQUIRE(ll_circuit_compile("!A & B", LL_XOR_CONJUNCTIVE, &c) == LL_OK);
    size_t n = 0;
    CHECK(ll_circuit_variable_count(c, &n) == LL_OK);
    REQUIRE(n == 2);
    const char* name = nullptr;
    CHECK(ll_circuit_variable(c, 1, &name) == LL_OK);
    CHECK(std::string(name) == "B");
    CHECK(ll_circuit_variable(c, 2, &name) == LL_ERR_ARGUMENT);
    const char* names[] = {"A", "B"};
    const int v01[] = {0, 1};
    const int v11[] = {1, 1};
    int result = -1;
    CHECK(ll_circuit_evaluate(c, names, v01, 2, &result) == LL_OK);
    CHECK(result == 1);
    CHECK(ll_circuit_evaluate(c, names, v11, 2, &result) == LL_OK);
    CHECK(result == 0);
    CHECK(ll_circuit_evaluate(c, names, v01, 1, &result) == LL_ERR_SEMANTIC);
    int guns = 0, window = 0;
    int64_t probe = 0;
    CHECK(ll_circuit_gun_count(c, &guns) == LL_OK);
    CHECK(guns == 4);
    CHECK(ll_circuit_probe_window(c, &window) == LL_OK);
    CHECK(window == 30);
    CHECK(ll_circuit_probe_generation(c, &probe) == LL_OK);
    CHECK(probe > 0);
    ll_universe* u = nullptr;
    CHECK(ll_circuit_prepare(c, names, v01, 2, &u) == LL_OK);
    CHECK(ll_universe_step(u, probe) == LL_OK);
    int32_t ox = 0, oy = 0;
    CHECK(ll_circuit_output_cell(c, &ox, &oy) == LL_OK);
    bool seen = false;
    for (int g = 0; g < window; ++g) {
      int alive = 0;
      ll_universe_alive(u, ox, oy, &alive);
      seen = seen || alive;
      ll_universe_step(u, 1);
    }
    CHECK(seen);
    ll_universe_free(u);
    ll_circuit_free(c);

    REQUIRE(ll_circuit_compile("x ^ y", LL_XOR_DISJUNCTIVE, &c) == LL_OK);
    CHECK(ll_circuit_gun_count(c, &guns) == LL_OK);
    CHECK(guns == 10);
    ll_circuit_free(c);
  }

  TEST_CASE("adder") {
    unsigned sum = 0;
    CHECK(ll_adder_add(3, 3, &sum) == LL_OK);
    CHECK(sum == 6);
    CHECK(ll_adder_add(2, 1, &sum) == LL_OK);
    CHECK(sum == 3);
  }

  TEST_CASE("calibration with an empty search") {
    ll_certificate cert{};
    CHECK(ll_gate_calibrate("and", 0, "/tmp", &cert) == LL_ERR_CALIBRATION);
    CHECK(std::string(ll_last_error()).find("no-valid-placement") != std::string::npos);
    CHECK(ll_gate_calibrate("XOR", 4, "/tmp", &cert) == LL_ERR_PARSE);
  }
}
