#include <cstdlib>
#include <filesystem>
#include <random>

#include "doctest.h"
#include "lifelogic/layout.hpp"
#include "lifelogic/patterns.hpp"
#include "oracle.hpp"

using namespace lifelogic;

namespace {

Pattern random_pattern(std::mt19937& rng) {
  std::uniform_int_distribution<int> side(1, 64);
  const int w = side(rng), h = side(rng);
  std::vector<Cell> cells;
  std::bernoulli_distribution alive(std::uniform_real_distribution<double>(0.05, 0.9)(rng));
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (alive(rng)) cells.push_back({x, y});
  if (cells.empty()) cells.push_back({0, 0});
  return make_pattern("random", cells);
}

RleError::Kind rle_error_kind(const std::string& text) {
  try {
    parse_rle(text);
  } catch (const RleError& e) {
    return e.kind();
  }
  FAIL("no error raised for: " << text);
  return RleError::Kind::MalformedHeader;
}

}  // namespace

TEST_SUITE("patterns") {
  TEST_CASE("parse_rle decodes runs and rows") {
    CHECK(parse_rle("x = 3, y = 1\nooo!").cells == std::vector<Cell>{{0, 0}, {1, 0}, {2, 0}});
    CHECK(parse_rle("x = 3, y = 3\nbob$2bo$3o!").cells == catalog("glider").cells);
    CHECK(parse_rle("#N test\nx = 2, y = 3\n2o2$2o!").cells == std::vector<Cell>{{0, 0}, {0, 2}, {1, 0}, {1, 2}});
    CHECK(parse_rle("#N named\nx = 1, y = 1\no!").name == "named");
    CHECK(parse_rle("x = 4, y = 1, rule = B3/S23\n4o!").cells.size() == 4);
  }

  TEST_CASE("parse_rle rejects bad input with positions") {
    CHECK(rle_error_kind("x = 1, y = 1\nrule = B36/S23\no!") == RleError::Kind::UnsupportedRule);
    CHECK(rle_error_kind("x = 1, y = 1, rule = B36/S23\no!") == RleError::Kind::UnsupportedRule);
    CHECK(rle_error_kind("x = 3, y = 1\nooo") == RleError::Kind::MissingTerminator);
    CHECK(rle_error_kind("x = 3 y 1\nooo!") == RleError::Kind::MalformedHeader);
    try {
      parse_rle("x = 3, y = 2\nooo$\no?o!");
      FAIL("expected an error");
    } catch (const RleError& e) {
      CHECK(e.kind() == RleError::Kind::UnexpectedCharacter);
      CHECK(e.line() == 3);
      CHECK(e.column() == 2);
    }
  }

  TEST_CASE("emit_rle") {
    CHECK(emit_rle(catalog("blinker")).find("x = 3, y = 1") != std::string::npos);
    const std::string block = emit_rle(catalog("block"));
    CHECK(parse_rle(block).cells == catalog("block").cells);
    CHECK(block.find("2o$2o!") != std::string::npos);
  }

  TEST_CASE("round trip on the catalog and random patterns") {
    for (const auto& name : catalog_names()) {
      const Pattern& p = catalog(name);
      CHECK(parse_rle(emit_rle(p)).cells == p.cells);
    }
    std::mt19937 rng(17);
    for (int i = 0; i < 200; ++i) {
      const Pattern p = random_pattern(rng);
      REQUIRE(parse_rle(emit_rle(p)).cells == p.cells);
    }
  }

  TEST_CASE("file round trip") {
    const auto path = std::filesystem::temp_directory_path() / "lifelogic_rle_test.rle";
    write_rle_file(path, catalog("gun_p30"));
    CHECK(read_rle_file(path).cells == catalog("gun_p30").cells);
    std::filesystem::remove(path);
  }

  TEST_CASE("catalog entries") {
    const Pattern& g = catalog("glider");
    CHECK(g.cells.size() == 5);
    CHECK(g.kind == PatternKind::Spaceship);
    CHECK(g.period == 4);
    CHECK(catalog("block").cells.size() == 4);
    CHECK(catalog("block").kind == PatternKind::StillLife);
    CHECK(catalog("gun_p30").kind == PatternKind::Gun);
    CHECK(catalog("gun_p30").period == 30);
    CHECK_THROWS_AS(catalog("no_such_pattern"), UnknownPatternError);
    for (const auto& name : catalog_names()) {
      const Pattern& p = catalog(name);
      REQUIRE_FALSE(p.cells.empty());
      CHECK(std::any_of(p.cells.begin(), p.cells.end(), [](Cell c) { return c.x == 0; }));
      CHECK(std::any_of(p.cells.begin(), p.cells.end(), [](Cell c) { return c.y == 0; }));
      CHECK_NOTHROW(verify_pattern(p));
    }
  }

  TEST_CASE("still lifes and oscillators by simulation") {
    for (const char* name : {"block", "beehive", "eater_stopper", "eater_detector"}) {
      const Universe u = catalog(name).to_universe();
      CHECK(u.step().same_cells(u));
    }
    const Universe b = catalog("blinker").to_universe();
    CHECK_FALSE(b.step().same_cells(b));
    CHECK(b.run(2).same_cells(b));
  }

  TEST_CASE("gun body is periodic and emits one glider per period") {
    const Universe gun = catalog("gun_p30").to_universe();
    Universe u = gun;
    for (int k = 1; k <= 10; ++k) {
      u.advance(30);
      Universe body = u;
      const auto gliders = find_gliders(u);
      for (const auto& g : gliders) erase_glider(body, g);
      CHECK(gliders.size() == static_cast<std::size_t>(k));
      CHECK(body.same_cells(gun));
    }
  }

  TEST_CASE("stopper eater consumes its aimed glider and recovers") {
    const Pattern& eater = catalog("eater_stopper");
    const EaterAlignment a = eater_alignment("eater_stopper");
    Universe u = eater.to_universe();
    place_into(u, glider_phase(0), a.glider_at);
    u.advance(20);
    CHECK(u.same_cells(eater.to_universe()));
  }

  TEST_CASE("detector probe fires during consumption only") {
    const Pattern& eater = catalog("eater_detector");
    const Cell probe = detector_probe_offset();
    CHECK_FALSE(eater.to_universe().alive(probe));
    Universe u = eater.to_universe();
    place_into(u, glider_phase(0), eater_alignment("eater_detector").glider_at);
    bool fired = false;
    for (int g = 0; g < 20; ++g) {
      fired = fired || u.alive(probe);
      u.advance();
    }
    CHECK(fired);
    CHECK(u.same_cells(eater.to_universe()));
  }

  TEST_CASE("stopper entry cell destroys the stopper") {
    Universe u = catalog("eater_stopper").to_universe();
    CHECK_FALSE(u.alive(stopper_entry_offset()));
    u.set(stopper_entry_offset());
    u.advance(stopper_death_generations());
    for (const Cell& c : catalog("eater_stopper").cells) CHECK_FALSE(u.alive(c));
  }

  TEST_CASE("transforms") {
    const Pattern v = transform(catalog("blinker"), Orientation::rotate90());
    CHECK(v.cells == std::vector<Cell>{{0, 0}, {0, 1}, {0, 2}});
    for (const auto& name : catalog_names())
      CHECK(transform(catalog(name), Orientation::identity()).cells == catalog(name).cells);
    // A mirrored SE glider heads SW and still translates after 4 generations.
    const Pattern sw = transform(catalog("glider"), Orientation::flip_x());
    const Universe u = sw.to_universe();
    CHECK(u.run(4).same_cells(u.translated({-1, 1})));
    CHECK(find_gliders(u).at(0).heading == Heading::SW);
  }

  TEST_CASE("orientation group laws") {
    const Pattern& gun = catalog("gun_p30");
    for (const Orientation& a : Orientation::all())
      for (const Orientation& b : Orientation::all()) {
        const Orientation ab = compose(b, a);
        CHECK(std::find(Orientation::all().begin(), Orientation::all().end(), ab) != Orientation::all().end());
        CHECK(transform(transform(gun, a), b).cells == transform(gun, ab).cells);
      }
    for (const Orientation& a : Orientation::all()) {
      CHECK(Orientation::from_name(a.name()) == a);
      CHECK(compose(a, Orientation::identity()) == a);
    }
  }

  TEST_CASE("place") {
    const Universe u = place(Universe(), catalog("block"), {10, 10});
    CHECK(u.cells() == std::vector<Cell>{{10, 10}, {10, 11}, {11, 10}, {11, 11}});
    CHECK_THROWS_AS(place(u, catalog("block"), {10, 10}), OverlapError);
    Universe gun = place(Universe(), catalog("gun_p30"), {0, 0});
    gun.advance(120);
    CHECK(find_gliders(gun).size() == 4);
  }

  TEST_CASE("fixture directory override") {
    const auto dir = fixture_dir();
    CHECK(std::filesystem::exists(dir / "patterns" / "glider.rle"));
    ::setenv("LIFE_FIXTURE_DIR", "/nonexistent/fixtures", 1);
    CHECK(fixture_dir() == std::filesystem::path("/nonexistent/fixtures"));
    ::unsetenv("LIFE_FIXTURE_DIR");
    CHECK(fixture_dir() == dir);
  }
}

TEST_SUITE("layout") {
  namespace {
  // True iff a phase-0 glider with the event's heading sits at e.at at e.t.
  bool glider_at(const std::vector<Cell>& start, const StreamEvent& e) {
    Universe u(start);
    u.advance(e.t);
    for (const auto& g : find_gliders(u))
      if (g.position == e.at && g.phase == 0 && g.heading == e.heading) return true;
    return false;
  }
  }  // namespace

  TEST_CASE("gun streams match simulation for both headings and all phases") {
    for (int phase : {0, 7, 29}) {
      for (Heading h : {Heading::SE, Heading::SW}) {
        const Placement gun = gun_emitting(h, {13, -4}, phase);
        const StreamEvent e = gun_stream(gun);
        CHECK(e.heading == h);
        CHECK(e.at == Cell{13, -4});
        const auto cells = placement_cells(gun);
        // Guns advanced past their first emission have a nascent event before generation 0.
        const StreamEvent seen = e.t >= 0 ? e : event_at_along(e, along_of(h, e.at) + 8);
        CHECK(seen.t >= 0);
        CHECK(glider_at(cells, seen));
        // Later gliders of the same stream.
        const StreamEvent later = event_at_along(e, along_of(h, e.at) + 20);
        CHECK(same_stream(e, later));
        CHECK(stream_phase(e) == stream_phase(later));
        CHECK(glider_at(cells, later));
      }
    }
  }

  TEST_CASE("lanes and along coordinates") {
    for (Heading h : {Heading::SE, Heading::SW, Heading::NE, Heading::NW}) {
      const Cell c{5, -9};
      const Cell next = c + heading_vector(h);
      CHECK(lane_of(h, next) == lane_of(h, c));
      CHECK(along_of(h, next) == along_of(h, c) + 1);
    }
  }

  TEST_CASE("mirror preserves the produced cells up to x -> -x") {
    const Placement gun{"gun_p30", {3, 8}, Orientation::identity(), 11};
    std::vector<Cell> expected;
    for (const Cell& c : placement_cells(gun)) expected.push_back({-c.x, c.y});
    std::sort(expected.begin(), expected.end());
    auto got = placement_cells(mirror(gun));
    std::sort(got.begin(), got.end());
    CHECK(got == expected);
  }

  TEST_CASE("eaters placed on a stream consume it") {
    for (Heading h : {Heading::SE, Heading::SW})
      for (const char* name : {"eater_stopper", "eater_detector"}) {
        const Placement gun = gun_emitting(h, {0, 0}, 0);
        const StreamEvent e = gun_stream(gun);
        const Placement eater = eater_for(name, e, along_of(h, e.at) + 30);
        Universe u(placement_cells(gun));
        for (const Cell& c : placement_cells(eater)) u.set(c);
        u.advance(600);
        // Nothing gets past the eater.
        const std::int32_t catch_along = eater_catch_along(eater, h);
        for (const auto& g : find_gliders(u)) CHECK(along_of(h, g.position) < catch_along);
        for (const Cell& c : placement_cells(eater)) CHECK(u.alive(c));
      }
  }

  TEST_CASE("crossing streams annihilate") {
    const GliderPhysics& ph = physics();
    const Placement se_gun = gun_emitting(Heading::SE, {0, 0}, 0);
    const StreamEvent se = gun_stream(se_gun);
    const StreamEvent at = event_at_along(se, along_of(Heading::SE, se.at) + 20);
    const auto partner = crossing_partner(at, lane_of(Heading::SW, at.at + ph.sw_offset) + 10);
    REQUIRE(partner.has_value());
    CHECK(partner->heading == Heading::SW);
    const auto back = crossing_partner_se(*partner, lane_of(Heading::SE, at.at));
    REQUIRE(back.has_value());
    CHECK(same_stream(*back, at));

    // The canonical pair vanishes completely.
    Universe pair;
    for (const Cell& c : glider_form(0, Heading::SE)) pair.set(c);
    for (const Cell& c : glider_form(0, Heading::SW)) pair.set(c + ph.sw_offset);
    pair.advance(ph.reaction_time);
    CHECK(pair.empty());
  }

  TEST_CASE("corridors cover the glider cells of their stream") {
    const Placement gun = gun_emitting(Heading::SW, {0, 0}, 0);
    const StreamEvent e = gun_stream(gun);
    const std::int32_t a0 = along_of(Heading::SW, e.at);
    const Corridor k{Heading::SW, lane_of(Heading::SW, e.at), a0, a0 + 40};
    Universe u(placement_cells(gun));
    u.advance(e.t + 100);
    for (const auto& g : find_gliders(u)) {
      if (along_of(Heading::SW, g.position) > a0 + 40) continue;
      const auto form = glider_form(g.phase, g.heading);
      for (const Cell& c : form) CHECK(corridor_contains(k, c + g.position, 0));
    }
  }
}
