#include "doctest.h"

#include "diskcond/waves.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace diskcond;

TEST_CASE("annulus pieces admit no essential wave") {
  auto spec = fixtures::torus_spec(3, 3, 3);
  for (int hb = 0; hb < 3; ++hb) {
    CHECK(circle_count(spec, hb, 0) == 2);
    for (Circle c : piece_circles(spec, hb, 0))
      CHECK(!min_essential_wave_weight(spec, hb, 0, c, 10).has_value());
  }
}

TEST_CASE("4-holed sphere piece: minimal essential wave crosses twice") {
  auto spec = fixtures::ibundle_spec();
  REQUIRE(circle_count(spec, 0, 0) == 4);
  for (Circle c : piece_circles(spec, 0, 0)) {
    auto w = min_essential_wave_weight(spec, 0, 0, c, 10);
    REQUIRE(w.has_value());
    CHECK(*w == 2);
    auto oracle = oracles::wave_min_weight(spec, 0, 0, c, 8);
    REQUIRE(oracle.has_value());
    CHECK(*oracle == 2);
  }
}

TEST_CASE("search and oracle agree on the doubled fixture") {
  auto spec = fixtures::ibundle_spec(1);
  for (Circle c : piece_circles(spec, 0, 0)) {
    auto prod = min_essential_wave_weight(spec, 0, 0, c, 12);
    auto oracle = oracles::wave_min_weight(spec, 0, 0, c, 10);
    CHECK(prod.has_value() == oracle.has_value());
    if (prod && oracle) CHECK(*prod == *oracle);
  }
}

TEST_CASE("parallel curves only increase wave weights") {
  auto base = fixtures::ibundle_spec(0);
  auto doubled = fixtures::ibundle_spec(1);
  for (Circle c : piece_circles(base, 0, 0)) {
    auto w0 = min_essential_wave_weight(base, 0, 0, c, 12);
    auto w1 = min_essential_wave_weight(doubled, 0, 0, c, 12);
    REQUIRE(w0.has_value());
    REQUIRE(w1.has_value());
    CHECK(*w1 >= *w0);
    CHECK(*w1 == 2 * *w0);  // each ring doubles every crossing
  }
}

TEST_CASE("every enumerated essential wave passes the predicate independently") {
  auto spec = fixtures::ibundle_spec();
  int essential_seen = 0, inessential_seen = 0;
  for (Circle c : piece_circles(spec, 0, 0)) {
    enumerate_waves(spec, 0, 0, c, 3, [&](const WaveCandidate& w) {
      auto chk = wave_essential(spec, w);
      if (!chk.embeddable) return;
      // endpoints really are on the base circle
      CHECK(w.start_cell >= 0);
      CHECK(w.end_cell >= 0);
      if (chk.essential) {
        ++essential_seen;
        CHECK(w.weight >= 2);  // the 4-waveless property of the lifted basis
      } else {
        ++inessential_seen;
      }
    });
  }
  CHECK(essential_seen > 0);
  CHECK(inessential_seen > 0);
}
