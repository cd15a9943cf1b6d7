#include "doctest.h"

#include "diskcond/builder.hpp"
#include "diskcond/disk_condition.hpp"
#include "fixtures.hpp"

using namespace diskcond;

TEST_CASE("torus example cell counts, hand-derived for p=(3,3,3)") {
  auto doc = build_torus_example({3, 3, 3});
  // S12 carries 6 parallel verticals and no interior crossings; the shear
  // arcs in S13/S23 cross as counted by the lift model
  std::map<std::string, int> per_sheet;
  for (const auto& c : doc["cells"]) per_sheet[c["surface"].get<std::string>()]++;
  CHECK(per_sheet["S12"] == 6);
  CHECK(per_sheet["S13"] == 9);
  CHECK(per_sheet["S23"] == 10);
  CHECK(doc["edges"].size() == 50);
}

TEST_CASE("meridian crossing counts match 2p") {
  for (auto [p1, p2, p3] : {std::tuple{2, 2, 2}, {3, 3, 3}, {2, 3, 6}, {2, 3, 4}}) {
    auto spec = fixtures::torus_spec(p1, p2, p3);
    int p[3] = {p1, p2, p3};
    for (int hb = 0; hb < 3; ++hb) {
      CHECK(disk_curve_crossings(spec, hb, 0) == 2 * p[hb]);
      CHECK(spec.disk_profile[hb] == 2 * p[hb]);
    }
  }
}

TEST_CASE("builder output is deterministic") {
  auto a = build_torus_example({2, 3, 6});
  auto b = build_torus_example({2, 3, 6});
  CHECK(a.dump() == b.dump());
}

TEST_CASE("builder rejects p < 2") {
  CHECK_THROWS_AS(build_torus_example({1, 3, 3}), std::invalid_argument);
}

TEST_CASE("every builder output loads cleanly") {
  for (auto [p1, p2, p3] : {std::tuple{2, 2, 2}, {2, 2, 3}, {4, 2, 3}, {3, 4, 5}}) {
    auto res = load_manifold(build_torus_example({p1, p2, p3}));
    CHECK(res.ok());
  }
}
