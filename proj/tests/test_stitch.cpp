#include <string>
#include <vector>

#include "doctest.h"
#include "tpd/errors.hpp"
#include "tpd/stitch.hpp"

using namespace tpd;

namespace {

Feature feat(std::string id, std::vector<Rect> rects) {
  return Feature{std::move(id), std::move(rects)};
}

std::vector<const Feature*> ptrs(const std::vector<Feature>& fs) {
  std::vector<const Feature*> p;
  for (const Feature& f : fs) p.push_back(&f);
  return p;
}

}  // namespace

TEST_CASE("multi-pin decomposition") {
  SUBCASE("split collinear rects merge back into one run") {
    auto runs = decompose_multipin(feat("a", {{0, 0, 10, 50}, {0, 50, 10, 100}}));
    REQUIRE(runs.size() == 1);
    CHECK(runs[0].rect == Rect{0, 0, 10, 100});
    CHECK(runs[0].vertical);
  }
  SUBCASE("contained rect disappears") {
    auto runs = decompose_multipin(feat("a", {{0, 0, 100, 10}, {20, 0, 40, 10}}));
    REQUIRE(runs.size() == 1);
    CHECK(runs[0].rect == Rect{0, 0, 100, 10});
    CHECK_FALSE(runs[0].vertical);
  }
  SUBCASE("L shape keeps two runs, sorted by position") {
    auto runs = decompose_multipin(feat("a", {{0, 90, 80, 100}, {0, 0, 10, 100}}));
    REQUIRE(runs.size() == 2);
    CHECK(runs[0].rect == Rect{0, 0, 10, 100});
    CHECK(runs[0].vertical);
    CHECK(runs[1].rect == Rect{0, 90, 80, 100});
    CHECK_FALSE(runs[1].vertical);
  }
  SUBCASE("square counts as vertical") {
    auto runs = decompose_multipin(feat("a", {{0, 0, 10, 10}}));
    REQUIRE(runs.size() == 1);
    CHECK(runs[0].vertical);
  }
}

TEST_CASE("projection sequence basics") {
  Feature run = feat("r", {{0, 0, 300, 10}});
  SUBCASE("no neighbors -> single zero segment") {
    auto ps = compute_projection_sequence(run, {}, 10);
    CHECK(ps.label_string() == "0");
    CHECK(ps.segments[0].lo == 0);
    CHECK(ps.segments[0].hi == 300);
  }
  SUBCASE("one neighbor -> 010") {
    std::vector<Feature> nb{feat("a", {{120, -15, 180, -5}})};
    auto ps = compute_projection_sequence(run, ptrs(nb), 10);
    CHECK(ps.label_string() == "010");
    CHECK(ps.segments[1].lo == 110);
    CHECK(ps.segments[1].hi == 190);
  }
  SUBCASE("neighbor beyond dis_m is ignored") {
    std::vector<Feature> nb{feat("a", {{120, -40, 180, -20}})};
    auto ps = compute_projection_sequence(run, ptrs(nb), 10);
    CHECK(ps.label_string() == "0");
  }
  SUBCASE("two rects of one neighbor count once where they overlap") {
    std::vector<Feature> nb{feat("a", {{60, -15, 120, -5}, {100, -15, 160, -5}})};
    auto ps = compute_projection_sequence(run, ptrs(nb), 10);
    CHECK(ps.label_string() == "010");  // union [50,170], depth stays 1
    CHECK(ps.segments[1].lo == 50);
    CHECK(ps.segments[1].hi == 170);
  }
  SUBCASE("coverage to the run end gets a zero-length terminal") {
    std::vector<Feature> nb{feat("a", {{0, -15, 300, -5}})};
    auto ps = compute_projection_sequence(run, ptrs(nb), 10);
    CHECK(ps.label_string() == "010");
    CHECK(ps.segments[0].lo == ps.segments[0].hi);
    CHECK(ps.segments[2].lo == ps.segments[2].hi);
  }
  SUBCASE("multi-pin feature rejected by the convenience overload") {
    Feature mp = feat("m", {{0, 0, 10, 100}, {0, 90, 80, 100}});
    CHECK_THROWS_AS(compute_projection_sequence(mp, {}, 10), ValidationError);
  }
}

TEST_CASE("dpl candidate sits at the interior zero midpoint") {
  Feature run = feat("r", {{0, 0, 300, 10}});
  std::vector<Feature> nb{feat("a", {{60, -15, 90, -5}}),
                          feat("a2", {{65, -15, 85, -5}}),
                          feat("b", {{210, -15, 240, -5}})};
  auto ps = compute_projection_sequence(run, ptrs(nb), 10);
  REQUIRE(ps.label_string() == "0121010");
  auto cand = generate_stitch_candidates(ps, {run.rects[0], false});
  REQUIRE(cand.size() == 1);
  CHECK(cand[0].kind == StitchKind::dpl);
  CHECK(cand[0].pos == 150);
  CHECK_FALSE(cand[0].vertical);
}

TEST_CASE("01010 head drops its only dpl candidate") {
  Feature run = feat("r", {{0, 0, 300, 10}});
  std::vector<Feature> nb{feat("a", {{60, -15, 90, -5}}),
                          feat("b", {{210, -15, 240, -5}})};
  auto ps = compute_projection_sequence(run, ptrs(nb), 10);
  REQUIRE(ps.label_string() == "01010");
  auto cand = generate_stitch_candidates(ps, {run.rects[0], false});
  CHECK(cand.empty());
}

TEST_CASE("212 dip yields exactly one lost candidate") {
  Feature run = feat("r", {{0, 0, 300, 10}});
  std::vector<Feature> nb{feat("a", {{0, -50, 24, -40}}),
                          feat("b", {{96, -50, 204, -40}}),
                          feat("c", {{276, -50, 300, -40}})};
  auto ps = compute_projection_sequence(run, ptrs(nb), 96);
  REQUIRE(ps.label_string() == "02120");
  auto cand = generate_stitch_candidates(ps, {run.rects[0], false});
  REQUIRE(cand.size() == 1);
  CHECK(cand[0].kind == StitchKind::lost);
  CHECK(cand[0].pos == 150);
}

namespace {

// One long bar with one flanking bar below and four short bars above spells
// out 01212101010 at dis_m = 96.
struct LongBarFixture {
  Feature run = Feature{"r", {{0, 0, 2500, 10}}};
  std::vector<Feature> nb{
      Feature{"b", {{346, -90, 1404, -80}}},
      Feature{"c", {{596, 90, 654, 100}}},
      Feature{"d", {{1096, 90, 1154, 100}}},
      Feature{"e", {{1846, 90, 1904, 100}}},
      Feature{"f", {{2346, 90, 2404, 100}}},
  };
};

}  // namespace

TEST_CASE("01212101010 keeps one lost and one dpl candidate") {
  LongBarFixture fx;
  auto ps = compute_projection_sequence(fx.run, ptrs(fx.nb), 96);
  REQUIRE(ps.label_string() == "01212101010");
  auto cand = generate_stitch_candidates(ps, {fx.run.rects[0], false});
  REQUIRE(cand.size() == 2);
  CHECK(cand[0].kind == StitchKind::lost);
  CHECK(cand[0].pos == 875);
  CHECK(cand[1].kind == StitchKind::dpl);
  CHECK(cand[1].pos == 1625);  // the 01010 tail drops the dpl at 2125
}

TEST_CASE("per-feature cap truncates in position order") {
  LongBarFixture fx;
  auto all = feature_stitch_candidates(fx.run, 0, ptrs(fx.nb), 96, 4);
  REQUIRE(all.size() == 2);
  CHECK(all[0].feature == 0);
  auto one = feature_stitch_candidates(fx.run, 0, ptrs(fx.nb), 96, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].pos == 875);
  auto none = feature_stitch_candidates(fx.run, 0, ptrs(fx.nb), 96, 0);
  CHECK(none.empty());
}

TEST_CASE("candidates come per run of a multi-pin feature") {
  // Vertical stem plus horizontal arm; each run sees its own neighbor.
  Feature f = feat("t", {{0, 0, 10, 300}, {0, 290, 300, 300}});
  std::vector<Feature> nb{feat("a", {{-20, 60, -5, 90}}),
                          feat("a2", {{-20, 65, -5, 85}}),
                          feat("b", {{-20, 210, -5, 240}}),
                          feat("h", {{60, 270, 90, 285}}),
                          feat("h2", {{65, 270, 85, 285}}),
                          feat("g", {{210, 270, 240, 285}})};
  auto all = feature_stitch_candidates(f, 7, ptrs(nb), 10, 4);
  REQUIRE(all.size() == 2);
  CHECK(all[0].vertical);
  CHECK(all[0].pos == 150);
  CHECK(all[0].run == Rect{0, 0, 10, 300});
  CHECK_FALSE(all[1].vertical);
  CHECK(all[1].pos == 150);
  CHECK(all[1].run == Rect{0, 290, 300, 300});
  CHECK(all[1].feature == 7);
}
