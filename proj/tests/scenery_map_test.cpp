#include "bssd/scenery_map.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <algorithm>

namespace bssd {
namespace {

using testing::fixture_document;
using testing::load_fixture;

bool has_code(const std::vector<Diagnostic>& ds, std::string_view rule, std::string_view code) {
  return std::any_of(ds.begin(), ds.end(), [&](const Diagnostic& d) { return d.rule == rule && d.code == code; });
}

TEST(Load, ExampleAInterpretation) {
  const auto map = load_fixture("example_a.osm");
  EXPECT_TRUE(map.diagnostics().empty());
  EXPECT_EQ(map.lanes().size(), 12u);
  EXPECT_EQ(map.spaces().size(), 12u);
  EXPECT_EQ(map.motion_spaces().size(), 3u);
  EXPECT_TRUE(map.rejected_spaces().empty());
  ASSERT_TRUE(map.resolve_space("A"));
  EXPECT_EQ(*map.resolve_space("A"), 1000);
  EXPECT_EQ(map.resolve_space("1000"), 1000);
  EXPECT_FALSE(map.resolve_space("Z"));
  const auto* a = map.find_space(1000);
  ASSERT_TRUE(a);
  EXPECT_FALSE(a->against);
  EXPECT_EQ(a->along.reservation.demands.at(0).links.size(), 3u);
  for (const auto& [id, lane] : map.lanes()) {
    EXPECT_TRUE(lane.one_directional);
    EXPECT_FALSE(lane.left_nodes.empty());
  }
}

TEST(Load, ExampleBKinds) {
  const auto map = load_fixture("example_b.osm");
  EXPECT_TRUE(map.diagnostics().empty());
  std::size_t bikes = 0;
  std::size_t crosswalks = 0;
  for (const auto& [id, lane] : map.lanes()) {
    bikes += lane.kind == LaneKind::bicycle_lane;
    crosswalks += lane.kind == LaneKind::crosswalk;
  }
  EXPECT_EQ(bikes, 6u);
  EXPECT_EQ(crosswalks, 1u);
  std::size_t parking = 0;
  for (const auto& [id, ms] : map.motion_spaces()) parking += ms.kind == MotionSpaceKind::parking_area;
  EXPECT_EQ(parking, 1u);
}

TEST(Load, RouteGridHasBothDirections) {
  const auto map = load_fixture("route_grid.osm");
  EXPECT_EQ(map.spaces().size(), 6u);
  for (const auto& [id, s] : map.spaces()) EXPECT_TRUE(s.against) << id;
}

TEST(Load, RejectedSpaceStaysInCoverage) {
  auto doc = fixture_document("example_a.osm");
  const OsmId along = testing::along_of(doc, "A");
  testing::relation(doc, along).tags.erase("overtake");
  const auto map = seal(doc);
  EXPECT_FALSE(map.find_space(1000));
  EXPECT_TRUE(map.rejected_spaces().count(1000));
  EXPECT_FALSE(map.resolve_space("A"));
  const OsmId lanelet = testing::lanelet_of(doc, "A");
  EXPECT_EQ(map.coverage().at(lanelet), std::vector<OsmId>{1000});
  EXPECT_TRUE(has_code(map.diagnostics(), "V-RQ2", "overtake.default_count"));
}

TEST(Load, ForeignProblemsAreWarnings) {
  auto doc = fixture_document("example_a.osm");
  doc.relations[-1] = OsmRelation{-1, {{ElementType::way, 999999, "refers"}}, {{"type", "regulatory_element"}}, {}};
  doc.relations[-2] = OsmRelation{-2, {}, {{"type", "boundary"}, {"crossing", "allowed"}}, {}};
  doc.relations[-3] = OsmRelation{-3, {{ElementType::way, 999998, "left"}}, {{"type", "lanelet"}}, {}};
  const auto map = seal(doc);
  EXPECT_TRUE(has_code(map.diagnostics(), "V-RQ5", "dangling_ref"));
  EXPECT_TRUE(has_code(map.diagnostics(), "V-RQ5", "orphan_bssd_relation"));
  EXPECT_TRUE(has_code(map.diagnostics(), "V-RQ5", "unparseable_lanelet"));
  EXPECT_TRUE(std::all_of(map.diagnostics().begin(), map.diagnostics().end(),
                          [](const Diagnostic& d) { return d.severity == Severity::warning; }));
  EXPECT_EQ(map.spaces().size(), 12u);
}

TEST(Load, DiagnosticsCarrySourceLines) {
  const auto loaded = load_map(testing::data_file("example_a_dangling.osm"));
  const auto it = std::find_if(loaded.diagnostics.begin(), loaded.diagnostics.end(),
                               [](const Diagnostic& d) { return d.code == "dangling_ref"; });
  ASSERT_NE(it, loaded.diagnostics.end());
  EXPECT_GT(it->line, 0);
  EXPECT_EQ(it->full_message().rfind("dangling_ref: ", 0), 0u);
}

TEST(Load, DiagnosticsAreSortedAndUnique) {
  auto doc = fixture_document("example_a.osm");
  for (const char* name : {"P3n", "P1n", "U"}) testing::relation(doc, testing::along_of(doc, name)).tags.erase("speed:max");
  const auto ds = seal(doc).diagnostics();
  EXPECT_TRUE(std::is_sorted(ds.begin(), ds.end(), finding_order));
  EXPECT_EQ(std::adjacent_find(ds.begin(), ds.end()), ds.end());
  EXPECT_EQ(count_errors(ds), 3u);
}

TEST(Load, LaneKindFromSubtype) {
  EXPECT_EQ(lane_kind_from_subtype("road"), LaneKind::vehicle_lane);
  EXPECT_EQ(lane_kind_from_subtype(""), LaneKind::vehicle_lane);
  EXPECT_EQ(lane_kind_from_subtype("bicycle_lane"), LaneKind::bicycle_lane);
  EXPECT_EQ(lane_kind_from_subtype("crosswalk"), LaneKind::crosswalk);
  EXPECT_EQ(lane_kind_from_subtype("stairs"), LaneKind::other);
}

TEST(Load, EmptyMap) {
  const auto map = load_fixture("empty.osm");
  EXPECT_TRUE(map.lanes().empty());
  EXPECT_TRUE(map.diagnostics().empty());
}

}  // namespace
}  // namespace bssd
