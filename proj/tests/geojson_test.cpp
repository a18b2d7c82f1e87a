#include "bssd/geojson.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

namespace bssd {
namespace {

using nlohmann::json;

// Shoelace sum over (lon, lat); positive for counterclockwise rings.
double signed_area(const json& ring) {
  double s = 0;
  for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
    s += ring[i][0].get<double>() * ring[i + 1][1].get<double>() - ring[i + 1][0].get<double>() * ring[i][1].get<double>();
  }
  return s / 2;
}

TEST(Export, EmptyMap) {
  const auto j = json::parse(export_geojson(testing::load_fixture("empty.osm")));
  EXPECT_EQ(j["type"], "FeatureCollection");
  EXPECT_TRUE(j["features"].empty());
}

TEST(Export, OneClosedCounterclockwisePolygonPerLanelet) {
  const auto map = testing::load_fixture("example_b.osm");
  const auto j = json::parse(export_geojson(map));
  ASSERT_EQ(j["features"].size(), map.lanes().size());
  for (const auto& f : j["features"]) {
    EXPECT_EQ(f["geometry"]["type"], "Polygon");
    const auto& ring = f["geometry"]["coordinates"][0];
    EXPECT_EQ(ring.front(), ring.back());
    EXPECT_GT(signed_area(ring), 0) << f["properties"]["id"];
  }
}

TEST(Export, FlattenedDemands) {
  const auto map = testing::load_fixture("example_a.osm");
  const auto j = json::parse(export_geojson(map));
  const OsmId a_lanelet = testing::lanelet_of(map.document(), "A");
  bool found = false;
  for (const auto& f : j["features"]) {
    const auto& p = f["properties"];
    if (p["id"] != a_lanelet) continue;
    found = true;
    EXPECT_EQ(p["behavior_space"], 1000);
    EXPECT_EQ(p["kind"], "vehicle_lane");
    EXPECT_EQ(p["along:speed:max"], "30");
    EXPECT_EQ(p["along:boundary_long:crossing"], "conditional");
    EXPECT_EQ(p["along:boundary_long:condition"], "no_stagnant_traffic");
    EXPECT_EQ(p["along:boundary_left:crossing"], "prohibited");
    EXPECT_EQ(p["along:reservation"], "externally/pedestrian");
    EXPECT_EQ(p["along:overtake"], "yes");
    EXPECT_FALSE(p.contains("against:speed:max"));
  }
  EXPECT_TRUE(found);
}

TEST(Export, UncoveredLaneletHasNullSpace) {
  const auto j = json::parse(export_geojson(testing::load_fixture("example_b.osm")));
  int nulls = 0;
  for (const auto& f : j["features"]) nulls += f["properties"]["behavior_space"].is_null();
  EXPECT_EQ(nulls, 1);  // the crosswalk
}

TEST(Export, RouteLineString) {
  const auto map = testing::load_fixture("example_a.osm");
  RouteResult r;
  r.status = RouteStatus::ok;
  for (const char* n : {"P1s", "T", "A", "S2"}) r.path.push_back({*map.resolve_space(n), Direction::along});
  const auto j = json::parse(route_geojson(map, r));
  ASSERT_EQ(j["features"].size(), 1u);
  const auto& line = j["features"][0]["geometry"];
  EXPECT_EQ(line["type"], "LineString");
  EXPECT_EQ(line["coordinates"].size(), 5u);
  EXPECT_EQ(j["features"][0]["properties"]["hops"], 3);
  EXPECT_TRUE(json::parse(route_geojson(map, RouteResult{}))["features"].empty());
}

}  // namespace
}  // namespace bssd
