#include "bssd/builder.hpp"
#include "bssd/error.hpp"
#include "bssd/fingerprint.hpp"
#include "bssd/validator.hpp"

#include "fixtures.hpp"
#include "generators.hpp"

#include <gtest/gtest.h>

#include <algorithm>

namespace bssd {
namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return ErrorCode::io;
}

// Demand content only: order-free, no ids.
bool same_demands(const Behavior& a, const Behavior& b) { return compare_behaviors(a, b).all_equal(); }

TEST(Annotate, RestoresRemovedSpace) {
  auto doc = testing::fixture_document("example_a.osm");
  const OsmId u = testing::lanelet_of(doc, "U");
  const auto original = seal(doc);
  const Behavior behavior = original.find_space(*original.resolve_space("U"))->along;
  doc.relations.erase(testing::space_named(doc, "U"));
  const auto stripped = seal(doc);

  const auto r = annotate(stripped, {u}, behavior, std::nullopt, "U");
  const auto* space = r.map.find_space(r.space);
  ASSERT_TRUE(space);
  EXPECT_TRUE(same_demands(space->along, behavior));
  EXPECT_EQ(r.map.resolve_space("U"), r.space);
  EXPECT_LT(r.space, 0);
  // The entry linestring already existed and is reused.
  EXPECT_EQ(r.map.document().ways.size(), stripped.document().ways.size());
  // The old behavior relations stay behind as orphans; only warnings.
  const auto findings = validate(r.map, build_graph(r.map));
  EXPECT_EQ(count_errors(findings), 0u) << findings_text(findings);
  EXPECT_EQ(build_graph(r.map).edges().size(), build_graph(original).edges().size());
}

TEST(Annotate, BidirectionalChainGetsAgainst) {
  auto doc = testing::fixture_document("route_grid.osm");
  const OsmId l1 = testing::lanelet_of(doc, "L1");
  const OsmId l2 = testing::lanelet_of(doc, "L2");
  doc.relations.erase(testing::space_named(doc, "L1"));
  doc.relations.erase(testing::space_named(doc, "L2"));
  const auto map = seal(doc);
  const auto spec = derive_defaults(map, l1, {30});
  ASSERT_TRUE(spec.against);
  const auto r = annotate(map, {l1, l2}, spec.along, spec.against);
  const auto* s = r.map.find_space(r.space);
  ASSERT_TRUE(s && s->against);
  EXPECT_EQ(s->lanes, (std::vector<OsmId>{l1, l2}));
  // Against boundaries sit on the mirrored bounds, in travel order.
  const auto& lane1 = *r.map.find_lane(l1);
  const auto& lane2 = *r.map.find_lane(l2);
  EXPECT_EQ(s->along.boundary_left.geometry_refs, (std::vector<OsmId>{lane1.left_bound, lane2.left_bound}));
  EXPECT_EQ(s->against->boundary_left.geometry_refs, (std::vector<OsmId>{lane2.right_bound, lane1.right_bound}));
  EXPECT_EQ(count_errors(validate(r.map, build_graph(r.map))), 0u);
  // Without against on a bidirectional chain the invariant fails.
  EXPECT_EQ(code_of([&] { annotate(map, {l1}, spec.along, std::nullopt); }), ErrorCode::invariant_violation);
}

TEST(Annotate, Errors) {
  const auto map = testing::load_fixture("example_a.osm");
  const auto spec = derive_defaults(map, testing::lanelet_of(map.document(), "A"), {30});
  EXPECT_EQ(code_of([&] { annotate(map, {testing::lanelet_of(map.document(), "A")}, spec.along, std::nullopt); }),
            ErrorCode::already_covered);
  EXPECT_EQ(code_of([&] { annotate(map, {987654}, spec.along, std::nullopt); }), ErrorCode::unknown_lanelet);
  EXPECT_EQ(code_of([&] { annotate(map, {}, spec.along, std::nullopt); }), ErrorCode::invalid_argument);

  auto doc = testing::fixture_document("example_a.osm");
  const OsmId p1 = testing::lanelet_of(doc, "P1n");
  const OsmId p3 = testing::lanelet_of(doc, "P3n");
  doc.relations.erase(testing::space_named(doc, "P1n"));
  doc.relations.erase(testing::space_named(doc, "P3n"));
  const auto open = seal(doc);
  EXPECT_EQ(code_of([&] { annotate(open, {p1, p3}, spec.along, std::nullopt); }), ErrorCode::invalid_argument);

  Behavior bad_link = spec.along;
  bad_link.reservation.demands = {{ReservationKind::externally, {ParticipantType(ParticipantKind::pedestrian)},
                                   {{testing::along_of(doc, "A"), LinkRole::origin}}, std::nullopt}};
  EXPECT_EQ(code_of([&] { annotate(open, {p1}, bad_link, std::nullopt); }), ErrorCode::invalid_argument);

  Behavior no_speed = spec.along;
  no_speed.speed.demands.clear();
  EXPECT_EQ(code_of([&] { annotate(open, {p1}, no_speed, std::nullopt); }), ErrorCode::invariant_violation);
}

TEST(Derive, FromLineTypes) {
  const auto map = testing::load_fixture("example_b.osm");
  const auto spec = derive_defaults(map, testing::lanelet_of(map.document(), "BS1"), {50});
  EXPECT_TRUE(spec.provisional);
  EXPECT_FALSE(spec.against);
  EXPECT_EQ(spec.along.speed.demands.at(0).value_kmh, 50);
  EXPECT_EQ(spec.along.boundary_left.demands.at(0).permission, CrossingPermission::allowed);
  EXPECT_EQ(spec.along.boundary_right.demands.at(0).permission, CrossingPermission::not_possible);
  EXPECT_TRUE(check(spec.along).empty());
  EXPECT_EQ(code_of([&] { derive_defaults(map, 1, {50}); }), ErrorCode::unknown_lanelet);
}

TEST(Derive, AgainstSwapsSides) {
  const auto map = testing::load_fixture("route_grid.osm");
  const auto spec = derive_defaults(map, testing::lanelet_of(map.document(), "R1"), {50});
  ASSERT_TRUE(spec.against);
  EXPECT_EQ(spec.along.boundary_left.demands, spec.against->boundary_right.demands);
  EXPECT_EQ(spec.along.boundary_right.demands, spec.against->boundary_left.demands);
  EXPECT_EQ(spec.against->direction, Direction::against);
}

TEST(Derive, LinestringPermissions) {
  using P = CrossingPermission;
  EXPECT_EQ(permission_from_linestring({{"type", "curbstone"}, {"subtype", "high"}}), P::not_possible);
  EXPECT_EQ(permission_from_linestring({{"type", "fence"}}), P::not_possible);
  EXPECT_EQ(permission_from_linestring({{"type", "virtual"}}), P::allowed);
  EXPECT_EQ(permission_from_linestring({{"type", "line_thin"}, {"subtype", "dashed"}}), P::allowed);
  EXPECT_EQ(permission_from_linestring({{"type", "line_thick"}, {"subtype", "solid"}}), P::prohibited);
  EXPECT_EQ(permission_from_linestring({{"type", "line_thin"}, {"subtype", "solid_dashed"}}), P::prohibited);
  EXPECT_EQ(permission_from_linestring({}), P::prohibited);
}

TEST(Spec, ParsesTheDocumentedBlock) {
  const auto b = parse_behavior_spec(R"(# space A
speed:max: 30
overtake: yes
boundary_long:crossing: conditional
boundary_long:condition: no_stagnant_traffic
boundary_left:crossing: prohibited
boundary_right:crossing: prohibited
reservation: externally
object: pedestrian
reservation:link: 31;32
reservation:link:destination: 33
)");
  EXPECT_TRUE(check(b).empty());
  ASSERT_EQ(b.reservation.demands.size(), 1u);
  EXPECT_EQ(b.reservation.demands[0].links.size(), 3u);
  EXPECT_EQ(b.reservation.demands[0].links[2].role, LinkRole::destination);
  EXPECT_EQ(b.boundary_long.demands.at(0).condition, Condition::no_stagnant_traffic());
}

TEST(Spec, Errors) {
  EXPECT_EQ(code_of([] { parse_behavior_spec("speed:max 30\n"); }), ErrorCode::schema);
  EXPECT_EQ(code_of([] { parse_behavior_spec("colour: red\n"); }), ErrorCode::schema);
  EXPECT_EQ(code_of([] { parse_behavior_spec("object: pedestrian\n"); }), ErrorCode::schema);
  EXPECT_EQ(code_of([] { parse_behavior_spec("speed:max: 30\nspeed:max: 40\n"); }), ErrorCode::schema);
  EXPECT_EQ(code_of([] { parse_behavior_spec("reservation: own\nreservation:link: x\n"); }), ErrorCode::schema);
}

// Property: format then parse preserves the demand content.
TEST(Property, SpecRoundTrip) {
  testing::Rng rng(8);
  for (int i = 0; i < 300; ++i) {
    const auto b = testing::random_behavior(rng, Direction::along);
    const auto back = parse_behavior_spec(format_behavior_spec(b));
    EXPECT_TRUE(same_demands(b, back)) << format_behavior_spec(b);
    for (std::size_t k = 0; k < b.reservation.demands.size(); ++k) {
      auto x = b.reservation.demands[k].links;
      auto y = back.reservation.demands.at(k).links;
      std::sort(x.begin(), x.end());
      std::sort(y.begin(), y.end());
      EXPECT_EQ(x, y);
    }
  }
}

}  // namespace
}  // namespace bssd
