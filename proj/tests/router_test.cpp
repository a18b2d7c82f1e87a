#include "bssd/error.hpp"
#include "bssd/router.hpp"

#include "fixtures.hpp"
#include "generators.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <algorithm>

namespace bssd {
namespace {

CapabilityProfile profile_file(std::string_view name) {
  return parse_profile(testing::read_text(testing::data_file(name)));
}

VertexKey along(const SceneryMap& map, std::string_view name) { return {*map.resolve_space(name), Direction::along}; }

const ParticipantType kPed(ParticipantKind::pedestrian);
const ParticipantType kBike(ParticipantKind::bicycle);

Behavior plain() {
  Behavior b;
  b.speed.demands = {{SpeedLimitKind::maximum, 50, std::nullopt}};
  b.boundary_long.demands = {{CrossingPermission::allowed, std::nullopt}};
  b.boundary_left.demands = {{CrossingPermission::prohibited, std::nullopt}};
  b.boundary_right.demands = {{CrossingPermission::prohibited, std::nullopt}};
  b.reservation.demands = {{ReservationKind::own, {}, {}, std::nullopt}};
  b.overtake.demands = {{true, std::nullopt}};
  return b;
}

TEST(Profile, ParseAndFormat) {
  const auto p = profile_file("no_pedestrian_yield.profile");
  EXPECT_EQ(p.max_speed_kmh, 130);
  EXPECT_FALSE(p.yieldable.count(kPed));
  EXPECT_TRUE(p.yieldable.count(kBike));
  EXPECT_EQ(p.supported_conditions.size(), 5u);
  EXPECT_FALSE(p.may_enter_externally_reserved);
  EXPECT_EQ(parse_profile(format_profile(p)), p);
  EXPECT_THROW(parse_profile("max_speed_kmh: 0\n"), Error);
  EXPECT_THROW(parse_profile("wings: yes\n"), Error);
  EXPECT_THROW(parse_profile("may_cross_conditional: perhaps\n"), Error);
  EXPECT_EQ(parse_profile(""), CapabilityProfile{});
}

TEST(Profile, Subprofile) {
  const auto full = CapabilityProfile::full(130);
  const auto none = CapabilityProfile{};
  EXPECT_TRUE(is_subprofile(none, full));
  EXPECT_FALSE(is_subprofile(full, none));
  EXPECT_TRUE(is_subprofile(full, full));
  testing::Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    const auto p = testing::random_profile(rng);
    EXPECT_TRUE(is_subprofile(p, testing::widen(rng, p)));
  }
}

TEST(Occupancy, MinimumSpeed) {
  Behavior b = plain();
  b.speed.demands.push_back({SpeedLimitKind::minimum, 60, std::nullopt});
  CapabilityProfile p;
  p.max_speed_kmh = 50;
  const auto r = occupancy(b, p);
  EXPECT_FALSE(r);
  EXPECT_EQ(r.attribute, "speed");
  p.max_speed_kmh = 60;
  EXPECT_TRUE(occupancy(b, p));
}

TEST(Occupancy, Reservations) {
  Behavior b = plain();
  b.reservation.demands = {{ReservationKind::externally, {kPed}, {}, std::nullopt}};
  CapabilityProfile p;
  const auto r = occupancy(b, p);
  EXPECT_FALSE(r);
  EXPECT_EQ(r.reason(), "reservation: externally/pedestrians");
  p.yieldable = {kPed};
  EXPECT_TRUE(occupancy(b, p));
  p.yieldable.clear();
  p.may_enter_externally_reserved = true;
  EXPECT_TRUE(occupancy(b, p));

  // Conditional reservations count as if their condition held.
  b.reservation.demands = {{ReservationKind::equally, {kBike}, {}, Condition::time_window(7 * 60, 9 * 60)}};
  EXPECT_FALSE(occupancy(b, CapabilityProfile{}));
  b.reservation.demands = {{ReservationKind::none, {}, {}, std::nullopt}};
  EXPECT_TRUE(occupancy(b, CapabilityProfile{}));
}

TEST(Crossing, Permissions) {
  using P = CrossingPermission;
  CapabilityProfile p;
  EXPECT_TRUE(crossing({{P::allowed, std::nullopt}}, p, "x"));
  EXPECT_TRUE(crossing({}, p, "x"));
  EXPECT_FALSE(crossing({{P::prohibited, std::nullopt}}, p, "x"));
  EXPECT_FALSE(crossing({{P::not_possible, std::nullopt}}, CapabilityProfile::full(), "x"));
  EXPECT_FALSE(crossing({{P::prohibited, std::nullopt}}, CapabilityProfile::full(), "x"));
  const std::vector<CrossingDemand> nst = {{P::conditional, Condition::no_stagnant_traffic()}};
  EXPECT_FALSE(crossing(nst, p, "x"));
  p.may_cross_conditional = true;
  EXPECT_FALSE(crossing(nst, p, "x"));
  p.supported_conditions = {ConditionKind::no_stagnant_traffic};
  EXPECT_TRUE(crossing(nst, p, "x"));
  // One passable demand is enough.
  EXPECT_TRUE(crossing({{P::prohibited, std::nullopt}, {P::conditional, Condition::no_stagnant_traffic()}}, p, "x"));
  EXPECT_EQ(crossing({{P::not_possible, std::nullopt}}, p, "boundary_left").reason(), "boundary_left: not_possible");
}

TEST(Admissible, UnknownElements) {
  const auto map = testing::load_fixture("example_a.osm");
  const auto g = build_graph(map);
  const auto p = CapabilityProfile::full();
  EXPECT_THROW(admissible(g, VertexKey{5, Direction::along}, p), Error);
  EXPECT_THROW(admissible(g, Edge{along(map, "A"), along(map, "T"), EdgeKind::longitudinal_successor, {}}, p), Error);
  EXPECT_TRUE(admissible(g, along(map, "A"), p));
  EXPECT_FALSE(admissible(g, along(map, "A"), profile_file("no_pedestrian_yield.profile")));
}

TEST(Route, RightTurnWithFullCapability) {
  const auto map = testing::load_fixture("example_a.osm");
  const auto g = build_graph(map);
  const auto r = plan_route(g, along(map, "P1s"), along(map, "S2"), profile_file("full.profile"));
  EXPECT_EQ(r.status, RouteStatus::ok);
  EXPECT_EQ(r.path, (std::vector<VertexKey>{along(map, "P1s"), along(map, "T"), along(map, "A"), along(map, "S2")}));
  EXPECT_EQ(r.hops(), 3u);
  EXPECT_TRUE(r.blocked.empty());
}

TEST(Route, NoPedestrianYieldBlocksA) {
  const auto map = testing::load_fixture("example_a.osm");
  const auto g = build_graph(map);
  const auto r = plan_route(g, along(map, "P1s"), along(map, "S2"), profile_file("no_pedestrian_yield.profile"));
  EXPECT_EQ(r.status, RouteStatus::no_route);
  EXPECT_TRUE(r.path.empty());
  ASSERT_EQ(r.blocked.size(), 1u);
  EXPECT_EQ(r.blocked[0].vertex, along(map, "A"));
  EXPECT_EQ(r.blocked[0].demand, "externally/pedestrians");
  // Straight on is unaffected.
  const auto straight = plan_route(g, along(map, "P1s"), along(map, "P3s"), profile_file("no_pedestrian_yield.profile"));
  EXPECT_EQ(straight.status, RouteStatus::ok);
  EXPECT_EQ(straight.hops(), 2u);
}

TEST(Route, BicycleLaneGating) {
  const auto map = testing::load_fixture("example_b.osm");
  const auto g = build_graph(map);
  auto p = CapabilityProfile::full();
  p.may_enter_externally_reserved = false;
  p.yieldable = {kPed};
  const auto r = plan_route(g, along(map, "VS1"), along(map, "BS3"), p);
  // Every bicycle-lane vertex on the way wants bicycles yielded to.
  EXPECT_EQ(r.status, RouteStatus::no_route);
  p.may_enter_externally_reserved = true;
  EXPECT_EQ(plan_route(g, along(map, "VS1"), along(map, "BS3"), p).status, RouteStatus::ok);
}

TEST(Route, TrivialAndUnknown) {
  const auto map = testing::load_fixture("example_a.osm");
  const auto g = build_graph(map);
  const auto r = plan_route(g, along(map, "A"), along(map, "A"), CapabilityProfile{});
  EXPECT_EQ(r.status, RouteStatus::ok);
  EXPECT_EQ(r.hops(), 0u);
  try {
    plan_route(g, along(map, "A"), {1, Direction::against}, CapabilityProfile{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::unknown_vertex);
  }
}

TEST(Route, JsonShape) {
  const auto map = testing::load_fixture("example_a.osm");
  const auto g = build_graph(map);
  const auto r = plan_route(g, along(map, "P1s"), along(map, "S2"), profile_file("no_pedestrian_yield.profile"));
  const auto j = nlohmann::json::parse(route_json(r));
  EXPECT_EQ(j["status"], "no_route");
  EXPECT_EQ(j["blocked"][0]["space"], 1000);
  EXPECT_EQ(j["blocked"][0]["reason"], "reservation: externally/pedestrians");
}

TEST(Route, GridMatchesOracleForAllPairs) {
  const auto map = testing::load_fixture("route_grid.osm");
  const auto g = build_graph(map);
  const auto p = profile_file("grid.profile");
  int routes = 0;
  for (const auto& [from, fb] : g.vertices()) {
    for (const auto& [to, tb] : g.vertices()) {
      const auto r = plan_route(g, from, to, p);
      const auto o = testing::brute_force_route(g, from, to, p);
      ASSERT_EQ(r.status == RouteStatus::ok, o.has_value()) << from.str() << " -> " << to.str();
      if (o) {
        EXPECT_EQ(r.path, *o) << from.str() << " -> " << to.str();
      }
      routes += o.has_value();
    }
  }
  EXPECT_GT(routes, 12);
  EXPECT_LT(routes, 144);
}

// Property: the router agrees with exhaustive enumeration on small graphs.
TEST(Property, MatchesBruteForce) {
  for (std::uint64_t seed = 0; seed < 250; ++seed) {
    testing::Rng rng(seed);
    const auto g = testing::random_graph(rng, 12);
    const auto p = testing::random_profile(rng);
    for (const auto& [from, fb] : g.vertices()) {
      for (const auto& [to, tb] : g.vertices()) {
        const auto r = plan_route(g, from, to, p);
        const auto o = testing::brute_force_route(g, from, to, p);
        ASSERT_EQ(r.status == RouteStatus::ok, o.has_value()) << "seed " << seed;
        if (o) {
          ASSERT_EQ(r.path, *o) << "seed " << seed;
        }
      }
    }
  }
}

// Property: blocked vertices are never on the returned path and every one
// of them has a rejected in-edge.
TEST(Property, BlockedAlternativesAreConsistent) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    testing::Rng rng(seed + 1000);
    const auto g = testing::random_graph(rng, 10);
    const auto p = testing::random_profile(rng);
    const auto from = g.vertices().begin()->first;
    const auto to = g.vertices().rbegin()->first;
    const auto r = plan_route(g, from, to, p);
    EXPECT_TRUE(std::is_sorted(r.blocked.begin(), r.blocked.end(),
                               [](const auto& a, const auto& b) { return a.vertex < b.vertex; }));
    for (const auto& b : r.blocked) {
      EXPECT_EQ(std::find(r.path.begin(), r.path.end(), b.vertex), r.path.end());
      bool rejected = false;
      for (const auto& e : g.edges()) rejected |= e.to == b.vertex && !admissible(g, e, p);
      EXPECT_TRUE(rejected);
    }
  }
}

// Property: more capability never lengthens the optimal route.
TEST(Property, Monotonicity) {
  testing::Rng rng(99);
  int compared = 0;
  for (int i = 0; i < 600; ++i) {
    const auto g = testing::random_graph(rng, 12);
    const auto p = testing::random_profile(rng);
    const auto q = testing::widen(rng, p);
    ASSERT_TRUE(is_subprofile(p, q));
    for (const auto& [from, fb] : g.vertices()) {
      const auto& to = g.vertices().rbegin()->first;
      const auto narrow = plan_route(g, from, to, p);
      if (narrow.status != RouteStatus::ok) continue;
      const auto wide = plan_route(g, from, to, q);
      ASSERT_EQ(wide.status, RouteStatus::ok);
      EXPECT_LE(wide.hops(), narrow.hops());
      ++compared;
    }
  }
  EXPECT_GT(compared, 500);
}

}  // namespace
}  // namespace bssd
