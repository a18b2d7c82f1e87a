#include "bssd/geojson.hpp"

#include "bssd/lanelet_geometry.hpp"
#include "bssd/tag_schema.hpp"

#include <json.hpp>

#include <algorithm>

namespace bssd {

namespace sc = schema;
using nlohmann::json;

namespace {

json position(LatLon p) { return json::array({p.lon, p.lat}); }

void flatten(const Behavior& b, std::string_view prefix, json& props) {
  Tags tags;
  sc::encode_speed(b.speed, tags);
  sc::encode_overtake(b.overtake, tags);
  const std::pair<std::string_view, const BoundaryAttribute*> boundaries[] = {
      {"boundary_long", &b.boundary_long}, {"boundary_left", &b.boundary_left}, {"boundary_right", &b.boundary_right}};
  for (const auto& [name, attr] : boundaries) {
    Tags bt;
    sc::encode_crossing(attr->demands, bt);
    for (auto& [k, v] : bt) tags[std::string(name) + ":" + k] = v;
  }
  std::string reservations;
  for (const auto& d : b.reservation.demands) {
    Tags rt;
    sc::encode_reservation(d, rt);
    std::string item = rt["reservation"];
    if (rt.count("object")) item += "/" + rt["object"];
    if (rt.count("condition")) item += " @ " + rt["condition"];
    reservations += (reservations.empty() ? "" : "; ") + item;
  }
  tags["reservation"] = reservations;
  for (const auto& [k, v] : tags) props[std::string(prefix) + ":" + k] = v;
}

std::optional<OsmId> space_of(const SceneryMap& map, OsmId lanelet) {
  auto it = map.coverage().find(lanelet);
  if (it == map.coverage().end()) return std::nullopt;
  for (OsmId s : it->second) {
    if (map.find_space(s)) return s;
  }
  return std::nullopt;
}

}  // namespace

std::string export_geojson(const SceneryMap& map) {
  const auto& doc = map.document();
  auto features = json::array();
  for (const auto& [id, lane] : map.lanes()) {
    auto left = node_positions(doc, lane.left_nodes);
    auto right = node_positions(doc, lane.right_nodes);
    if (!left || !right) continue;
    auto ring = json::array();
    // Counterclockwise exterior ring: right bound forward, left bound back.
    for (const auto& p : *right) ring.push_back(position(p));
    for (auto it = left->rbegin(); it != left->rend(); ++it) ring.push_back(position(*it));
    ring.push_back(position(right->front()));

    json props;
    props["id"] = id;
    props["kind"] = lane.kind == LaneKind::other ? lane.kind_label : std::string(to_string(lane.kind));
    if (const auto s = space_of(map, id)) {
      props["behavior_space"] = *s;
      const auto& space = *map.find_space(*s);
      flatten(space.along, "along", props);
      if (space.against) flatten(*space.against, "against", props);
    } else {
      props["behavior_space"] = nullptr;
    }
    features.push_back({{"type", "Feature"},
                        {"geometry", {{"type", "Polygon"}, {"coordinates", json::array({ring})}}},
                        {"properties", props}});
  }
  json fc{{"type", "FeatureCollection"}, {"features", features}};
  return fc.dump(2) + "\n";
}

std::string route_geojson(const SceneryMap& map, const RouteResult& route) {
  const auto& doc = map.document();
  auto coords = json::array();
  for (const auto& step : route.path) {
    const auto* space = map.find_space(step.space);
    if (!space) continue;
    std::vector<OsmId> lanes = space->lanes;
    if (step.direction == Direction::against) std::reverse(lanes.begin(), lanes.end());
    for (OsmId id : lanes) {
      const auto& lane = map.lanes().at(id);
      auto left = node_positions(doc, lane.left_nodes);
      auto right = node_positions(doc, lane.right_nodes);
      if (!left || !right) continue;
      LatLon start{(left->front().lat + right->front().lat) / 2, (left->front().lon + right->front().lon) / 2};
      LatLon end{(left->back().lat + right->back().lat) / 2, (left->back().lon + right->back().lon) / 2};
      if (step.direction == Direction::against) std::swap(start, end);
      if (coords.empty() || coords.back() != position(start)) coords.push_back(position(start));
      coords.push_back(position(end));
    }
  }
  auto features = json::array();
  if (coords.size() >= 2) {
    features.push_back({{"type", "Feature"},
                        {"geometry", {{"type", "LineString"}, {"coordinates", coords}}},
                        {"properties", {{"status", route.status == RouteStatus::ok ? "ok" : "no_route"},
                                        {"hops", route.hops()}}}});
  }
  json fc{{"type", "FeatureCollection"}, {"features", features}};
  return fc.dump(2) + "\n";
}

}  // namespace bssd
