#pragma once

#include "bssd/router.hpp"
#include "bssd/scenery_map.hpp"

#include <string>

namespace bssd {

/// FeatureCollection with one Polygon per interpretable lanelet (sorted by
/// id). Properties: id, kind, behavior_space and the space's demands
/// flattened to "<direction>:<tag>" keys, e.g. "along:speed:max".
std::string export_geojson(const SceneryMap& map);

/// LineString through the lane centerlines of a route, in travel order.
/// Empty FeatureCollection when the route has no geometry.
std::string route_geojson(const SceneryMap& map, const RouteResult& route);

}  // namespace bssd
