#pragma once

// Planar helpers over lat/lon (x = lon, y = lat). Desk-scale only: no
// projection.

#include "bssd/osm_document.hpp"

#include <optional>
#include <span>
#include <vector>

namespace bssd {

struct LatLon {
  double lat = 0.0;
  double lon = 0.0;
};

/// Coordinates of `nodes`; nullopt if any node is missing.
std::optional<std::vector<LatLon>> node_positions(const OsmDocument& doc, std::span<const OsmId> nodes);

double distance(LatLon a, LatLon b);
double polyline_length(std::span<const LatLon> points);

/// Point at `fraction` of the arclength. `segment` is the index of the
/// segment containing it; `vertex` is set when the point coincides with an
/// existing vertex.
struct PolylinePoint {
  LatLon position;
  std::size_t segment = 0;
  std::optional<std::size_t> vertex;
};
PolylinePoint point_at_fraction(std::span<const LatLon> points, double fraction);

struct OrientedBounds {
  std::vector<OsmId> left;
  std::vector<OsmId> right;
};

/// Orders both bound node lists in the lanelet's reference direction. The
/// right bound is first aligned with the left by endpoint distance; both are
/// reversed if the "left" bound actually lies to the right of travel.
/// Nullopt when a bound has fewer than two nodes or a node is missing.
std::optional<OrientedBounds> orient_bounds(const OsmDocument& doc, const OsmWay& left, const OsmWay& right);

}  // namespace bssd
