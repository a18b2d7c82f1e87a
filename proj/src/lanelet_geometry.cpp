#include "bssd/lanelet_geometry.hpp"

#include <algorithm>
#include <cmath>

namespace bssd {

std::optional<std::vector<LatLon>> node_positions(const OsmDocument& doc, std::span<const OsmId> nodes) {
  std::vector<LatLon> out;
  out.reserve(nodes.size());
  for (OsmId id : nodes) {
    const OsmNode* n = doc.find_node(id);
    if (!n) return std::nullopt;
    out.push_back({n->lat, n->lon});
  }
  return out;
}

double distance(LatLon a, LatLon b) { return std::hypot(a.lat - b.lat, a.lon - b.lon); }

double polyline_length(std::span<const LatLon> points) {
  double total = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) total += distance(points[i - 1], points[i]);
  return total;
}

PolylinePoint point_at_fraction(std::span<const LatLon> points, double fraction) {
  const double target = polyline_length(points) * fraction;
  double walked = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double len = distance(points[i - 1], points[i]);
    if (walked + len >= target || i + 1 == points.size()) {
      const double t = len > 0.0 ? std::clamp((target - walked) / len, 0.0, 1.0) : 0.0;
      PolylinePoint p;
      p.segment = i - 1;
      p.position = {points[i - 1].lat + t * (points[i].lat - points[i - 1].lat),
                    points[i - 1].lon + t * (points[i].lon - points[i - 1].lon)};
      if (t == 0.0) p.vertex = i - 1;
      else if (t == 1.0) p.vertex = i;
      return p;
    }
    walked += len;
  }
  return {points.empty() ? LatLon{} : points.front(), 0, 0};
}

namespace {

LatLon centroid(const std::vector<LatLon>& pts) {
  LatLon c;
  for (const auto& p : pts) {
    c.lat += p.lat;
    c.lon += p.lon;
  }
  c.lat /= static_cast<double>(pts.size());
  c.lon /= static_cast<double>(pts.size());
  return c;
}

}  // namespace

std::optional<OrientedBounds> orient_bounds(const OsmDocument& doc, const OsmWay& left, const OsmWay& right) {
  if (left.nodes.size() < 2 || right.nodes.size() < 2) return std::nullopt;
  auto lp = node_positions(doc, left.nodes);
  auto rp = node_positions(doc, right.nodes);
  if (!lp || !rp) return std::nullopt;

  OrientedBounds out{left.nodes, right.nodes};
  const double straight = distance(lp->front(), rp->front()) + distance(lp->back(), rp->back());
  const double crossed = distance(lp->front(), rp->back()) + distance(lp->back(), rp->front());
  if (straight > crossed) {
    std::reverse(out.right.begin(), out.right.end());
    std::reverse(rp->begin(), rp->end());
  }

  // Travel direction runs from the front pair to the back pair; the left
  // bound must lie on the positive side.
  const LatLon front{(lp->front().lat + rp->front().lat) / 2, (lp->front().lon + rp->front().lon) / 2};
  const LatLon back{(lp->back().lat + rp->back().lat) / 2, (lp->back().lon + rp->back().lon) / 2};
  const LatLon cl = centroid(*lp);
  const LatLon cr = centroid(*rp);
  const double dx = back.lon - front.lon;
  const double dy = back.lat - front.lat;
  const double ox = cl.lon - cr.lon;
  const double oy = cl.lat - cr.lat;
  if (dx * oy - dy * ox < 0.0) {
    std::reverse(out.left.begin(), out.left.end());
    std::reverse(out.right.begin(), out.right.end());
  }
  return out;
}

}  // namespace bssd
