#include "bssd/lanelet_edit.hpp"

#include "bssd/error.hpp"
#include "bssd/lanelet_geometry.hpp"
#include "bssd/tag_schema.hpp"

#include <algorithm>

namespace bssd {

namespace {

const LaneElement& require_lane(const SceneryMap& map, OsmId id) {
  const LaneElement* lane = map.find_lane(id);
  if (!lane) throw Error(ErrorCode::unknown_lanelet, "no interpretable lanelet " + relation_ref(id).str());
  return *lane;
}

bool way_referenced(const OsmDocument& doc, OsmId way) {
  for (const auto& [id, rel] : doc.relations) {
    for (const auto& m : rel.members) {
      if (m.type == ElementType::way && m.ref == way) return true;
    }
  }
  return false;
}

struct BoundSplit {
  std::vector<OsmId> first;
  std::vector<OsmId> second;
  OsmId cut_node = 0;
};

BoundSplit split_bound(OsmDocument& doc, const std::vector<OsmId>& nodes, double fraction) {
  const auto points = node_positions(doc, nodes);
  if (!points || points->size() < 2) throw Error(ErrorCode::invalid_argument, "bound without geometry");
  const auto at = point_at_fraction(*points, fraction);
  BoundSplit out;
  if (at.vertex && *at.vertex > 0 && *at.vertex + 1 < nodes.size()) {
    const auto k = static_cast<std::ptrdiff_t>(*at.vertex);
    out.cut_node = nodes[*at.vertex];
    out.first.assign(nodes.begin(), nodes.begin() + k + 1);
    out.second.assign(nodes.begin() + k, nodes.end());
    return out;
  }
  out.cut_node = doc.next_id(ElementType::node);
  doc.nodes.emplace(out.cut_node, OsmNode{out.cut_node, at.position.lat, at.position.lon, {}, {}});
  const auto s = static_cast<std::ptrdiff_t>(at.segment);
  out.first.assign(nodes.begin(), nodes.begin() + s + 1);
  out.first.push_back(out.cut_node);
  out.second.push_back(out.cut_node);
  out.second.insert(out.second.end(), nodes.begin() + s + 1, nodes.end());
  return out;
}

OsmId add_way(OsmDocument& doc, std::vector<OsmId> nodes, Tags tags) {
  const OsmId id = doc.next_id(ElementType::way);
  doc.ways.emplace(id, OsmWay{id, std::move(nodes), std::move(tags), {}});
  return id;
}

}  // namespace

std::optional<OsmId> find_spanning_way(const OsmDocument& doc, OsmId a, OsmId b) {
  std::optional<OsmId> best;
  bool best_is_stop = false;
  for (const auto& [id, way] : doc.ways) {
    if (way.nodes.size() < 2) continue;
    const OsmId f = way.nodes.front();
    const OsmId l = way.nodes.back();
    if (!((f == a && l == b) || (f == b && l == a))) continue;
    auto it = way.tags.find("type");
    const bool stop = it != way.tags.end() && it->second == "stop_line";
    if (!best || (stop && !best_is_stop)) {
      best = id;
      best_is_stop = stop;
    }
  }
  return best;
}

OsmId add_longitudinal_boundary(OsmDocument& doc, const LaneElement& lane, LaneletEnd at) {
  if (lane.left_nodes.empty() || lane.right_nodes.empty()) {
    throw Error(ErrorCode::invalid_argument, "lanelet " + relation_ref(lane.id).str() + " has no bound geometry");
  }
  const OsmId l = at == LaneletEnd::start ? lane.left_nodes.front() : lane.left_nodes.back();
  const OsmId r = at == LaneletEnd::start ? lane.right_nodes.front() : lane.right_nodes.back();
  if (auto existing = find_spanning_way(doc, l, r)) return *existing;
  return add_way(doc, {l, r}, Tags{{"type", "virtual"}});
}

BoundaryResult add_longitudinal_boundary(const SceneryMap& map, OsmId lanelet, LaneletEnd at) {
  const LaneElement& lane = require_lane(map, lanelet);
  OsmDocument doc = map.document();
  const auto before = doc.ways.size();
  const OsmId way = add_longitudinal_boundary(doc, lane, at);
  const bool created = doc.ways.size() != before;
  if (!created) return {map, way, false};
  return {seal(std::move(doc), map.limits()), way, true};
}

SplitResult split_lanelet(const SceneryMap& map, OsmId lanelet, double fraction) {
  const LaneElement& lane = require_lane(map, lanelet);
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw Error(ErrorCode::invalid_argument, "cut fraction must lie in (0, 1)");
  }
  OsmDocument doc = map.document();
  const OsmRelation original = doc.relations.at(lanelet);

  const auto left = split_bound(doc, lane.left_nodes, fraction);
  const auto right = split_bound(doc, lane.right_nodes, fraction);
  const Tags left_tags = doc.ways.at(lane.left_bound).tags;
  const Tags right_tags = doc.ways.at(lane.right_bound).tags;

  const OsmId left_a = add_way(doc, left.first, left_tags);
  const OsmId left_b = add_way(doc, left.second, left_tags);
  const OsmId right_a = add_way(doc, right.first, right_tags);
  const OsmId right_b = add_way(doc, right.second, right_tags);
  const OsmId cut = add_way(doc, {left.cut_node, right.cut_node}, Tags{{"type", "virtual"}});

  auto half = [&](OsmId l, OsmId r) {
    OsmRelation rel = original;
    rel.id = doc.next_id(ElementType::relation);
    for (auto& m : rel.members) {
      if (m.type != ElementType::way) continue;
      if (m.role == "left") m.ref = l;
      if (m.role == "right") m.ref = r;
    }
    doc.relations.emplace(rel.id, rel);
    return rel.id;
  };
  const OsmId first = half(left_a, right_a);
  const OsmId second = half(left_b, right_b);
  doc.relations.erase(lanelet);

  std::vector<Diagnostic> diags;
  for (auto& [id, rel] : doc.relations) {
    bool touched = false;
    std::vector<OsmMember> members;
    for (const auto& m : rel.members) {
      if (m.type == ElementType::relation && m.ref == lanelet) {
        members.push_back({ElementType::relation, first, m.role});
        members.push_back({ElementType::relation, second, m.role});
        touched = true;
      } else {
        members.push_back(m);
      }
    }
    if (!touched) continue;
    rel.members = std::move(members);
    if (rel.tag(schema::kType) == schema::kBehaviorSpace) {
      diags.push_back({std::string(rules::kRQ1), Severity::warning, {relation_ref(id)},
                       "behavior_space_needs_reassignment",
                       "lanelet " + relation_ref(lanelet).str() + " was split into " + relation_ref(first).str() +
                           " and " + relation_ref(second).str()});
    }
  }

  for (OsmId way : {lane.left_bound, lane.right_bound}) {
    if (!way_referenced(doc, way)) doc.ways.erase(way);
  }

  SplitResult out;
  out.map = seal(std::move(doc), map.limits());
  out.lanelets = {first, second};
  out.cut_way = cut;
  out.diagnostics = std::move(diags);
  return out;
}

}  // namespace bssd
