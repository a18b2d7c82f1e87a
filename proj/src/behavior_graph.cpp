#include "bssd/behavior_graph.hpp"

#include "bssd/error.hpp"
#include "bssd/lanelet_edit.hpp"

#include <algorithm>
#include <charconv>
#include <tuple>

namespace bssd {

std::string VertexKey::str() const { return std::to_string(space) + ":" + std::string(to_string(direction)); }

std::optional<VertexKey> parse_vertex_key(std::string_view s) {
  VertexKey key;
  const auto colon = s.find(':');
  const auto id = s.substr(0, colon);
  const auto res = std::from_chars(id.data(), id.data() + id.size(), key.space);
  if (id.empty() || res.ec != std::errc{} || res.ptr != id.data() + id.size()) return std::nullopt;
  if (colon == std::string_view::npos) return key;
  auto d = parse_direction(s.substr(colon + 1));
  if (!d) return std::nullopt;
  key.direction = *d;
  return key;
}

std::string_view to_string(EdgeKind k) {
  switch (k) {
    case EdgeKind::longitudinal_successor: return "longitudinal_successor";
    case EdgeKind::lateral_left: return "lateral_left";
    case EdgeKind::lateral_right: return "lateral_right";
  }
  return "?";
}

namespace {

bool edge_order(const Edge& a, const Edge& b) {
  return std::tie(a.from, a.kind, a.to) < std::tie(b.from, b.kind, b.to);
}

}  // namespace

BehaviorGraph::BehaviorGraph(std::map<VertexKey, Behavior> vertices, std::vector<Edge> edges,
                             std::vector<GraphConflict> conflicts)
    : vertices_(std::move(vertices)), edges_(std::move(edges)), conflicts_(std::move(conflicts)) {
  std::sort(edges_.begin(), edges_.end(), edge_order);
  edges_.erase(std::unique(edges_.begin(), edges_.end(),
                           [](const Edge& a, const Edge& b) { return !edge_order(a, b) && !edge_order(b, a); }),
               edges_.end());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (!contains(e.from) || !contains(e.to)) {
      throw Error(ErrorCode::unknown_vertex, "edge " + e.from.str() + " -> " + e.to.str() + " leaves the vertex set");
    }
    if (i > 0 && e.kind != EdgeKind::longitudinal_successor && edges_[i - 1].from == e.from &&
        edges_[i - 1].kind == e.kind) {
      throw Error(ErrorCode::invariant_violation,
                  e.from.str() + " has more than one " + std::string(to_string(e.kind)) + " edge");
    }
    auto [it, fresh] = out_range_.try_emplace(e.from, i, i + 1);
    if (!fresh) it->second.second = i + 1;
  }
}

const Behavior& BehaviorGraph::behavior(VertexKey v) const {
  auto it = vertices_.find(v);
  if (it == vertices_.end()) throw Error(ErrorCode::unknown_vertex, "no vertex " + v.str());
  return it->second;
}

std::vector<const Edge*> BehaviorGraph::out_edges(VertexKey v) const {
  if (!contains(v)) throw Error(ErrorCode::unknown_vertex, "no vertex " + v.str());
  std::vector<const Edge*> out;
  if (auto it = out_range_.find(v); it != out_range_.end()) {
    for (std::size_t i = it->second.first; i < it->second.second; ++i) out.push_back(&edges_[i]);
  }
  return out;
}

std::vector<VertexKey> BehaviorGraph::successors(VertexKey v) const {
  std::vector<VertexKey> out;
  for (const Edge* e : out_edges(v)) {
    if (e->kind == EdgeKind::longitudinal_successor) out.push_back(e->to);
  }
  return out;
}

LateralNeighbors BehaviorGraph::lateral_neighbors(VertexKey v) const {
  LateralNeighbors out;
  for (const Edge* e : out_edges(v)) {
    if (e->kind == EdgeKind::lateral_left) out.left = e->to;
    if (e->kind == EdgeKind::lateral_right) out.right = e->to;
  }
  return out;
}

const Edge* BehaviorGraph::find_edge(VertexKey from, VertexKey to) const {
  if (!contains(from)) return nullptr;
  for (const Edge* e : out_edges(from)) {
    if (e->to == to) return e;
  }
  return nullptr;
}

std::string BehaviorGraph::dump() const {
  std::string out;
  for (const auto& e : edges_) {
    out += e.from.str() + " " + e.to.str() + " " + std::string(to_string(e.kind)) + "\n";
  }
  return out;
}

NodePair entry_pair(const SceneryMap& map, const AtomicBehaviorSpace& space, Direction d) {
  if (d == Direction::along) {
    const auto& first = map.lanes().at(space.lanes.front());
    return {first.left_nodes.front(), first.right_nodes.front()};
  }
  const auto& last = map.lanes().at(space.lanes.back());
  return {last.right_nodes.back(), last.left_nodes.back()};
}

NodePair exit_pair(const SceneryMap& map, const AtomicBehaviorSpace& space, Direction d) {
  if (d == Direction::along) {
    const auto& last = map.lanes().at(space.lanes.back());
    return {last.left_nodes.back(), last.right_nodes.back()};
  }
  const auto& first = map.lanes().at(space.lanes.front());
  return {first.right_nodes.front(), first.left_nodes.front()};
}

namespace {

// Bound ways on one side in travel order, each with the node travel starts at.
using Side = std::vector<std::pair<OsmId, OsmId>>;

Side side_of(const SceneryMap& map, const AtomicBehaviorSpace& space, Direction d, bool left) {
  Side out;
  // Along: the driver's left is the lanelet's left bound. Against swaps
  // sides and reverses travel.
  const bool use_left_bound = (d == Direction::along) == left;
  auto push = [&](const LaneElement& lane) {
    const auto& nodes = use_left_bound ? lane.left_nodes : lane.right_nodes;
    const OsmId way = use_left_bound ? lane.left_bound : lane.right_bound;
    out.emplace_back(way, d == Direction::along ? nodes.front() : nodes.back());
  };
  if (d == Direction::along) {
    for (OsmId id : space.lanes) push(map.lanes().at(id));
  } else {
    for (auto it = space.lanes.rbegin(); it != space.lanes.rend(); ++it) push(map.lanes().at(*it));
  }
  return out;
}

}  // namespace

BehaviorGraph build_graph(const SceneryMap& map) {
  std::map<VertexKey, Behavior> vertices;
  for (const auto& [id, space] : map.spaces()) {
    vertices.emplace(VertexKey{id, Direction::along}, space.along);
    if (space.against) vertices.emplace(VertexKey{id, Direction::against}, *space.against);
  }

  std::map<NodePair, std::vector<VertexKey>> by_entry;
  // Indexed by side: [0] right sides, [1] left sides.
  std::map<Side, std::vector<VertexKey>> by_side[2];
  for (const auto& [key, behavior] : vertices) {
    const auto& space = map.spaces().at(key.space);
    by_entry[entry_pair(map, space, key.direction)].push_back(key);
    by_side[0][side_of(map, space, key.direction, false)].push_back(key);
    by_side[1][side_of(map, space, key.direction, true)].push_back(key);
  }

  const auto& doc = map.document();
  std::vector<Edge> edges;
  std::vector<GraphConflict> conflicts;
  for (const auto& [key, behavior] : vertices) {
    const auto& space = map.spaces().at(key.space);

    const NodePair exit = exit_pair(map, space, key.direction);
    if (auto it = by_entry.find(exit); it != by_entry.end()) {
      for (const VertexKey& target : it->second) {
        if (target == key) continue;
        const Behavior& tb = vertices.at(target);
        const bool witnessed = std::any_of(tb.boundary_long.geometry_refs.begin(), tb.boundary_long.geometry_refs.end(),
                                           [&](OsmId way) {
                                             const OsmWay* w = doc.find_way(way);
                                             if (!w || w->nodes.size() < 2) return false;
                                             const auto f = w->nodes.front();
                                             const auto l = w->nodes.back();
                                             return (f == exit.first && l == exit.second) ||
                                                    (f == exit.second && l == exit.first);
                                           });
        if (witnessed) edges.push_back({key, target, EdgeKind::longitudinal_successor, tb.boundary_long.demands});
      }
    }

    // key.left = T iff key's left side is T's right side, and vice versa.
    for (const bool left : {true, false}) {
      std::vector<VertexKey> candidates;
      const auto& index = by_side[left ? 0 : 1];
      if (auto it = index.find(side_of(map, space, key.direction, left)); it != index.end()) {
        for (const VertexKey& other : it->second) {
          if (other != key) candidates.push_back(other);
        }
      }
      if (candidates.empty()) continue;
      const auto kind = left ? EdgeKind::lateral_left : EdgeKind::lateral_right;
      const auto& demands = left ? behavior.boundary_left.demands : behavior.boundary_right.demands;
      edges.push_back({key, candidates.front(), kind, demands});
      if (candidates.size() > 1) conflicts.push_back({key, kind, candidates});
    }
  }
  return BehaviorGraph(std::move(vertices), std::move(edges), std::move(conflicts));
}

std::vector<SequenceStep> sequence_demands(const BehaviorGraph& graph, const std::vector<VertexKey>& path) {
  std::vector<SequenceStep> out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const Behavior& b = graph.behavior(path[i]);
    SequenceStep step{path[i], b, b.boundary_long.demands};
    if (i > 0) {
      const Edge* e = graph.find_edge(path[i - 1], path[i]);
      if (!e) {
        throw Error(ErrorCode::non_adjacent_steps, path[i - 1].str() + " -> " + path[i].str() + " is not an edge");
      }
      step.entry = e->crossing;
    }
    out.push_back(std::move(step));
  }
  return out;
}

}  // namespace bssd
