#pragma once

#include "bssd/scenery_map.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bssd {

/// A directional behavior of one atomic behavior space.
struct VertexKey {
  OsmId space = 0;
  Direction direction = Direction::along;

  auto operator<=>(const VertexKey&) const = default;
  /// "12:along"
  std::string str() const;
};

/// "12", "12:along" or "12:against"; a bare id means along.
std::optional<VertexKey> parse_vertex_key(std::string_view s);

enum class EdgeKind : std::uint8_t { longitudinal_successor, lateral_left, lateral_right };

std::string_view to_string(EdgeKind k);

struct Edge {
  VertexKey from;
  VertexKey to;
  EdgeKind kind = EdgeKind::longitudinal_successor;
  /// Demands governing the crossing: the target's boundary_long for a
  /// longitudinal edge, the source's boundary_left/right for a lateral one.
  std::vector<CrossingDemand> crossing;

  bool operator==(const Edge&) const = default;
};

struct LateralNeighbors {
  std::optional<VertexKey> left;
  std::optional<VertexKey> right;
};

/// Several lateral candidates on one side; the smallest was kept.
struct GraphConflict {
  VertexKey vertex;
  EdgeKind kind = EdgeKind::lateral_left;
  std::vector<VertexKey> candidates;

  bool operator==(const GraphConflict&) const = default;
};

class BehaviorGraph {
 public:
  BehaviorGraph() = default;

  /// Throws Error(unknown_vertex) for edges leaving the vertex set and
  /// Error(invariant_violation) for a second lateral edge on one side.
  BehaviorGraph(std::map<VertexKey, Behavior> vertices, std::vector<Edge> edges,
                std::vector<GraphConflict> conflicts = {});

  const std::map<VertexKey, Behavior>& vertices() const { return vertices_; }
  /// Sorted by (from, kind, to).
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<GraphConflict>& conflicts() const { return conflicts_; }

  bool contains(VertexKey v) const { return vertices_.count(v) > 0; }
  /// Throws Error(unknown_vertex).
  const Behavior& behavior(VertexKey v) const;
  std::vector<const Edge*> out_edges(VertexKey v) const;
  std::vector<VertexKey> successors(VertexKey v) const;
  LateralNeighbors lateral_neighbors(VertexKey v) const;
  /// Longitudinal edge preferred when several kinds connect the pair.
  const Edge* find_edge(VertexKey from, VertexKey to) const;

  /// One line per edge: "<from> <to> <kind>".
  std::string dump() const;

  bool operator==(const BehaviorGraph& other) const {
    return vertices_ == other.vertices_ && edges_ == other.edges_;
  }

 private:
  std::map<VertexKey, Behavior> vertices_;
  std::vector<Edge> edges_;
  std::map<VertexKey, std::pair<std::size_t, std::size_t>> out_range_;
  std::vector<GraphConflict> conflicts_;
};

/// Vertices are the directional behaviors of the map's valid spaces.
/// Longitudinal: the exit node pair of u equals the entry node pair of v and
/// a way of v's boundary_long spans it. Lateral: the side bound ways, taken in
/// travel order, coincide.
BehaviorGraph build_graph(const SceneryMap& map);

/// Ordered node pair (driver-left, driver-right) where travel enters or
/// leaves the space in direction `d`.
using NodePair = std::pair<OsmId, OsmId>;
NodePair entry_pair(const SceneryMap& map, const AtomicBehaviorSpace& space, Direction d);
NodePair exit_pair(const SceneryMap& map, const AtomicBehaviorSpace& space, Direction d);

struct SequenceStep {
  VertexKey vertex;
  Behavior behavior;
  /// Crossing demands met when entering this step.
  std::vector<CrossingDemand> entry;
};

/// Throws Error(unknown_vertex) or Error(non_adjacent_steps).
std::vector<SequenceStep> sequence_demands(const BehaviorGraph& graph, const std::vector<VertexKey>& path);

}  // namespace bssd
