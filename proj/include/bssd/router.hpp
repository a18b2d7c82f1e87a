#pragma once

#include "bssd/behavior_graph.hpp"

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace bssd {

struct CapabilityProfile {
  double max_speed_kmh = 50.0;
  /// Participant types the vehicle can yield to.
  ParticipantSet yieldable;
  std::set<ConditionKind> supported_conditions;
  bool may_enter_externally_reserved = false;
  bool may_cross_conditional = false;

  /// Every capability, at `max_speed_kmh`.
  static CapabilityProfile full(double max_speed_kmh = 400.0);

  bool operator==(const CapabilityProfile&) const = default;
};

/// Throws Error(invariant_violation) unless max_speed_kmh > 0.
void require_valid(const CapabilityProfile& profile);

/// True if `b` is at least as capable as `a` in every dimension.
bool is_subprofile(const CapabilityProfile& a, const CapabilityProfile& b);

/// Key/value text, one per line:
///   max_speed_kmh: 50
///   yieldable: pedestrian;bicycle
///   supported_conditions: no_stagnant_traffic;traffic_light;time;weather;custom
///   may_enter_externally_reserved: yes
///   may_cross_conditional: yes
/// Missing keys keep their defaults. Throws Error(schema).
CapabilityProfile parse_profile(std::string_view text);
std::string format_profile(const CapabilityProfile& profile);

struct Admissibility {
  bool admissible = true;
  std::string attribute;  // violated attribute, e.g. "reservation"
  std::string demand;     // the unmet demand, e.g. "externally/pedestrians"

  /// "reservation: externally/pedestrians", empty when admissible.
  std::string reason() const { return admissible ? std::string() : attribute + ": " + demand; }
  explicit operator bool() const { return admissible; }
};

/// Can the vehicle be inside a space with this behavior: minimum speeds and
/// reservations. Conditional demands count as if their condition held.
Admissibility occupancy(const Behavior& behavior, const CapabilityProfile& profile);

/// Passable iff some demand is: allowed, or conditional with
/// may_cross_conditional and a supported condition kind.
Admissibility crossing(const std::vector<CrossingDemand>& demands, const CapabilityProfile& profile,
                       std::string_view attribute);

/// Vertex: occupancy and its own boundary_long. Edge: the edge's crossing
/// demands and occupancy of the target. Throws Error(unknown_element).
Admissibility admissible(const BehaviorGraph& graph, VertexKey vertex, const CapabilityProfile& profile);
Admissibility admissible(const BehaviorGraph& graph, const Edge& edge, const CapabilityProfile& profile);

enum class RouteStatus : std::uint8_t { ok, no_route };

struct BlockedAlternative {
  VertexKey vertex;
  std::string demand;
  std::string reason;

  bool operator==(const BlockedAlternative&) const = default;
};

struct RouteResult {
  RouteStatus status = RouteStatus::no_route;
  std::vector<VertexKey> path;
  /// Vertices the search could not enter before reaching the target (or at
  /// all, without a route), one entry each, ordered by vertex.
  std::vector<BlockedAlternative> blocked;

  std::size_t hops() const { return path.empty() ? 0 : path.size() - 1; }
};

/// Shortest admissible path by hop count; among equals the lexicographically
/// smallest vertex sequence. The start vertex itself is not checked.
/// Throws Error(unknown_vertex).
RouteResult plan_route(const BehaviorGraph& graph, VertexKey from, VertexKey to, const CapabilityProfile& profile);

std::string route_json(const RouteResult& result);

}  // namespace bssd
