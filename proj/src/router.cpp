#include "bssd/router.hpp"

#include "bssd/describe.hpp"
#include "bssd/error.hpp"
#include "bssd/tag_schema.hpp"

#include <json.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace bssd {

namespace sc = schema;

CapabilityProfile CapabilityProfile::full(double max_speed_kmh) {
  CapabilityProfile p;
  p.max_speed_kmh = max_speed_kmh;
  p.yieldable = {ParticipantType(ParticipantKind::motor_vehicle), ParticipantType(ParticipantKind::pedestrian),
                 ParticipantType(ParticipantKind::bicycle), ParticipantType(ParticipantKind::rail_vehicle)};
  p.supported_conditions = {ConditionKind::no_stagnant_traffic, ConditionKind::traffic_light,
                            ConditionKind::time_window, ConditionKind::weather, ConditionKind::custom};
  p.may_enter_externally_reserved = true;
  p.may_cross_conditional = true;
  return p;
}

void require_valid(const CapabilityProfile& profile) {
  if (!(profile.max_speed_kmh > 0.0)) {
    throw Error(ErrorCode::invariant_violation, "profile max_speed_kmh must be positive");
  }
}

bool is_subprofile(const CapabilityProfile& a, const CapabilityProfile& b) {
  return a.max_speed_kmh <= b.max_speed_kmh &&
         std::includes(b.yieldable.begin(), b.yieldable.end(), a.yieldable.begin(), a.yieldable.end()) &&
         std::includes(b.supported_conditions.begin(), b.supported_conditions.end(), a.supported_conditions.begin(),
                       a.supported_conditions.end()) &&
         (!a.may_enter_externally_reserved || b.may_enter_externally_reserved) &&
         (!a.may_cross_conditional || b.may_cross_conditional);
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_flag(std::string_view key, std::string_view v) {
  if (v == "yes" || v == "true") return true;
  if (v == "no" || v == "false") return false;
  throw Error(ErrorCode::schema, std::string(key) + ": expected yes or no, got '" + std::string(v) + "'");
}

}  // namespace

CapabilityProfile parse_profile(std::string_view text) {
  CapabilityProfile p;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) throw Error(ErrorCode::schema, "profile line without ':'");
    const auto key = trim(line.substr(0, colon));
    const auto value = trim(line.substr(colon + 1));
    if (key == "max_speed_kmh") {
      const auto v = sc::parse_number(value);
      if (!v) throw Error(ErrorCode::schema, "max_speed_kmh: not a number");
      p.max_speed_kmh = *v;
    } else if (key == "yieldable") {
      p.yieldable = sc::parse_participant_list(value);
    } else if (key == "supported_conditions") {
      p.supported_conditions.clear();
      for (const auto& item : sc::split_list(value)) {
        const auto k = sc::parse_condition_kind(item);
        if (!k) throw Error(ErrorCode::schema, "unknown condition kind '" + item + "'");
        p.supported_conditions.insert(*k);
      }
    } else if (key == "may_enter_externally_reserved") {
      p.may_enter_externally_reserved = parse_flag(key, value);
    } else if (key == "may_cross_conditional") {
      p.may_cross_conditional = parse_flag(key, value);
    } else {
      throw Error(ErrorCode::schema, "unknown profile key '" + std::string(key) + "'");
    }
  }
  require_valid(p);
  return p;
}

std::string format_profile(const CapabilityProfile& p) {
  std::string conds;
  for (auto k : p.supported_conditions) {
    conds += (conds.empty() ? "" : ";") + std::string(k == ConditionKind::time_window ? "time" : to_string(k));
  }
  std::string out = "max_speed_kmh: " + sc::format_number(p.max_speed_kmh) + "\n";
  out += "yieldable: " + sc::participant_list(p.yieldable) + "\n";
  out += "supported_conditions: " + conds + "\n";
  out += std::string("may_enter_externally_reserved: ") + (p.may_enter_externally_reserved ? "yes" : "no") + "\n";
  out += std::string("may_cross_conditional: ") + (p.may_cross_conditional ? "yes" : "no") + "\n";
  return out;
}

Admissibility occupancy(const Behavior& behavior, const CapabilityProfile& profile) {
  for (const auto& d : behavior.speed.demands) {
    if (d.limit == SpeedLimitKind::minimum && d.value_kmh > profile.max_speed_kmh) {
      SpeedAttribute single{{d}};
      return {false, "speed", describe(single)};
    }
  }
  if (!profile.may_enter_externally_reserved) {
    for (const auto& d : behavior.reservation.demands) {
      if (d.kind != ReservationKind::externally && d.kind != ReservationKind::equally) continue;
      if (!std::includes(profile.yieldable.begin(), profile.yieldable.end(), d.entitled.begin(), d.entitled.end())) {
        return {false, "reservation", describe(d)};
      }
    }
  }
  return {};
}

Admissibility crossing(const std::vector<CrossingDemand>& demands, const CapabilityProfile& profile,
                       std::string_view attribute) {
  if (demands.empty()) return {};
  for (const auto& d : demands) {
    switch (d.permission) {
      case CrossingPermission::allowed: return {};
      case CrossingPermission::conditional:
        if (profile.may_cross_conditional && d.condition && profile.supported_conditions.count(d.condition->kind())) {
          return {};
        }
        break;
      case CrossingPermission::prohibited:
      case CrossingPermission::not_possible: break;
    }
  }
  return {false, std::string(attribute), describe(demands)};
}

Admissibility admissible(const BehaviorGraph& graph, VertexKey vertex, const CapabilityProfile& profile) {
  if (!graph.contains(vertex)) throw Error(ErrorCode::unknown_element, "no vertex " + vertex.str());
  const Behavior& b = graph.behavior(vertex);
  if (auto occ = occupancy(b, profile); !occ) return occ;
  return crossing(b.boundary_long.demands, profile, "boundary_long");
}

Admissibility admissible(const BehaviorGraph& graph, const Edge& edge, const CapabilityProfile& profile) {
  const Edge* stored = graph.find_edge(edge.from, edge.to);
  if (!stored) throw Error(ErrorCode::unknown_element, "no edge " + edge.from.str() + " -> " + edge.to.str());
  std::string_view attribute = "boundary_long";
  if (edge.kind == EdgeKind::lateral_left) attribute = "boundary_left";
  if (edge.kind == EdgeKind::lateral_right) attribute = "boundary_right";
  if (auto c = crossing(edge.crossing, profile, attribute); !c) return c;
  return occupancy(graph.behavior(edge.to), profile);
}

RouteResult plan_route(const BehaviorGraph& graph, VertexKey from, VertexKey to, const CapabilityProfile& profile) {
  for (const auto& v : {from, to}) {
    if (!graph.contains(v)) throw Error(ErrorCode::unknown_vertex, "no vertex " + v.str());
  }
  RouteResult result;
  if (from == to) {
    result.status = RouteStatus::ok;
    result.path = {from};
    return result;
  }

  // Admissible adjacency, computed once per edge.
  std::map<VertexKey, std::vector<VertexKey>> next;
  std::map<VertexKey, std::vector<VertexKey>> prev;
  std::map<VertexKey, std::vector<std::pair<VertexKey, Admissibility>>> rejected;  // from -> (to, why)
  for (const auto& e : graph.edges()) {
    auto verdict = admissible(graph, e, profile);
    if (verdict) {
      next[e.from].push_back(e.to);
      prev[e.to].push_back(e.from);
    } else {
      rejected[e.from].emplace_back(e.to, std::move(verdict));
    }
  }

  std::map<VertexKey, std::size_t> dist{{from, 0}};
  std::deque<VertexKey> queue{from};
  while (!queue.empty()) {
    const VertexKey u = queue.front();
    queue.pop_front();
    for (const auto& v : next[u]) {
      if (dist.emplace(v, dist[u] + 1).second) queue.push_back(v);
    }
  }

  const auto reached = dist.find(to);
  const std::size_t horizon = reached == dist.end() ? SIZE_MAX : reached->second;
  std::map<VertexKey, BlockedAlternative> blocked;
  for (const auto& [u, du] : dist) {
    if (du >= horizon) continue;
    for (const auto& [v, why] : rejected[u]) {
      if (!dist.count(v)) blocked.try_emplace(v, BlockedAlternative{v, why.demand, why.reason()});
    }
  }
  for (auto& [v, b] : blocked) result.blocked.push_back(std::move(b));
  if (reached == dist.end()) return result;

  // Distances to the target, then walk greedily through the smallest key.
  std::map<VertexKey, std::size_t> rdist{{to, 0}};
  queue = {to};
  while (!queue.empty()) {
    const VertexKey u = queue.front();
    queue.pop_front();
    for (const auto& v : prev[u]) {
      if (rdist.emplace(v, rdist[u] + 1).second) queue.push_back(v);
    }
  }
  result.status = RouteStatus::ok;
  result.path.push_back(from);
  VertexKey cur = from;
  while (cur != to) {
    std::optional<VertexKey> best;
    for (const auto& v : next[cur]) {
      auto it = rdist.find(v);
      if (it != rdist.end() && it->second + 1 == rdist[cur] && (!best || v < *best)) best = v;
    }
    cur = *best;
    result.path.push_back(cur);
  }
  return result;
}

std::string route_json(const RouteResult& result) {
  nlohmann::json j;
  j["status"] = result.status == RouteStatus::ok ? "ok" : "no_route";
  auto path = nlohmann::json::array();
  for (const auto& v : result.path) path.push_back({{"space", v.space}, {"direction", std::string(to_string(v.direction))}});
  j["path"] = path;
  auto blocked = nlohmann::json::array();
  for (const auto& b : result.blocked) {
    blocked.push_back({{"space", b.vertex.space},
                       {"direction", std::string(to_string(b.vertex.direction))},
                       {"demand", b.demand},
                       {"reason", b.reason}});
  }
  j["blocked"] = blocked;
  return j.dump(2) + "\n";
}

}  // namespace bssd
