#include "bssd/model.hpp"

#include "bssd/error.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace bssd {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invariant_violation: return "invariant_violation";
    case ErrorCode::malformed_xml: return "malformed_xml";
    case ErrorCode::duplicate_id: return "duplicate_id";
    case ErrorCode::schema: return "schema";
    case ErrorCode::io: return "io";
    case ErrorCode::unknown_lanelet: return "unknown_lanelet";
    case ErrorCode::unknown_space: return "unknown_space";
    case ErrorCode::unknown_vertex: return "unknown_vertex";
    case ErrorCode::unknown_element: return "unknown_element";
    case ErrorCode::already_covered: return "already_covered";
    case ErrorCode::missing_direction: return "missing_direction";
    case ErrorCode::non_adjacent_steps: return "non_adjacent_steps";
    case ErrorCode::invalid_argument: return "invalid_argument";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

std::string ElementRef::str() const {
  const char prefix = type == ElementType::node ? 'n' : type == ElementType::way ? 'w' : 'r';
  return prefix + std::to_string(id);
}

namespace {

std::string trimmed(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

// Labels end up inside tag values, where ';' and '@' are separators.
std::string checked_label(std::string_view raw, std::string_view what) {
  std::string label = trimmed(raw);
  if (label.empty()) throw Error(ErrorCode::invariant_violation, std::string(what) + " label is empty");
  if (label.find_first_of(";@\n\r") != std::string::npos) {
    throw Error(ErrorCode::invariant_violation,
                std::string(what) + " label contains a reserved character: " + label);
  }
  return label;
}

}  // namespace

ParticipantType::ParticipantType(ParticipantKind kind) : kind_(kind) {
  if (kind == ParticipantKind::other) {
    throw Error(ErrorCode::invariant_violation, "participant kind 'other' requires a label");
  }
}

ParticipantType ParticipantType::other(std::string_view label) {
  std::string norm = checked_label(label, "participant");
  std::transform(norm.begin(), norm.end(), norm.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ParticipantType(ParticipantKind::other, std::move(norm));
}

Condition Condition::no_stagnant_traffic() { return Condition(ConditionKind::no_stagnant_traffic); }

Condition Condition::traffic_light(TrafficLightState state) {
  Condition c(ConditionKind::traffic_light);
  c.light_ = state;
  return c;
}

Condition Condition::time_window(int start_minute, int end_minute) {
  auto in_day = [](int m) { return m >= 0 && m < kMinutesPerDay; };
  if (!in_day(start_minute) || !in_day(end_minute)) {
    throw Error(ErrorCode::invariant_violation, "time window bounds must lie in [0, 1440)");
  }
  if (start_minute == end_minute) {
    throw Error(ErrorCode::invariant_violation, "time window start equals end");
  }
  Condition c(ConditionKind::time_window);
  c.start_ = start_minute;
  c.end_ = end_minute;
  return c;
}

Condition Condition::weather(std::string_view label) {
  Condition c(ConditionKind::weather);
  c.label_ = checked_label(label, "weather");
  return c;
}

Condition Condition::custom(std::string_view label) {
  Condition c(ConditionKind::custom);
  c.label_ = checked_label(label, "custom condition");
  return c;
}

const Behavior* AtomicBehaviorSpace::behavior(Direction d) const {
  if (d == Direction::along) return &along;
  return against ? &*against : nullptr;
}

std::optional<SegmentNeighbors> neighbors_in(const Segment& segment, OsmId lane) {
  const auto it = std::find(segment.lanes.begin(), segment.lanes.end(), lane);
  if (it == segment.lanes.end()) return std::nullopt;
  SegmentNeighbors n;
  if (it != segment.lanes.begin()) n.left = *std::prev(it);
  if (std::next(it) != segment.lanes.end()) n.right = *std::next(it);
  return n;
}

// ---------------------------------------------------------------------------

namespace {

void append(std::vector<Violation>& out, std::vector<Violation> more, std::string_view prefix = {}) {
  for (auto& v : more) {
    if (!prefix.empty()) v.message = std::string(prefix) + ": " + v.message;
    out.push_back(std::move(v));
  }
}

}  // namespace

std::vector<Violation> check(const SpeedAttribute& attr, const ModelLimits& limits) {
  std::vector<Violation> out;
  if (attr.demands.empty()) {
    out.push_back({"speed.empty", "speed attribute has no demand"});
    return out;
  }
  bool has_default_max = false;
  for (std::size_t i = 0; i < attr.demands.size(); ++i) {
    const auto& d = attr.demands[i];
    if (!(d.value_kmh > 0.0) || d.value_kmh > limits.max_speed_kmh) {
      std::ostringstream msg;
      msg << "speed value " << d.value_kmh << " km/h outside (0, " << limits.max_speed_kmh << "]";
      out.push_back({"speed.value_range", msg.str()});
    }
    if (d.limit == SpeedLimitKind::maximum && !d.condition) has_default_max = true;
    for (std::size_t j = 0; j < i; ++j) {
      const auto& e = attr.demands[j];
      if (e.limit == d.limit && e.condition == d.condition) {
        out.push_back({"speed.duplicate_demand", "two speed demands share limit kind and condition"});
      }
    }
  }
  if (!has_default_max) {
    out.push_back({"speed.default_missing", "no unconditional maximum speed demand"});
  }
  return out;
}

std::vector<Violation> check(const CrossingDemand& demand) {
  const bool conditional = demand.permission == CrossingPermission::conditional;
  if (conditional && !demand.condition) {
    return {{"boundary.conditional_mismatch", "conditional crossing without a condition"}};
  }
  if (!conditional && demand.condition) {
    return {{"boundary.conditional_mismatch", "non-conditional crossing carries a condition"}};
  }
  return {};
}

std::vector<Violation> check(const BoundaryAttribute& attr) {
  std::vector<Violation> out;
  if (attr.demands.empty()) {
    out.push_back({"boundary.empty", "boundary has no crossing demand"});
    return out;
  }
  for (const auto& d : attr.demands) append(out, check(d));
  if (attr.demands.size() >= 2) {
    std::set<Condition> seen;
    for (const auto& d : attr.demands) {
      if (d.permission != CrossingPermission::conditional || !d.condition) continue;
      if (!seen.insert(*d.condition).second) {
        out.push_back({"boundary.duplicate_condition", "two conditional crossings share a condition"});
      }
    }
  }
  return out;
}

std::vector<Violation> check(const ReservationDemand& demand) {
  std::vector<Violation> out;
  switch (demand.kind) {
    case ReservationKind::externally:
    case ReservationKind::equally:
      if (demand.entitled.empty()) {
        out.push_back({"reservation.entitled_required",
                       std::string(to_string(demand.kind)) + " reservation names no entitled participant"});
      }
      break;
    case ReservationKind::own:
    case ReservationKind::none:
      if (!demand.entitled.empty()) {
        out.push_back({"reservation.entitled_forbidden",
                       std::string(to_string(demand.kind)) + " reservation must not name participants"});
      }
      if (!demand.links.empty()) {
        out.push_back({"reservation.links_forbidden",
                       std::string(to_string(demand.kind)) + " reservation must not carry links"});
      }
      break;
  }
  return out;
}

std::vector<Violation> check(const ReservationAttribute& attr) {
  std::vector<Violation> out;
  if (attr.demands.empty()) out.push_back({"reservation.empty", "reservation attribute has no demand"});
  for (const auto& d : attr.demands) append(out, check(d));
  return out;
}

std::vector<Violation> check(const OvertakeAttribute& attr) {
  const auto defaults = std::count_if(attr.demands.begin(), attr.demands.end(),
                                      [](const OvertakeDemand& d) { return !d.condition; });
  if (defaults != 1) {
    return {{"overtake.default_count",
             "expected exactly one unconditional overtake demand, found " + std::to_string(defaults)}};
  }
  return {};
}

std::vector<Violation> check(const Behavior& behavior, const ModelLimits& limits) {
  std::vector<Violation> out;
  append(out, check(behavior.speed, limits));
  append(out, check(behavior.boundary_long), "boundary_long");
  append(out, check(behavior.boundary_left), "boundary_left");
  append(out, check(behavior.boundary_right), "boundary_right");
  append(out, check(behavior.reservation));
  append(out, check(behavior.overtake));
  return out;
}

std::vector<Violation> check(const AtomicBehaviorSpace& space, bool one_directional,
                             const ModelLimits& limits) {
  std::vector<Violation> out;
  if (space.lanes.empty()) out.push_back({"space.no_lane", "behavior space references no lane"});
  if (space.along.direction != Direction::along) {
    out.push_back({"behavior.direction", "along behavior has direction against"});
  }
  append(out, check(space.along, limits), "along");
  if (space.against) {
    if (space.against->direction != Direction::against) {
      out.push_back({"behavior.direction", "against behavior has direction along"});
    }
    append(out, check(*space.against, limits), "against");
  } else if (!one_directional) {
    out.push_back({"space.against_missing", "against behavior missing on a bidirectional lane"});
  }
  return out;
}

std::vector<Violation> check(const LaneElement& lane) {
  if (lane.left_bound == lane.right_bound) {
    return {{"lane.same_bounds", "left and right bound are the same linestring"}};
  }
  return {};
}

std::vector<Violation> check(const Segment& segment) {
  std::vector<OsmId> sorted = segment.lanes;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    return {{"segment.duplicate_lane", "a lane appears twice, giving it several lateral neighbors"}};
  }
  return {};
}

std::vector<Violation> check(const NetworkNode& node) {
  if (node.connected_ways() < 2) {
    return {{"node.too_few_ways", "a network node connects fewer than two ways"}};
  }
  return {};
}

void throw_violations(const std::vector<Violation>& violations) {
  if (violations.empty()) return;
  std::string msg;
  for (const auto& v : violations) {
    if (!msg.empty()) msg += "; ";
    msg += v.rule + " (" + v.message + ")";
  }
  throw Error(ErrorCode::invariant_violation, msg);
}

// ---------------------------------------------------------------------------

std::string_view to_string(Direction d) { return d == Direction::along ? "along" : "against"; }

std::string_view to_string(CrossingPermission p) {
  switch (p) {
    case CrossingPermission::allowed: return "allowed";
    case CrossingPermission::conditional: return "conditional";
    case CrossingPermission::prohibited: return "prohibited";
    case CrossingPermission::not_possible: return "not_possible";
  }
  return "?";
}

std::string_view to_string(ReservationKind k) {
  switch (k) {
    case ReservationKind::own: return "own";
    case ReservationKind::externally: return "externally";
    case ReservationKind::equally: return "equally";
    case ReservationKind::none: return "none";
  }
  return "?";
}

std::string_view to_string(SpeedLimitKind k) { return k == SpeedLimitKind::maximum ? "max" : "min"; }

std::string_view to_string(ConditionKind k) {
  switch (k) {
    case ConditionKind::no_stagnant_traffic: return "no_stagnant_traffic";
    case ConditionKind::traffic_light: return "traffic_light";
    case ConditionKind::time_window: return "time";
    case ConditionKind::weather: return "weather";
    case ConditionKind::custom: return "custom";
  }
  return "?";
}

std::string_view to_string(LaneKind k) {
  switch (k) {
    case LaneKind::vehicle_lane: return "vehicle_lane";
    case LaneKind::bicycle_lane: return "bicycle_lane";
    case LaneKind::crosswalk: return "crosswalk";
    case LaneKind::other: return "other";
  }
  return "?";
}

std::string_view to_string(MotionSpaceKind k) {
  switch (k) {
    case MotionSpaceKind::sidewalk: return "sidewalk";
    case MotionSpaceKind::parking_area: return "parking_area";
    case MotionSpaceKind::keepout: return "keepout";
    case MotionSpaceKind::other: return "other";
  }
  return "?";
}

std::optional<Direction> parse_direction(std::string_view s) {
  if (s == "along") return Direction::along;
  if (s == "against") return Direction::against;
  return std::nullopt;
}

}  // namespace bssd
