#pragma once

// Domain types of a behavior-semantic scenery description: the scenery-side
// carriers (lanes, non-regular motion space, topology annotations) and the
// behavior-space side (atomic behavior spaces, directional behaviors, the four
// behavioral attributes and their demands). Nothing here knows about OSM.

#include "bssd/ids.hpp"

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace bssd {

// ---------------------------------------------------------------------------
// Participants and conditions

enum class ParticipantKind : std::uint8_t { motor_vehicle, pedestrian, bicycle, rail_vehicle, other };

class ParticipantType {
 public:
  /// For every kind except `other`, which needs a label.
  explicit ParticipantType(ParticipantKind kind);

  /// Label is trimmed and lowercased; empty labels throw.
  static ParticipantType other(std::string_view label);

  ParticipantKind kind() const { return kind_; }
  const std::string& label() const { return label_; }

  auto operator<=>(const ParticipantType&) const = default;

 private:
  ParticipantType(ParticipantKind kind, std::string label) : kind_(kind), label_(std::move(label)) {}

  ParticipantKind kind_;
  std::string label_;
};

using ParticipantSet = std::set<ParticipantType>;

enum class ConditionKind : std::uint8_t { no_stagnant_traffic, traffic_light, time_window, weather, custom };
enum class TrafficLightState : std::uint8_t { active, inactive };

inline constexpr int kMinutesPerDay = 1440;

/// Machine-readable condition attached to a demand. Closed vocabulary plus a
/// `custom` escape hatch. Construct through the named factories.
class Condition {
 public:
  static Condition no_stagnant_traffic();
  static Condition traffic_light(TrafficLightState state);
  /// Minutes of day in [0, 1440), start != end. Windows may wrap midnight.
  static Condition time_window(int start_minute, int end_minute);
  static Condition weather(std::string_view label);
  static Condition custom(std::string_view label);

  ConditionKind kind() const { return kind_; }
  TrafficLightState light_state() const { return light_; }
  int window_start() const { return start_; }
  int window_end() const { return end_; }
  const std::string& label() const { return label_; }

  auto operator<=>(const Condition&) const = default;

 private:
  Condition(ConditionKind kind) : kind_(kind) {}

  ConditionKind kind_;
  TrafficLightState light_ = TrafficLightState::active;
  int start_ = 0;
  int end_ = 0;
  std::string label_;
};

// ---------------------------------------------------------------------------
// Behavioral attributes

enum class SpeedLimitKind : std::uint8_t { maximum, minimum };

struct SpeedDemand {
  SpeedLimitKind limit = SpeedLimitKind::maximum;
  double value_kmh = 0.0;
  std::optional<Condition> condition;

  auto operator<=>(const SpeedDemand&) const = default;
};

struct SpeedAttribute {
  std::vector<SpeedDemand> demands;
  bool operator==(const SpeedAttribute&) const = default;
};

enum class CrossingPermission : std::uint8_t { allowed, conditional, prohibited, not_possible };

struct CrossingDemand {
  CrossingPermission permission = CrossingPermission::allowed;
  std::optional<Condition> condition;

  auto operator<=>(const CrossingDemand&) const = default;
};

struct BoundaryAttribute {
  std::vector<CrossingDemand> demands;
  /// Linestring ids; empty in geometry-free use.
  std::vector<OsmId> geometry_refs;

  bool operator==(const BoundaryAttribute&) const = default;
};

enum class LinkRole : std::uint8_t { origin, destination };

struct ReservationLink {
  OsmId target = 0;  // lanelet or non-regular motion space relation
  LinkRole role = LinkRole::origin;

  auto operator<=>(const ReservationLink&) const = default;
};

enum class ReservationKind : std::uint8_t { own, externally, equally, none };

struct ReservationDemand {
  ReservationKind kind = ReservationKind::own;
  ParticipantSet entitled;
  std::vector<ReservationLink> links;
  std::optional<Condition> condition;

  bool operator==(const ReservationDemand&) const = default;
};

struct ReservationAttribute {
  std::vector<ReservationDemand> demands;
  bool operator==(const ReservationAttribute&) const = default;
};

struct OvertakeDemand {
  bool permitted = true;
  std::optional<Condition> condition;

  auto operator<=>(const OvertakeDemand&) const = default;
};

struct OvertakeAttribute {
  std::vector<OvertakeDemand> demands;
  bool operator==(const OvertakeAttribute&) const = default;
};

enum class Direction : std::uint8_t { along, against };

constexpr Direction opposite(Direction d) {
  return d == Direction::along ? Direction::against : Direction::along;
}

/// Per-direction bundle of the four attributes. Left and right are relative to
/// the direction of travel, so an `against` behavior's boundary_left lies on
/// the lane's geometric right bound.
struct Behavior {
  Direction direction = Direction::along;
  SpeedAttribute speed;
  BoundaryAttribute boundary_long;
  BoundaryAttribute boundary_left;
  BoundaryAttribute boundary_right;
  ReservationAttribute reservation;
  OvertakeAttribute overtake;
  /// Relation this behavior was read from; 0 when built in memory.
  OsmId source = 0;

  bool operator==(const Behavior&) const = default;
};

struct AtomicBehaviorSpace {
  OsmId id = 0;
  /// Ordered lanelet chain; usually a single lanelet.
  std::vector<OsmId> lanes;
  Behavior along;
  std::optional<Behavior> against;

  const Behavior* behavior(Direction d) const;
  bool operator==(const AtomicBehaviorSpace&) const = default;
};

// ---------------------------------------------------------------------------
// Scenery side

enum class LaneKind : std::uint8_t { vehicle_lane, bicycle_lane, crosswalk, other };

struct LaneElement {
  OsmId id = 0;
  OsmId left_bound = 0;
  OsmId right_bound = 0;
  LaneKind kind = LaneKind::vehicle_lane;
  std::string kind_label;  // set for LaneKind::other
  bool one_directional = false;
  /// Bound node ids ordered in the reference direction. Empty without geometry.
  std::vector<OsmId> left_nodes;
  std::vector<OsmId> right_nodes;

  /// Vehicle and bicycle lanes form the regular motion space.
  bool regular_motion_space() const {
    return kind == LaneKind::vehicle_lane || kind == LaneKind::bicycle_lane;
  }

  bool operator==(const LaneElement&) const = default;
};

enum class MotionSpaceKind : std::uint8_t { sidewalk, parking_area, keepout, other };

struct NonRegularMotionSpace {
  OsmId id = 0;
  MotionSpaceKind kind = MotionSpaceKind::other;
  std::string kind_label;
  std::optional<OsmId> geometry_ref;

  bool operator==(const NonRegularMotionSpace&) const = default;
};

struct Segment {
  OsmId id = 0;
  std::vector<OsmId> lanes;  // left to right
};

struct Way {
  OsmId id = 0;
  std::vector<OsmId> segments;
};

struct NetworkNode {
  OsmId id = 0;
  std::vector<OsmId> incoming_ways;
  std::vector<OsmId> outgoing_ways;
  std::vector<OsmId> internal_ways;

  std::size_t connected_ways() const {
    return incoming_ways.size() + outgoing_ways.size() + internal_ways.size();
  }
  /// Exactly two ways: a segmentation artifact rather than a real junction.
  bool degenerate() const { return connected_ways() == 2; }
};

/// Lanes directly left and right of `lane` within its segment.
struct SegmentNeighbors {
  std::optional<OsmId> left;
  std::optional<OsmId> right;
};
std::optional<SegmentNeighbors> neighbors_in(const Segment& segment, OsmId lane);

// ---------------------------------------------------------------------------
// Invariants

struct ModelLimits {
  double max_speed_kmh = 400.0;
};

/// A broken type invariant. `rule` is a stable dotted name such as
/// "speed.default_missing".
struct Violation {
  std::string rule;
  std::string message;

  bool operator==(const Violation&) const = default;
};

std::vector<Violation> check(const SpeedAttribute& attr, const ModelLimits& limits = {});
std::vector<Violation> check(const BoundaryAttribute& attr);
std::vector<Violation> check(const CrossingDemand& demand);
std::vector<Violation> check(const ReservationDemand& demand);
std::vector<Violation> check(const ReservationAttribute& attr);
std::vector<Violation> check(const OvertakeAttribute& attr);
std::vector<Violation> check(const Behavior& behavior, const ModelLimits& limits = {});
/// `one_directional` allows `against` to be absent.
std::vector<Violation> check(const AtomicBehaviorSpace& space, bool one_directional,
                             const ModelLimits& limits = {});
std::vector<Violation> check(const LaneElement& lane);
std::vector<Violation> check(const Segment& segment);
std::vector<Violation> check(const NetworkNode& node);

/// Throws Error(invariant_violation) listing every violation.
template <typename T>
void require_valid(const T& value);

void throw_violations(const std::vector<Violation>& violations);

template <typename T>
void require_valid(const T& value) {
  throw_violations(check(value));
}

// ---------------------------------------------------------------------------
// Names

std::string_view to_string(Direction d);
std::string_view to_string(CrossingPermission p);
std::string_view to_string(ReservationKind k);
std::string_view to_string(SpeedLimitKind k);
std::string_view to_string(ConditionKind k);
std::string_view to_string(LaneKind k);
std::string_view to_string(MotionSpaceKind k);

std::optional<Direction> parse_direction(std::string_view s);

}  // namespace bssd
