#pragma once

// Frozen tag/role vocabulary for BSSD relations inside Lanelet2-style OSM maps,
// and the codec between tag values and model demands.
//
//   type=behavior_space   members: lanelet (1..n, relation), along, against
//   type=behavior         tags: speed:max, speed:min, overtake=yes|no,
//                               condition:speed:max, condition:speed:min,
//                               condition:overtake  ("<value> @ <token>; ...")
//                         members: boundary_long, boundary_left,
//                                  boundary_right, reservation (1..n)
//   type=boundary         tags: crossing=<p>[;<p>...], condition=<token>[;...]
//                         members: boundary (ways)
//   type=reservation      tags: reservation=own|externally|equally|none,
//                               object=<participant>[;...], condition=<token>
//                         members: link (origin), link:destination
//
// Condition tokens: no_stagnant_traffic, traffic_light:active,
// traffic_light:inactive, time:HHMM-HHMM, weather:<label>, custom:<label>.
// In `crossing`/`condition` pairs, conditions are assigned in order to the
// conditional entries.

#include "bssd/model.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace bssd::schema {

inline constexpr std::string_view kType = "type";
inline constexpr std::string_view kBehaviorSpace = "behavior_space";
inline constexpr std::string_view kBehavior = "behavior";
inline constexpr std::string_view kBoundary = "boundary";
inline constexpr std::string_view kReservation = "reservation";
inline constexpr std::string_view kLanelet = "lanelet";
inline constexpr std::string_view kMultipolygon = "multipolygon";

inline constexpr std::string_view kRoleLanelet = "lanelet";
inline constexpr std::string_view kRoleAlong = "along";
inline constexpr std::string_view kRoleAgainst = "against";
inline constexpr std::string_view kRoleBoundaryLong = "boundary_long";
inline constexpr std::string_view kRoleBoundaryLeft = "boundary_left";
inline constexpr std::string_view kRoleBoundaryRight = "boundary_right";
inline constexpr std::string_view kRoleReservation = "reservation";
inline constexpr std::string_view kRoleBoundary = "boundary";
inline constexpr std::string_view kRoleLink = "link";
inline constexpr std::string_view kRoleLinkDestination = "link:destination";

inline constexpr std::string_view kSpeedMax = "speed:max";
inline constexpr std::string_view kSpeedMin = "speed:min";
inline constexpr std::string_view kCondSpeedMax = "condition:speed:max";
inline constexpr std::string_view kCondSpeedMin = "condition:speed:min";
inline constexpr std::string_view kOvertake = "overtake";
inline constexpr std::string_view kCondOvertake = "condition:overtake";
inline constexpr std::string_view kCrossing = "crossing";
inline constexpr std::string_view kCondition = "condition";
inline constexpr std::string_view kObject = "object";

/// True for relation types owned by this schema.
bool is_bssd_type(std::string_view type);

std::string condition_token(const Condition& c);
/// Throws Error(schema) on unknown or malformed tokens.
Condition parse_condition(std::string_view token);
std::optional<ConditionKind> parse_condition_kind(std::string_view name);

std::string participant_token(const ParticipantType& p);
ParticipantType parse_participant(std::string_view token);
std::string participant_list(const ParticipantSet& set);
ParticipantSet parse_participant_list(std::string_view value);

std::optional<CrossingPermission> parse_permission(std::string_view s);
std::optional<ReservationKind> parse_reservation_kind(std::string_view s);

/// Shortest round-trip decimal ("30", "12.5").
std::string format_number(double v);
std::optional<double> parse_number(std::string_view s);

/// Speed and overtake demands <-> behavior relation tags. Decoding throws
/// Error(schema) on unparseable values; missing mandatory tags decode to
/// attributes that fail `check` rather than throwing.
void encode_speed(const SpeedAttribute& attr, Tags& tags);
SpeedAttribute decode_speed(const Tags& tags);
void encode_overtake(const OvertakeAttribute& attr, Tags& tags);
OvertakeAttribute decode_overtake(const Tags& tags);

/// Crossing demands <-> `crossing`/`condition` tags of a boundary relation.
void encode_crossing(const std::vector<CrossingDemand>& demands, Tags& tags);
std::vector<CrossingDemand> decode_crossing(const Tags& tags);

/// Reservation demand tags (links are members, not tags).
void encode_reservation(const ReservationDemand& demand, Tags& tags);
ReservationDemand decode_reservation(const Tags& tags);

std::vector<std::string> split_list(std::string_view value, char sep = ';');

}  // namespace bssd::schema
