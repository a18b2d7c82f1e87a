#pragma once

#include "bssd/scenery_map.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bssd {

struct AnnotateResult {
  SceneryMap map;
  OsmId space = 0;
};

/// Adds a behavior_space over `lanelets` (a contiguous chain, in reference
/// direction) with its behavior, boundary and reservation relations. Entry
/// linestrings come from add_longitudinal_boundary; lateral boundaries point
/// at the bound ways. Directions and geometry refs in the given behaviors are
/// ignored. `name`, if set, becomes the space's `name` tag.
///
/// Throws Error(unknown_lanelet), Error(already_covered),
/// Error(invalid_argument) for a broken chain or link target and
/// Error(invariant_violation) when the demands would not validate.
AnnotateResult annotate(const SceneryMap& map, const std::vector<OsmId>& lanelets, const Behavior& along,
                        const std::optional<Behavior>& against, std::string_view name = {});

struct DeriveContext {
  double zone_speed_kmh = 50.0;
};

/// Heuristic pre-fill from local tags. Always provisional: review before
/// passing it to annotate.
struct DerivedSpec {
  Behavior along;
  std::optional<Behavior> against;
  bool provisional = true;
};

/// Throws Error(unknown_lanelet).
DerivedSpec derive_defaults(const SceneryMap& map, OsmId lanelet, const DeriveContext& context);

/// Crossing permission suggested by a bound linestring's type/subtype tags.
CrossingPermission permission_from_linestring(const Tags& tags);

/// Declarative "key: value" block mirroring the relation tags, e.g.
///
///   speed:max: 30
///   condition:speed:max: 20 @ weather:wet
///   overtake: yes
///   boundary_long:crossing: conditional
///   boundary_long:condition: no_stagnant_traffic
///   boundary_left:crossing: prohibited
///   boundary_right:crossing: prohibited
///   reservation: externally
///   object: pedestrian
///   reservation:link: 31;32
///
/// Every `reservation:` line starts a new reservation demand. Throws
/// Error(schema) on unknown keys or values.
Behavior parse_behavior_spec(std::string_view text);
std::string format_behavior_spec(const Behavior& behavior);

}  // namespace bssd
