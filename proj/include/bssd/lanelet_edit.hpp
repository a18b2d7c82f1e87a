#pragma once

#include "bssd/scenery_map.hpp"

#include <array>

namespace bssd {

enum class LaneletEnd : std::uint8_t { start, end };

struct SplitResult {
  SceneryMap map;
  /// First half (containing the original start), second half.
  std::array<OsmId, 2> lanelets{};
  OsmId cut_way = 0;
  /// One `behavior_space_needs_reassignment` warning per affected space.
  std::vector<Diagnostic> diagnostics;
};

/// Splits a lanelet at `fraction` of each bound's arclength (linear in
/// lat/lon). Both halves replace the original wherever it was a member; the
/// original bound ways are dropped once nothing references them.
/// Throws Error(unknown_lanelet) or Error(invalid_argument) for a cut outside (0,1).
SplitResult split_lanelet(const SceneryMap& map, OsmId lanelet, double fraction);

/// Way joining the two bound endpoints at `at` (reference direction): an
/// existing way whose end nodes are exactly that pair, preferring
/// type=stop_line, else a new 2-node type=virtual way. Edits `doc` in place.
OsmId add_longitudinal_boundary(OsmDocument& doc, const LaneElement& lane, LaneletEnd at);

struct BoundaryResult {
  SceneryMap map;
  OsmId way = 0;
  bool created = false;
};

/// Throws Error(unknown_lanelet).
BoundaryResult add_longitudinal_boundary(const SceneryMap& map, OsmId lanelet, LaneletEnd at);

/// Existing way spanning `a`-`b` by its end nodes, stop lines first.
std::optional<OsmId> find_spanning_way(const OsmDocument& doc, OsmId a, OsmId b);

}  // namespace bssd
