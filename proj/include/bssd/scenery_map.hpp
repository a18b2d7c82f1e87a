#pragma once

#include "bssd/findings.hpp"
#include "bssd/model.hpp"
#include "bssd/osm_document.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace bssd {

/// Immutable interpretation of an OSM document: lanes, non-regular motion
/// space and the atomic behavior spaces that passed every check. The document
/// stays the source of truth for saving; everything else is derived from it.
class SceneryMap {
 public:
  SceneryMap() = default;

  const OsmDocument& document() const { return document_; }
  const ModelLimits& limits() const { return limits_; }
  const std::map<OsmId, LaneElement>& lanes() const { return lanes_; }
  const std::map<OsmId, NonRegularMotionSpace>& motion_spaces() const { return motion_spaces_; }
  const std::map<OsmId, AtomicBehaviorSpace>& spaces() const { return spaces_; }
  /// behavior_space relations that failed to parse or broke an invariant.
  const std::set<OsmId>& rejected_spaces() const { return rejected_; }
  /// Lanelet id -> every behavior_space relation listing it, valid or not.
  const std::map<OsmId, std::vector<OsmId>>& coverage() const { return coverage_; }
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

  const LaneElement* find_lane(OsmId id) const;
  const AtomicBehaviorSpace* find_space(OsmId id) const;
  /// Numeric id or the relation's `name` tag. Only valid spaces resolve.
  std::optional<OsmId> resolve_space(std::string_view id_or_name) const;

  /// Compares the document; the interpretation is a function of it.
  bool operator==(const SceneryMap& other) const { return document_ == other.document_; }

  friend SceneryMap seal(OsmDocument document, const ModelLimits& limits, std::vector<Diagnostic> extra);

 private:
  OsmDocument document_;
  ModelLimits limits_;
  std::map<OsmId, LaneElement> lanes_;
  std::map<OsmId, NonRegularMotionSpace> motion_spaces_;
  std::map<OsmId, AtomicBehaviorSpace> spaces_;
  std::set<OsmId> rejected_;
  std::map<OsmId, std::vector<OsmId>> coverage_;
  std::vector<Diagnostic> diagnostics_;
};

/// Interprets `document`. Problems become diagnostics; only malformed input
/// at the XML level throws (see load_map).
SceneryMap seal(OsmDocument document, const ModelLimits& limits = {}, std::vector<Diagnostic> extra = {});

struct LoadResult {
  SceneryMap map;
  std::vector<Diagnostic> diagnostics;
};

/// Throws Error(io) when the file cannot be read, Error(malformed_xml) and
/// Error(duplicate_id) for broken XML.
LoadResult load_map(const std::filesystem::path& path, const ModelLimits& limits = {});
LoadResult load_map_from_string(std::string_view xml, const ModelLimits& limits = {});

std::string save_map(const SceneryMap& map);

/// Lane kind from a lanelet's `subtype` tag.
LaneKind lane_kind_from_subtype(std::string_view subtype);

}  // namespace bssd
