#pragma once

// Paths to the checked-in fixtures and small OSM editing helpers shared by
// the unit tests, the mutation suite and the acceptance binary.

#include "bssd/osm_document.hpp"
#include "bssd/scenery_map.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace bssd::testing {

std::filesystem::path data_dir();
std::filesystem::path data_file(std::string_view name);
std::string read_text(const std::filesystem::path& path);

/// Loads a fixture; aborts the test process if the file is missing.
SceneryMap load_fixture(std::string_view name);
OsmDocument fixture_document(std::string_view name);

/// behavior_space relation carrying `name=<name>`; throws if absent.
OsmId space_named(const OsmDocument& doc, std::string_view name);
/// First member of `relation` with `role`; throws if absent.
OsmId member(const OsmDocument& doc, OsmId relation, std::string_view role);
OsmRelation& relation(OsmDocument& doc, OsmId id);

/// The along behavior relation of the named space.
OsmId along_of(const OsmDocument& doc, std::string_view space_name);
/// Lanelet relation of a single-lanelet space.
OsmId lanelet_of(const OsmDocument& doc, std::string_view space_name);

}  // namespace bssd::testing
