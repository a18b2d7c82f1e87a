#include "fixtures.hpp"

#include "bssd/error.hpp"
#include "bssd/osm_xml.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace bssd::testing {

std::filesystem::path data_dir() { return BSSD_TEST_DATA_DIR; }

std::filesystem::path data_file(std::string_view name) { return data_dir() / std::string(name); }

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::fprintf(stderr, "missing test file %s\n", path.c_str());
    std::abort();
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SceneryMap load_fixture(std::string_view name) { return load_map(data_file(name)).map; }

OsmDocument fixture_document(std::string_view name) {
  return read_osm_xml(read_text(data_file(name))).document;
}

OsmId space_named(const OsmDocument& doc, std::string_view name) {
  for (const auto& [id, rel] : doc.relations) {
    if (rel.tag("type") == "behavior_space" && rel.tag("name") == name) return id;
  }
  throw Error(ErrorCode::unknown_space, "fixture has no space " + std::string(name));
}

OsmId member(const OsmDocument& doc, OsmId relation, std::string_view role) {
  const auto* rel = doc.find_relation(relation);
  if (!rel) throw Error(ErrorCode::unknown_element, "no relation " + std::to_string(relation));
  for (const auto& m : rel->members) {
    if (m.role == role) return m.ref;
  }
  throw Error(ErrorCode::unknown_element, "relation " + std::to_string(relation) + " has no " + std::string(role));
}

OsmRelation& relation(OsmDocument& doc, OsmId id) {
  auto* rel = doc.find_relation(id);
  if (!rel) throw Error(ErrorCode::unknown_element, "no relation " + std::to_string(id));
  return *rel;
}

OsmId along_of(const OsmDocument& doc, std::string_view space_name) {
  return member(doc, space_named(doc, space_name), "along");
}

OsmId lanelet_of(const OsmDocument& doc, std::string_view space_name) {
  return member(doc, space_named(doc, space_name), "lanelet");
}

}  // namespace bssd::testing
