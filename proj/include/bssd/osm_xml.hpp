#pragma once

#include "bssd/osm_document.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace bssd {

/// Non-fatal oddity met while reading (duplicate tag key, unsupported nesting).
struct XmlIssue {
  int line = 0;
  std::string code;
  std::string message;
};

struct OsmReadResult {
  OsmDocument document;
  std::vector<XmlIssue> issues;
};

/// Parses OSM XML. Throws Error(malformed_xml) for XML syntax errors or missing
/// mandatory attributes and Error(duplicate_id) when an id repeats within an
/// element type.
OsmReadResult read_osm_xml(std::string_view xml);

/// Serializes with elements sorted by id within type and tags sorted by key.
std::string write_osm_xml(const OsmDocument& document);

}  // namespace bssd
