#pragma once

#include "bssd/ids.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bssd {

/// Attributes other than id/lat/lon/ref (version, timestamp, action, ...),
/// kept so that editors' bookkeeping survives a round trip.
using XmlAttributes = std::map<std::string, std::string, std::less<>>;

struct OsmNode {
  OsmId id = 0;
  double lat = 0.0;
  double lon = 0.0;
  Tags tags;
  XmlAttributes attributes;

  bool operator==(const OsmNode&) const = default;
};

struct OsmWay {
  OsmId id = 0;
  std::vector<OsmId> nodes;
  Tags tags;
  XmlAttributes attributes;

  bool operator==(const OsmWay&) const = default;
};

struct OsmMember {
  ElementType type = ElementType::way;
  OsmId ref = 0;
  std::string role;

  bool operator==(const OsmMember&) const = default;
};

struct OsmRelation {
  OsmId id = 0;
  std::vector<OsmMember> members;
  Tags tags;
  XmlAttributes attributes;

  std::string_view tag(std::string_view key) const;
  bool operator==(const OsmRelation&) const = default;
};

/// Top-level element that is neither node, way nor relation (e.g. <bounds>).
struct OsmOtherElement {
  std::string name;
  XmlAttributes attributes;

  bool operator==(const OsmOtherElement&) const = default;
};

/// In-memory OSM XML document. Elements are keyed by id per element type.
/// Equality is structural: source line numbers are not compared.
class OsmDocument {
 public:
  XmlAttributes root_attributes;
  std::vector<OsmOtherElement> others;
  std::map<OsmId, OsmNode> nodes;
  std::map<OsmId, OsmWay> ways;
  std::map<OsmId, OsmRelation> relations;

  const OsmNode* find_node(OsmId id) const;
  const OsmWay* find_way(OsmId id) const;
  const OsmRelation* find_relation(OsmId id) const;
  OsmRelation* find_relation(OsmId id);
  bool contains(ElementRef ref) const;

  /// Fresh id for a new element: negative, below every existing id of that type
  /// (the convention editors use for unsaved elements).
  OsmId next_id(ElementType type) const;

  std::size_t element_count() const { return nodes.size() + ways.size() + relations.size(); }

  /// 1-based line of the element's start tag in the source, 0 if unknown.
  int line_of(ElementRef ref) const;
  void set_line(ElementRef ref, int line) { lines_[ref] = line; }

  bool operator==(const OsmDocument& other) const;

 private:
  std::map<ElementRef, int> lines_;
};

std::string_view to_string(ElementType t);
std::optional<ElementType> parse_element_type(std::string_view s);

}  // namespace bssd
