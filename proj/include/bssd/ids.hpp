#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <string>

namespace bssd {

using OsmId = std::int64_t;

/// Key-sorted tag map; OSM forbids duplicate keys.
using Tags = std::map<std::string, std::string, std::less<>>;

enum class ElementType : std::uint8_t { node, way, relation };

/// Typed reference to an OSM element. Node, way and relation ids live in
/// separate namespaces, so an id alone is ambiguous.
struct ElementRef {
  ElementType type = ElementType::relation;
  OsmId id = 0;

  auto operator<=>(const ElementRef&) const = default;

  /// JOSM-style shorthand: n12, w7, r1000.
  std::string str() const;
};

inline ElementRef node_ref(OsmId id) { return {ElementType::node, id}; }
inline ElementRef way_ref(OsmId id) { return {ElementType::way, id}; }
inline ElementRef relation_ref(OsmId id) { return {ElementType::relation, id}; }

}  // namespace bssd
