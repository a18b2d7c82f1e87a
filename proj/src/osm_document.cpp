#include "bssd/osm_document.hpp"

#include <algorithm>

namespace bssd {

std::string_view OsmRelation::tag(std::string_view key) const {
  auto it = tags.find(key);
  return it == tags.end() ? std::string_view{} : std::string_view(it->second);
}

const OsmNode* OsmDocument::find_node(OsmId id) const {
  auto it = nodes.find(id);
  return it == nodes.end() ? nullptr : &it->second;
}

const OsmWay* OsmDocument::find_way(OsmId id) const {
  auto it = ways.find(id);
  return it == ways.end() ? nullptr : &it->second;
}

const OsmRelation* OsmDocument::find_relation(OsmId id) const {
  auto it = relations.find(id);
  return it == relations.end() ? nullptr : &it->second;
}

OsmRelation* OsmDocument::find_relation(OsmId id) {
  auto it = relations.find(id);
  return it == relations.end() ? nullptr : &it->second;
}

bool OsmDocument::contains(ElementRef ref) const {
  switch (ref.type) {
    case ElementType::node: return nodes.count(ref.id) > 0;
    case ElementType::way: return ways.count(ref.id) > 0;
    case ElementType::relation: return relations.count(ref.id) > 0;
  }
  return false;
}

OsmId OsmDocument::next_id(ElementType type) const {
  OsmId lowest = 0;
  auto scan = [&](const auto& m) {
    if (!m.empty()) lowest = std::min(lowest, m.begin()->first);
  };
  switch (type) {
    case ElementType::node: scan(nodes); break;
    case ElementType::way: scan(ways); break;
    case ElementType::relation: scan(relations); break;
  }
  return lowest - 1;
}

int OsmDocument::line_of(ElementRef ref) const {
  auto it = lines_.find(ref);
  return it == lines_.end() ? 0 : it->second;
}

bool OsmDocument::operator==(const OsmDocument& other) const {
  return root_attributes == other.root_attributes && others == other.others && nodes == other.nodes &&
         ways == other.ways && relations == other.relations;
}

std::string_view to_string(ElementType t) {
  switch (t) {
    case ElementType::node: return "node";
    case ElementType::way: return "way";
    case ElementType::relation: return "relation";
  }
  return "?";
}

std::optional<ElementType> parse_element_type(std::string_view s) {
  if (s == "node") return ElementType::node;
  if (s == "way") return ElementType::way;
  if (s == "relation") return ElementType::relation;
  return std::nullopt;
}

}  // namespace bssd
