#include "mutations.hpp"

#include "fixtures.hpp"

#include "bssd/validator.hpp"

#include <algorithm>

namespace bssd::testing {

namespace {

using Edit = std::function<void(OsmDocument&)>;

MutantCase sealed(OsmDocument doc) {
  auto map = seal(std::move(doc));
  auto graph = build_graph(map);
  return {std::move(map), std::move(graph)};
}

std::function<MutantCase()> edit(Edit fn) {
  return [fn] {
    auto doc = fixture_document("example_a.osm");
    fn(doc);
    return sealed(std::move(doc));
  };
}

OsmId add_relation(OsmDocument& doc, std::vector<OsmMember> members, Tags tags) {
  const OsmId id = doc.next_id(ElementType::relation);
  doc.relations[id] = OsmRelation{id, std::move(members), std::move(tags), {}};
  return id;
}

OsmId first_multipolygon(const OsmDocument& doc) {
  for (const auto& [id, rel] : doc.relations) {
    if (rel.tag("type") == "multipolygon") return id;
  }
  return 0;
}

void erase_member(OsmRelation& rel, std::string_view role) {
  std::erase_if(rel.members, [&](const OsmMember& m) { return m.role == role; });
}

// Lanelet on fresh geometry well away from the junction.
OsmId detached_lanelet(OsmDocument& doc) {
  const auto& anchor = doc.nodes.begin()->second;
  std::array<OsmId, 4> n{};
  for (int i = 0; i < 4; ++i) {
    const OsmId id = doc.next_id(ElementType::node);
    doc.nodes[id] = OsmNode{id, anchor.lat + 0.01 + (i % 2) * 0.0001, anchor.lon + (i / 2) * 0.0001, {}, {}};
    n[i] = id;
  }
  const OsmId left = doc.next_id(ElementType::way);
  doc.ways[left] = OsmWay{left, {n[1], n[3]}, {{"type", "line_thin"}}, {}};
  const OsmId right = doc.next_id(ElementType::way);
  doc.ways[right] = OsmWay{right, {n[0], n[2]}, {{"type", "line_thin"}}, {}};
  return add_relation(doc,
                      {{ElementType::way, left, "left"}, {ElementType::way, right, "right"}},
                      {{"type", "lanelet"}, {"subtype", "road"}, {"one_way", "yes"}});
}

}  // namespace

std::vector<Mutant> example_a_mutants() {
  std::vector<Mutant> out;

  // Division into atomic behavior spaces.
  out.push_back({"space lists a sidewalk as lanelet", "V-RQ1", "invalid_lanelet_ref", edit([](OsmDocument& d) {
                   relation(d, space_named(d, "P3n")).members.push_back(
                       {ElementType::relation, first_multipolygon(d), "lanelet"});
                 })});
  out.push_back({"space without lanelet", "V-RQ1", "missing_lanelet", edit([](OsmDocument& d) {
                   add_relation(d, {{ElementType::relation, along_of(d, "P3n"), "along"}},
                                {{"type", "behavior_space"}});
                 })});
  out.push_back({"space over disconnected lanelets", "V-RQ1", "noncontiguous_space", edit([](OsmDocument& d) {
                   const OsmId extra = detached_lanelet(d);
                   relation(d, space_named(d, "P3n")).members.insert(
                       relation(d, space_named(d, "P3n")).members.begin() + 1,
                       {ElementType::relation, extra, "lanelet"});
                 })});
  out.push_back({"space deleted", "V-RQ1", "uncovered_lanelet", edit([](OsmDocument& d) {
                   d.relations.erase(space_named(d, "U"));
                 })});
  out.push_back({"lanelet covered twice", "V-RQ1", "duplicated_coverage", edit([](OsmDocument& d) {
                   auto copy = relation(d, space_named(d, "P3n"));
                   copy.tags.erase("name");
                   add_relation(d, copy.members, copy.tags);
                 })});

  // Behavioral attributes.
  out.push_back({"unknown space member role", "V-RQ2", "unknown_role", edit([](OsmDocument& d) {
                   relation(d, space_named(d, "P3n")).members.push_back(
                       {ElementType::relation, along_of(d, "P2n"), "sideways"});
                 })});
  out.push_back({"boundary_left removed", "V-RQ2", "missing_attribute", edit([](OsmDocument& d) {
                   erase_member(relation(d, along_of(d, "A")), "boundary_left");
                 })});
  out.push_back({"second along behavior", "V-RQ2", "duplicate_attribute", edit([](OsmDocument& d) {
                   relation(d, space_named(d, "P3n")).members.push_back(
                       {ElementType::relation, along_of(d, "P2n"), "along"});
                 })});
  out.push_back({"one_way tag dropped", "V-RQ2", "missing_against", edit([](OsmDocument& d) {
                   relation(d, lanelet_of(d, "P3n")).tags.erase("one_way");
                 })});
  out.push_back({"behavior member typed as way", "V-RQ2", "wrong_member_type", edit([](OsmDocument& d) {
                   auto& rel = relation(d, space_named(d, "P3n"));
                   for (auto& m : rel.members) {
                     if (m.role == "along") {
                       m.type = ElementType::way;
                       m.ref = d.ways.begin()->first;
                     }
                   }
                 })});
  out.push_back({"reservation relation deleted", "V-RQ2", "dangling_ref", edit([](OsmDocument& d) {
                   d.relations.erase(member(d, along_of(d, "A"), "reservation"));
                 })});
  out.push_back({"speed value not a number", "V-RQ2", "invalid_tag_value", edit([](OsmDocument& d) {
                   relation(d, along_of(d, "P3n")).tags["speed:max"] = "fast";
                 })});
  out.push_back({"reservation linked to a behavior", "V-RQ2", "invalid_link_target", edit([](OsmDocument& d) {
                   const OsmId res = member(d, along_of(d, "A"), "reservation");
                   relation(d, res).members.push_back({ElementType::relation, along_of(d, "P2n"), "link"});
                 })});
  out.push_back({"no unconditional maximum speed", "V-RQ2", "speed.default_missing", edit([](OsmDocument& d) {
                   auto& tags = relation(d, along_of(d, "P3n")).tags;
                   tags["speed:min"] = tags["speed:max"];
                   tags.erase("speed:max");
                 })});
  out.push_back({"conditional crossing without condition", "V-RQ2", "boundary.conditional_mismatch",
                 edit([](OsmDocument& d) {
                   relation(d, member(d, along_of(d, "A"), "boundary_long")).tags.erase("condition");
                 })});
  out.push_back({"overtake tag dropped", "V-RQ2", "overtake.default_count", edit([](OsmDocument& d) {
                   relation(d, along_of(d, "P3n")).tags.erase("overtake");
                 })});
  out.push_back({"external reservation names nobody", "V-RQ2", "reservation.entitled_required",
                 edit([](OsmDocument& d) {
                   relation(d, member(d, along_of(d, "A"), "reservation")).tags.erase("object");
                 })});

  // Navigable network.
  out.push_back({"entry boundary elsewhere", "V-RQ3", "misplaced_entry_boundary", edit([](OsmDocument& d) {
                   const OsmId foreign = member(d, member(d, along_of(d, "P1n"), "boundary_long"), "boundary");
                   auto& rel = relation(d, member(d, along_of(d, "A"), "boundary_long"));
                   rel.members = {{ElementType::way, foreign, "boundary"}};
                 })});
  out.push_back({"lateral twin lanelet", "V-RQ3", "ambiguous_lateral_neighbor", edit([](OsmDocument& d) {
                   auto twin = relation(d, lanelet_of(d, "P3n"));
                   const OsmId lanelet = add_relation(d, twin.members, twin.tags);
                   auto space = relation(d, space_named(d, "P3n"));
                   space.tags["name"] = "P3n twin";
                   for (auto& m : space.members) {
                     if (m.role == "lanelet") m.ref = lanelet;
                   }
                   add_relation(d, space.members, space.tags);
                 })});
  out.push_back({"graph behind the map", "V-RQ3", "dangling_vertex", [] {
                   auto doc = fixture_document("example_a.osm");
                   auto graph = build_graph(seal(doc));
                   relation(doc, along_of(doc, "P3n")).tags["speed:max"] = "40";
                   return MutantCase{seal(std::move(doc)), std::move(graph)};
                 }});
  out.push_back({"graph lost an edge", "V-RQ3", "missing_longitudinal_edge", [] {
                   auto map = load_fixture("example_a.osm");
                   auto full = build_graph(map);
                   const VertexKey a{space_named(map.document(), "A"), Direction::along};
                   std::vector<Edge> edges;
                   for (const auto& e : full.edges()) {
                     if (!(e.to == a && e.kind == EdgeKind::longitudinal_successor)) edges.push_back(e);
                   }
                   BehaviorGraph graph(full.vertices(), edges);
                   return MutantCase{std::move(map), std::move(graph)};
                 }});
  out.push_back({"graph gained an edge", "V-RQ3", "unsupported_longitudinal_edge", [] {
                   auto map = load_fixture("example_a.osm");
                   auto full = build_graph(map);
                   const auto& doc = map.document();
                   const VertexKey from{space_named(doc, "P1n"), Direction::along};
                   const VertexKey to{space_named(doc, "A"), Direction::along};
                   auto edges = full.edges();
                   edges.push_back({from, to, EdgeKind::longitudinal_successor, full.behavior(to).boundary_long.demands});
                   BehaviorGraph graph(full.vertices(), edges);
                   return MutantCase{std::move(map), std::move(graph)};
                 }});
  return out;
}

MutantOutcome run_mutant(const Mutant& mutant) {
  const auto c = mutant.make();
  MutantOutcome outcome;
  outcome.isolated = true;
  for (const auto& f : validate(c.map, c.graph)) {
    if (f.severity != Severity::error) continue;
    outcome.errors.push_back(f);
    if (f.rule == mutant.rule && f.code == mutant.code) {
      outcome.caught = true;
    } else {
      outcome.isolated = false;
    }
  }
  return outcome;
}

}  // namespace bssd::testing
