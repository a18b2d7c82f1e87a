#include "bssd/validator.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>

namespace bssd {

namespace {

class Validator {
 public:
  Validator(const SceneryMap& map, const BehaviorGraph& graph) : map_(map), graph_(graph) {}

  std::vector<Finding> run() {
    out_ = map_.diagnostics();
    rq1();
    rq2();
    rq3();
    rq4();
    rq5();
    std::sort(out_.begin(), out_.end(), finding_order);
    out_.erase(std::unique(out_.begin(), out_.end()), out_.end());
    return std::move(out_);
  }

 private:
  void add(std::string_view rule, Severity sev, std::vector<ElementRef> subjects, std::string code,
           std::string message) {
    const int line = subjects.empty() ? 0 : map_.document().line_of(subjects.front());
    out_.push_back({std::string(rule), sev, std::move(subjects), std::move(code), std::move(message), line});
  }

  bool duplicated(OsmId lanelet) const {
    auto it = map_.coverage().find(lanelet);
    return it != map_.coverage().end() && it->second.size() > 1;
  }

  void rq1() {
    for (const auto& [id, lane] : map_.lanes()) {
      if (!lane.regular_motion_space()) continue;
      auto it = map_.coverage().find(id);
      const std::size_t n = it == map_.coverage().end() ? 0 : it->second.size();
      if (n == 0) {
        add(rules::kRQ1, Severity::error, {relation_ref(id)}, "uncovered_lanelet",
            "lanelet is not part of any behavior_space");
      } else if (n > 1) {
        std::vector<ElementRef> subjects{relation_ref(id)};
        for (OsmId s : it->second) subjects.push_back(relation_ref(s));
        add(rules::kRQ1, Severity::error, std::move(subjects), "duplicated_coverage",
            "lanelet is part of " + std::to_string(n) + " behavior_spaces");
      }
    }
    for (const auto& [id, space] : map_.spaces()) {
      std::set<LaneKind> kinds;
      for (OsmId l : space.lanes) kinds.insert(map_.lanes().at(l).kind);
      if (kinds.size() > 1) {
        add(rules::kRQ1, Severity::warning, {relation_ref(id)}, "mixed_lane_kinds",
            "behavior_space spans lanelets of different kinds");
      }
    }
  }

  // The loader rejects spaces that break invariants; this re-check only fires
  // for maps assembled around it.
  void rq2() {
    for (const auto& [id, space] : map_.spaces()) {
      bool one_directional = true;
      for (OsmId l : space.lanes) one_directional = one_directional && map_.lanes().at(l).one_directional;
      for (const auto& v : check(space, one_directional, map_.limits())) {
        add(rules::kRQ2, Severity::error, {relation_ref(id)}, v.rule, v.message);
      }
    }
  }

  // Lanelet-level succession: travel leaves `from` through the same ordered
  // node pair it enters `to`. Written against the lanelets directly, not
  // through the graph's own entry/exit helpers.
  struct Travel {
    OsmId first_lanelet;
    OsmId last_lanelet;
    Direction d;
  };

  std::pair<OsmId, OsmId> leave(const Travel& t) const {
    const auto& l = map_.lanes().at(t.last_lanelet);
    if (t.d == Direction::along) return {l.left_nodes.back(), l.right_nodes.back()};
    return {l.right_nodes.front(), l.left_nodes.front()};
  }

  std::pair<OsmId, OsmId> enter(const Travel& t) const {
    const auto& l = map_.lanes().at(t.first_lanelet);
    if (t.d == Direction::along) return {l.left_nodes.front(), l.right_nodes.front()};
    return {l.right_nodes.back(), l.left_nodes.back()};
  }

  Travel travel_of(const AtomicBehaviorSpace& s, Direction d) const {
    if (d == Direction::along) return {s.lanes.front(), s.lanes.back(), d};
    return {s.lanes.back(), s.lanes.front(), d};
  }

  void rq3() {
    const auto& doc = map_.document();

    // Vertices mirror the behaviors present.
    std::set<VertexKey> expected_vertices;
    for (const auto& [id, space] : map_.spaces()) {
      expected_vertices.insert({id, Direction::along});
      if (space.against) expected_vertices.insert({id, Direction::against});
    }
    std::set<VertexKey> present;
    for (const auto& [key, b] : graph_.vertices()) {
      present.insert(key);
      const auto* space = map_.find_space(key.space);
      const Behavior* mb = space ? space->behavior(key.direction) : nullptr;
      if (!mb || *mb != b) {
        add(rules::kRQ3, Severity::error, {relation_ref(key.space)}, "dangling_vertex",
            "graph vertex " + key.str() + " has no matching behavior in the map");
      }
    }
    for (const auto& key : expected_vertices) {
      if (!present.count(key)) {
        add(rules::kRQ3, Severity::error, {relation_ref(key.space)}, "dangling_vertex",
            "behavior " + key.str() + " has no graph vertex");
      }
    }

    // Entry boundaries must sit where travel enters.
    std::set<VertexKey> misplaced;
    for (const auto& key : expected_vertices) {
      const auto& space = map_.spaces().at(key.space);
      const Behavior& b = *space.behavior(key.direction);
      const auto entry = enter(travel_of(space, key.direction));
      const ElementRef self = relation_ref(b.source ? b.source : key.space);
      if (b.boundary_long.geometry_refs.empty()) {
        misplaced.insert(key);
        add(rules::kRQ3, Severity::error, {self}, "misplaced_entry_boundary",
            key.str() + ": boundary_long has no linestring");
      }
      for (OsmId way : b.boundary_long.geometry_refs) {
        const OsmWay* w = doc.find_way(way);
        const bool spans = w && w->nodes.size() >= 2 &&
                           ((w->nodes.front() == entry.first && w->nodes.back() == entry.second) ||
                            (w->nodes.front() == entry.second && w->nodes.back() == entry.first));
        if (!spans) {
          misplaced.insert(key);
          add(rules::kRQ3, Severity::error, {self, way_ref(way)}, "misplaced_entry_boundary",
              key.str() + ": linestring does not join the bound ends at the entry");
        }
      }
    }

    // Longitudinal edges versus lanelet succession, both ways.
    std::set<std::pair<VertexKey, VertexKey>> expected;
    for (const auto& u : expected_vertices) {
      const auto out = leave(travel_of(map_.spaces().at(u.space), u.direction));
      for (const auto& v : expected_vertices) {
        if (u == v) continue;
        if (enter(travel_of(map_.spaces().at(v.space), v.direction)) == out) expected.insert({u, v});
      }
    }
    std::set<std::pair<VertexKey, VertexKey>> actual;
    for (const auto& e : graph_.edges()) {
      if (e.kind == EdgeKind::longitudinal_successor) actual.insert({e.from, e.to});
    }
    for (const auto& [u, v] : expected) {
      if (!actual.count({u, v}) && !misplaced.count(v) && present.count(u) && present.count(v)) {
        add(rules::kRQ3, Severity::error, {relation_ref(u.space), relation_ref(v.space)}, "missing_longitudinal_edge",
            "lanelets connect " + u.str() + " to " + v.str() + " but the graph has no edge");
      }
    }
    for (const auto& [u, v] : actual) {
      if (!expected.count({u, v})) {
        add(rules::kRQ3, Severity::error, {relation_ref(u.space), relation_ref(v.space)},
            "unsupported_longitudinal_edge", "edge " + u.str() + " -> " + v.str() + " has no lanelet succession");
      }
    }

    for (const auto& c : graph_.conflicts()) {
      std::vector<VertexKey> involved = c.candidates;
      involved.push_back(c.vertex);
      const bool covered_twice = std::any_of(involved.begin(), involved.end(), [&](const VertexKey& k) {
        const auto* s = map_.find_space(k.space);
        return s && std::any_of(s->lanes.begin(), s->lanes.end(), [&](OsmId l) { return duplicated(l); });
      });
      if (covered_twice) continue;  // already reported as duplicated_coverage
      std::vector<ElementRef> subjects{relation_ref(c.vertex.space)};
      std::string names;
      for (const auto& k : c.candidates) {
        subjects.push_back(relation_ref(k.space));
        names += (names.empty() ? "" : ", ") + k.str();
      }
      add(rules::kRQ3, Severity::error, std::move(subjects), "ambiguous_lateral_neighbor",
          c.vertex.str() + " has several " + std::string(to_string(c.kind)) + " candidates: " + names);
    }
  }

  void rq4() {
    for (const auto& e : graph_.edges()) {
      if (e.kind != EdgeKind::lateral_left) continue;
      auto mine = graph_.behavior(e.from).boundary_left.demands;
      auto theirs = graph_.behavior(e.to).boundary_right.demands;
      std::sort(mine.begin(), mine.end());
      std::sort(theirs.begin(), theirs.end());
      if (mine != theirs) {
        add(rules::kRQ4, Severity::warning, {relation_ref(e.from.space), relation_ref(e.to.space)},
            "asymmetric_lateral_demand",
            e.from.str() + " boundary_left differs from " + e.to.str() + " boundary_right on the shared bound");
      }
    }
  }

  void rq5() {
    const auto report = coverage_report(map_);
    if (report.annotated_lanelets < report.regular_lanelets) {
      add(rules::kRQ5, Severity::warning, {}, "partial_coverage",
          std::to_string(report.annotated_lanelets) + " of " + std::to_string(report.regular_lanelets) +
              " regular lanelets fully annotated");
    }
  }

  const SceneryMap& map_;
  const BehaviorGraph& graph_;
  std::vector<Finding> out_;
};

}  // namespace

std::vector<Finding> validate(const SceneryMap& map, const BehaviorGraph& graph) { return Validator(map, graph).run(); }

CoverageReport coverage_report(const SceneryMap& map) {
  CoverageReport r;
  for (const auto& [id, lane] : map.lanes()) {
    if (!lane.regular_motion_space()) continue;
    ++r.regular_lanelets;
    auto it = map.coverage().find(id);
    if (it != map.coverage().end() && it->second.size() == 1 && map.find_space(it->second.front())) {
      ++r.annotated_lanelets;
    }
  }
  return r;
}

std::vector<EquivalenceClass> equivalence_classes(const SceneryMap& map) {
  std::map<Fingerprint, std::vector<OsmId>> groups;
  for (const auto& [id, space] : map.spaces()) groups[behavior_space_fingerprint(space)].push_back(id);
  std::vector<EquivalenceClass> out;
  for (auto& [fp, ids] : groups) out.push_back({fp, std::move(ids)});
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.spaces.front() < b.spaces.front(); });
  return out;
}

namespace {

std::string subject_list(const std::vector<ElementRef>& subjects) {
  std::string out;
  for (const auto& s : subjects) out += (out.empty() ? "" : ",") + s.str();
  return out.empty() ? "-" : out;
}

}  // namespace

std::string findings_text(const std::vector<Finding>& findings) {
  std::string out;
  for (const auto& f : findings) {
    out += f.rule + " " + std::string(to_string(f.severity)) + " " + subject_list(f.subjects) + " " +
           f.full_message() + "\n";
  }
  return out;
}

std::string findings_json(const std::vector<Finding>& findings) {
  auto arr = nlohmann::json::array();
  for (const auto& f : findings) {
    auto subjects = nlohmann::json::array();
    for (const auto& s : f.subjects) subjects.push_back(s.str());
    arr.push_back({{"rule", f.rule},
                   {"severity", std::string(to_string(f.severity))},
                   {"subjects", subjects},
                   {"message", f.full_message()}});
  }
  return arr.dump(2) + "\n";
}

}  // namespace bssd
