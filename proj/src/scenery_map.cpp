#include "bssd/scenery_map.hpp"

#include "bssd/error.hpp"
#include "bssd/lanelet_geometry.hpp"
#include "bssd/osm_xml.hpp"
#include "bssd/tag_schema.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace bssd {

namespace sc = schema;

LaneKind lane_kind_from_subtype(std::string_view subtype) {
  if (subtype.empty() || subtype == "road" || subtype == "highway" || subtype == "play_street" ||
      subtype == "bus_lane" || subtype == "emergency_lane") {
    return LaneKind::vehicle_lane;
  }
  if (subtype == "bicycle_lane") return LaneKind::bicycle_lane;
  if (subtype == "crosswalk") return LaneKind::crosswalk;
  return LaneKind::other;
}

namespace {

MotionSpaceKind area_kind(std::string_view subtype) {
  if (subtype == "walkway") return MotionSpaceKind::sidewalk;
  if (subtype == "parking") return MotionSpaceKind::parking_area;
  if (subtype == "keepout") return MotionSpaceKind::keepout;
  return MotionSpaceKind::other;
}

class Interpreter {
 public:
  Interpreter(const OsmDocument& doc, const ModelLimits& limits, std::vector<Diagnostic>& diags)
      : doc_(doc), limits_(limits), diags_(diags) {}

  std::map<OsmId, LaneElement> lanes;
  std::map<OsmId, NonRegularMotionSpace> motion_spaces;
  std::map<OsmId, AtomicBehaviorSpace> spaces;
  std::set<OsmId> rejected;
  std::map<OsmId, std::vector<OsmId>> coverage;

  void run() {
    read_lanelets();
    read_areas();
    for (const auto& [id, rel] : doc_.relations) {
      if (rel.tag(sc::kType) == sc::kBehaviorSpace) read_space(rel);
    }
    check_references();
    report_orphans();
  }

 private:
  // Tracks whether the behavior space under construction is still acceptable.
  struct Scope {
    bool failed = false;
  };

  void add(std::string_view rule, Severity sev, std::vector<ElementRef> subjects, std::string code,
           std::string message) {
    const int line = subjects.empty() ? 0 : doc_.line_of(subjects.front());
    diags_.push_back({std::string(rule), sev, std::move(subjects), std::move(code), std::move(message), line});
  }

  void fail(Scope& scope, std::string_view rule, std::vector<ElementRef> subjects, std::string code,
            std::string message) {
    scope.failed = true;
    add(rule, Severity::error, std::move(subjects), std::move(code), std::move(message));
  }

  void read_lanelets() {
    for (const auto& [id, rel] : doc_.relations) {
      if (rel.tag(sc::kType) != sc::kLanelet) continue;
      auto bad = [&](const std::string& msg) {
        add(rules::kRQ5, Severity::warning, {relation_ref(id)}, "unparseable_lanelet", msg);
      };
      std::vector<OsmId> lefts;
      std::vector<OsmId> rights;
      for (const auto& m : rel.members) {
        if (m.type != ElementType::way) continue;
        if (m.role == "left") lefts.push_back(m.ref);
        if (m.role == "right") rights.push_back(m.ref);
      }
      if (lefts.size() != 1 || rights.size() != 1) {
        bad("needs exactly one left and one right bound way");
        continue;
      }
      const OsmWay* left = doc_.find_way(lefts.front());
      const OsmWay* right = doc_.find_way(rights.front());
      if (!left || !right) {
        bad("bound way missing");
        continue;
      }
      LaneElement lane;
      lane.id = id;
      lane.left_bound = left->id;
      lane.right_bound = right->id;
      const auto subtype = rel.tag("subtype");
      lane.kind = lane_kind_from_subtype(subtype);
      if (lane.kind == LaneKind::other) lane.kind_label = std::string(subtype);
      lane.one_directional = rel.tag("one_way") == "yes";
      if (const auto v = check(lane); !v.empty()) {
        bad(v.front().message);
        continue;
      }
      auto oriented = orient_bounds(doc_, *left, *right);
      if (!oriented) {
        bad("bound without usable geometry");
        continue;
      }
      lane.left_nodes = std::move(oriented->left);
      lane.right_nodes = std::move(oriented->right);
      lanes.emplace(id, std::move(lane));
    }
  }

  void read_areas() {
    for (const auto& [id, rel] : doc_.relations) {
      if (rel.tag(sc::kType) != sc::kMultipolygon) continue;
      NonRegularMotionSpace area;
      area.id = id;
      const auto subtype = rel.tag("subtype");
      area.kind = area_kind(subtype);
      if (area.kind == MotionSpaceKind::other) area.kind_label = std::string(subtype);
      for (const auto& m : rel.members) {
        if (m.type == ElementType::way && m.role == "outer") {
          area.geometry_ref = m.ref;
          break;
        }
      }
      motion_spaces.emplace(id, std::move(area));
    }
  }

  /// Resolves a BSSD member to a relation of `type`, reporting V-RQ2 problems.
  const OsmRelation* resolve(Scope& scope, const OsmRelation& owner, const OsmMember& m, std::string_view type) {
    if (m.type != ElementType::relation) {
      fail(scope, rules::kRQ2, {relation_ref(owner.id)}, "wrong_member_type",
           "role " + m.role + " must reference a relation, not a " + std::string(to_string(m.type)));
      return nullptr;
    }
    const OsmRelation* target = doc_.find_relation(m.ref);
    if (!target) {
      fail(scope, rules::kRQ2, {relation_ref(owner.id)}, "dangling_ref",
           "role " + m.role + " references missing relation " + relation_ref(m.ref).str());
      return nullptr;
    }
    reached_.insert(target->id);
    if (target->tag(sc::kType) != type) {
      fail(scope, rules::kRQ2, {relation_ref(owner.id), relation_ref(target->id)}, "wrong_member_type",
           "role " + m.role + " expects type=" + std::string(type));
      return nullptr;
    }
    return target;
  }

  void read_space(const OsmRelation& rel) {
    reached_.insert(rel.id);
    Scope scope;
    const auto self = relation_ref(rel.id);
    AtomicBehaviorSpace space;
    space.id = rel.id;

    std::vector<const OsmMember*> along;
    std::vector<const OsmMember*> against;
    for (const auto& m : rel.members) {
      if (m.role == sc::kRoleLanelet) {
        read_space_lanelet(scope, rel, m, space);
      } else if (m.role == sc::kRoleAlong) {
        along.push_back(&m);
      } else if (m.role == sc::kRoleAgainst) {
        against.push_back(&m);
      } else {
        fail(scope, rules::kRQ2, {self}, "unknown_role", "behavior_space member role '" + m.role + "'");
      }
    }

    if (space.lanes.empty() && !scope.failed) {
      fail(scope, rules::kRQ1, {self}, "missing_lanelet", "behavior_space references no lanelet");
    }
    for (std::size_t i = 1; i < space.lanes.size(); ++i) {
      const auto& a = lanes.at(space.lanes[i - 1]);
      const auto& b = lanes.at(space.lanes[i]);
      if (a.left_nodes.back() != b.left_nodes.front() || a.right_nodes.back() != b.right_nodes.front()) {
        fail(scope, rules::kRQ1, {self, relation_ref(b.id)}, "noncontiguous_space",
             "lanelet " + relation_ref(b.id).str() + " does not continue " + relation_ref(a.id).str());
      }
    }

    bool one_directional = !space.lanes.empty();
    for (OsmId id : space.lanes) {
      if (auto it = lanes.find(id); it != lanes.end() && !it->second.one_directional) one_directional = false;
    }

    if (along.empty()) {
      fail(scope, rules::kRQ2, {self}, "missing_attribute", "behavior_space has no along behavior");
    } else if (along.size() > 1) {
      fail(scope, rules::kRQ2, {self}, "duplicate_attribute", "behavior_space has several along behaviors");
    } else if (auto b = read_behavior(scope, rel, *along.front(), Direction::along)) {
      space.along = std::move(*b);
    }

    if (against.size() > 1) {
      fail(scope, rules::kRQ2, {self}, "duplicate_attribute", "behavior_space has several against behaviors");
    } else if (against.size() == 1) {
      if (auto b = read_behavior(scope, rel, *against.front(), Direction::against)) space.against = std::move(*b);
    } else if (!one_directional && !space.lanes.empty()) {
      fail(scope, rules::kRQ2, {self}, "missing_against", "bidirectional lanelet without against behavior");
    }

    if (scope.failed) {
      rejected.insert(rel.id);
    } else {
      spaces.emplace(rel.id, std::move(space));
    }
  }

  void read_space_lanelet(Scope& scope, const OsmRelation& rel, const OsmMember& m, AtomicBehaviorSpace& space) {
    const auto self = relation_ref(rel.id);
    const OsmRelation* target = m.type == ElementType::relation ? doc_.find_relation(m.ref) : nullptr;
    if (!target || target->tag(sc::kType) != sc::kLanelet) {
      fail(scope, rules::kRQ1, {self}, "invalid_lanelet_ref",
           "member " + ElementRef{m.type, m.ref}.str() + " is not a lanelet relation");
      return;
    }
    auto& covering = coverage[target->id];
    if (std::find(space.lanes.begin(), space.lanes.end(), target->id) != space.lanes.end()) {
      fail(scope, rules::kRQ1, {self, relation_ref(target->id)}, "invalid_lanelet_ref", "lanelet listed twice");
      return;
    }
    covering.push_back(rel.id);
    if (!lanes.count(target->id)) {
      fail(scope, rules::kRQ1, {self, relation_ref(target->id)}, "invalid_lanelet_ref",
           "lanelet " + relation_ref(target->id).str() + " could not be interpreted");
      return;
    }
    space.lanes.push_back(target->id);
  }

  std::optional<Behavior> read_behavior(Scope& outer, const OsmRelation& space_rel, const OsmMember& m,
                                        Direction d) {
    const OsmRelation* rel = resolve(outer, space_rel, m, sc::kBehavior);
    if (!rel) return std::nullopt;
    Scope scope;
    const auto self = relation_ref(rel->id);
    Behavior b;
    b.direction = d;
    b.source = rel->id;

    try {
      b.speed = sc::decode_speed(rel->tags);
    } catch (const Error& e) {
      fail(scope, rules::kRQ2, {self}, "invalid_tag_value", e.what());
    }
    try {
      b.overtake = sc::decode_overtake(rel->tags);
    } catch (const Error& e) {
      fail(scope, rules::kRQ2, {self}, "invalid_tag_value", e.what());
    }

    std::map<std::string_view, std::vector<const OsmMember*>> by_role;
    for (const auto& member : rel->members) {
      if (member.role == sc::kRoleBoundaryLong || member.role == sc::kRoleBoundaryLeft ||
          member.role == sc::kRoleBoundaryRight || member.role == sc::kRoleReservation) {
        by_role[member.role].push_back(&member);
      } else {
        fail(scope, rules::kRQ2, {self}, "unknown_role", "behavior member role '" + member.role + "'");
      }
    }

    const std::pair<std::string_view, BoundaryAttribute*> boundaries[] = {
        {sc::kRoleBoundaryLong, &b.boundary_long},
        {sc::kRoleBoundaryLeft, &b.boundary_left},
        {sc::kRoleBoundaryRight, &b.boundary_right},
    };
    for (const auto& [role, attr] : boundaries) {
      const auto& found = by_role[role];
      if (found.empty()) {
        fail(scope, rules::kRQ2, {self}, "missing_attribute", "behavior has no " + std::string(role) + " member");
      } else if (found.size() > 1) {
        fail(scope, rules::kRQ2, {self}, "duplicate_attribute",
             "behavior has several " + std::string(role) + " members");
      } else if (const OsmRelation* br = resolve(scope, *rel, *found.front(), sc::kBoundary)) {
        read_boundary(scope, *br, *attr);
      }
    }

    const auto& reservations = by_role[sc::kRoleReservation];
    if (reservations.empty()) {
      fail(scope, rules::kRQ2, {self}, "missing_attribute", "behavior has no reservation member");
    }
    for (const OsmMember* rm : reservations) {
      if (const OsmRelation* rr = resolve(scope, *rel, *rm, sc::kReservation)) read_reservation(scope, *rr, b);
    }

    if (!scope.failed) {
      for (const auto& v : check(b, limits_)) fail(scope, rules::kRQ2, {self}, v.rule, v.message);
    }
    if (scope.failed) {
      outer.failed = true;
      return std::nullopt;
    }
    return b;
  }

  void read_boundary(Scope& scope, const OsmRelation& rel, BoundaryAttribute& attr) {
    const auto self = relation_ref(rel.id);
    try {
      attr.demands = sc::decode_crossing(rel.tags);
    } catch (const Error& e) {
      fail(scope, rules::kRQ2, {self}, "invalid_tag_value", e.what());
    }
    for (const auto& m : rel.members) {
      if (m.role != sc::kRoleBoundary) {
        fail(scope, rules::kRQ2, {self}, "unknown_role", "boundary member role '" + m.role + "'");
      } else if (m.type != ElementType::way) {
        fail(scope, rules::kRQ2, {self}, "wrong_member_type", "boundary geometry must be a way");
      } else if (!doc_.find_way(m.ref)) {
        fail(scope, rules::kRQ2, {self}, "dangling_ref", "boundary references missing way " + way_ref(m.ref).str());
      } else {
        attr.geometry_refs.push_back(m.ref);
      }
    }
  }

  void read_reservation(Scope& scope, const OsmRelation& rel, Behavior& b) {
    const auto self = relation_ref(rel.id);
    ReservationDemand demand;
    try {
      demand = sc::decode_reservation(rel.tags);
    } catch (const Error& e) {
      fail(scope, rules::kRQ2, {self}, "invalid_tag_value", e.what());
    }
    for (const auto& m : rel.members) {
      LinkRole role;
      if (m.role == sc::kRoleLink) {
        role = LinkRole::origin;
      } else if (m.role == sc::kRoleLinkDestination) {
        role = LinkRole::destination;
      } else {
        fail(scope, rules::kRQ2, {self}, "unknown_role", "reservation member role '" + m.role + "'");
        continue;
      }
      const ElementRef target{m.type, m.ref};
      if (!doc_.contains(target)) {
        fail(scope, rules::kRQ2, {self}, "dangling_ref", "link references missing element " + target.str());
        continue;
      }
      const OsmRelation* tr = m.type == ElementType::relation ? doc_.find_relation(m.ref) : nullptr;
      if (!tr || (tr->tag(sc::kType) != sc::kLanelet && tr->tag(sc::kType) != sc::kMultipolygon)) {
        fail(scope, rules::kRQ2, {self, target}, "invalid_link_target",
             "link must point to a lanelet or area relation");
        continue;
      }
      demand.links.push_back({m.ref, role});
    }
    b.reservation.demands.push_back(std::move(demand));
  }

  // Dangling references outside BSSD relations: warnings, the map stays usable.
  void check_references() {
    for (const auto& [id, way] : doc_.ways) {
      for (OsmId n : way.nodes) {
        if (!doc_.find_node(n)) {
          add(rules::kRQ5, Severity::warning, {way_ref(id)}, "dangling_ref",
              "way references missing node " + node_ref(n).str());
        }
      }
    }
    for (const auto& [id, rel] : doc_.relations) {
      if (sc::is_bssd_type(rel.tag(sc::kType))) continue;
      for (const auto& m : rel.members) {
        if (!doc_.contains({m.type, m.ref})) {
          add(rules::kRQ5, Severity::warning, {relation_ref(id)}, "dangling_ref",
              "member " + ElementRef{m.type, m.ref}.str() + " missing");
        }
      }
    }
  }

  void report_orphans() {
    for (const auto& [id, rel] : doc_.relations) {
      const auto type = rel.tag(sc::kType);
      if (sc::is_bssd_type(type) && !reached_.count(id)) {
        add(rules::kRQ5, Severity::warning, {relation_ref(id)}, "orphan_bssd_relation",
            "type=" + std::string(type) + " relation not reachable from any behavior_space");
      }
    }
  }

  const OsmDocument& doc_;
  const ModelLimits& limits_;
  std::vector<Diagnostic>& diags_;
  std::set<OsmId> reached_;
};

}  // namespace

const LaneElement* SceneryMap::find_lane(OsmId id) const {
  auto it = lanes_.find(id);
  return it == lanes_.end() ? nullptr : &it->second;
}

const AtomicBehaviorSpace* SceneryMap::find_space(OsmId id) const {
  auto it = spaces_.find(id);
  return it == spaces_.end() ? nullptr : &it->second;
}

std::optional<OsmId> SceneryMap::resolve_space(std::string_view id_or_name) const {
  OsmId id = 0;
  const auto* end = id_or_name.data() + id_or_name.size();
  const auto res = std::from_chars(id_or_name.data(), end, id);
  if (res.ec == std::errc{} && res.ptr == end && spaces_.count(id)) return id;
  for (const auto& [sid, space] : spaces_) {
    if (const auto* rel = document_.find_relation(sid); rel && rel->tag("name") == id_or_name) return sid;
  }
  return std::nullopt;
}

SceneryMap seal(OsmDocument document, const ModelLimits& limits, std::vector<Diagnostic> extra) {
  SceneryMap map;
  map.document_ = std::move(document);
  map.limits_ = limits;
  map.diagnostics_ = std::move(extra);
  Interpreter interp(map.document_, map.limits_, map.diagnostics_);
  interp.run();
  map.lanes_ = std::move(interp.lanes);
  map.motion_spaces_ = std::move(interp.motion_spaces);
  map.spaces_ = std::move(interp.spaces);
  map.rejected_ = std::move(interp.rejected);
  map.coverage_ = std::move(interp.coverage);
  auto& d = map.diagnostics_;
  std::sort(d.begin(), d.end(), finding_order);
  d.erase(std::unique(d.begin(), d.end(),
                      [](const Diagnostic& a, const Diagnostic& b) {
                        return a.rule == b.rule && a.subjects == b.subjects && a.code == b.code &&
                               a.message == b.message && a.severity == b.severity;
                      }),
          d.end());
  return map;
}

LoadResult load_map_from_string(std::string_view xml, const ModelLimits& limits) {
  auto read = read_osm_xml(xml);
  std::vector<Diagnostic> extra;
  for (auto& issue : read.issues) {
    extra.push_back({std::string(rules::kRQ5), Severity::warning, {}, std::move(issue.code),
                     "line " + std::to_string(issue.line) + ": " + issue.message, issue.line});
  }
  LoadResult out;
  out.map = seal(std::move(read.document), limits, std::move(extra));
  out.diagnostics = out.map.diagnostics();
  return out;
}

LoadResult load_map(const std::filesystem::path& path, const ModelLimits& limits) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::io, "cannot read " + path.string());
  return load_map_from_string(buf.str(), limits);
}

std::string save_map(const SceneryMap& map) { return write_osm_xml(map.document()); }

}  // namespace bssd
