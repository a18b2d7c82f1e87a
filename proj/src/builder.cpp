#include "bssd/builder.hpp"

#include "bssd/error.hpp"
#include "bssd/lanelet_edit.hpp"
#include "bssd/tag_schema.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace bssd {

namespace sc = schema;

namespace {

const LaneElement& require_lane(const SceneryMap& map, OsmId id) {
  const LaneElement* lane = map.find_lane(id);
  if (!lane) throw Error(ErrorCode::unknown_lanelet, "no interpretable lanelet " + relation_ref(id).str());
  return *lane;
}

OsmId add_relation(OsmDocument& doc, Tags tags, std::vector<OsmMember> members) {
  const OsmId id = doc.next_id(ElementType::relation);
  doc.relations.emplace(id, OsmRelation{id, std::move(members), std::move(tags), {}});
  return id;
}

OsmId add_boundary(OsmDocument& doc, const std::vector<CrossingDemand>& demands, const std::vector<OsmId>& ways) {
  Tags tags{{std::string(sc::kType), std::string(sc::kBoundary)}};
  sc::encode_crossing(demands, tags);
  std::vector<OsmMember> members;
  for (OsmId w : ways) members.push_back({ElementType::way, w, std::string(sc::kRoleBoundary)});
  return add_relation(doc, std::move(tags), std::move(members));
}

OsmId add_behavior(OsmDocument& doc, const Behavior& b, OsmId long_way, const std::vector<OsmId>& left_ways,
                   const std::vector<OsmId>& right_ways) {
  std::vector<OsmMember> members;
  auto member = [&](std::string_view role, OsmId ref) {
    members.push_back({ElementType::relation, ref, std::string(role)});
  };
  member(sc::kRoleBoundaryLong, add_boundary(doc, b.boundary_long.demands, {long_way}));
  member(sc::kRoleBoundaryLeft, add_boundary(doc, b.boundary_left.demands, left_ways));
  member(sc::kRoleBoundaryRight, add_boundary(doc, b.boundary_right.demands, right_ways));
  for (const auto& d : b.reservation.demands) {
    Tags tags{{std::string(sc::kType), std::string(sc::kReservation)}};
    sc::encode_reservation(d, tags);
    std::vector<OsmMember> links;
    for (const auto& l : d.links) {
      links.push_back({ElementType::relation, l.target,
                       std::string(l.role == LinkRole::origin ? sc::kRoleLink : sc::kRoleLinkDestination)});
    }
    member(sc::kRoleReservation, add_relation(doc, std::move(tags), std::move(links)));
  }
  Tags tags{{std::string(sc::kType), std::string(sc::kBehavior)}};
  sc::encode_speed(b.speed, tags);
  sc::encode_overtake(b.overtake, tags);
  return add_relation(doc, std::move(tags), std::move(members));
}

}  // namespace

AnnotateResult annotate(const SceneryMap& map, const std::vector<OsmId>& lanelets, const Behavior& along,
                        const std::optional<Behavior>& against, std::string_view name) {
  if (lanelets.empty()) throw Error(ErrorCode::invalid_argument, "annotate needs at least one lanelet");
  std::vector<const LaneElement*> lanes;
  for (OsmId id : lanelets) {
    lanes.push_back(&require_lane(map, id));
    if (map.coverage().count(id)) {
      throw Error(ErrorCode::already_covered, relation_ref(id).str() + " already belongs to a behavior_space");
    }
  }
  for (std::size_t i = 1; i < lanes.size(); ++i) {
    if (lanes[i - 1]->left_nodes.back() != lanes[i]->left_nodes.front() ||
        lanes[i - 1]->right_nodes.back() != lanes[i]->right_nodes.front()) {
      throw Error(ErrorCode::invalid_argument, relation_ref(lanes[i]->id).str() + " does not continue " +
                                                   relation_ref(lanes[i - 1]->id).str());
    }
  }

  AtomicBehaviorSpace space;
  space.lanes = lanelets;
  space.along = along;
  space.along.direction = Direction::along;
  if (against) {
    space.against = *against;
    space.against->direction = Direction::against;
  }
  const bool one_directional =
      std::all_of(lanes.begin(), lanes.end(), [](const LaneElement* l) { return l->one_directional; });
  throw_violations(check(space, one_directional, map.limits()));

  const auto& doc0 = map.document();
  for (const Behavior* b : {&space.along, space.against ? &*space.against : nullptr}) {
    if (!b) continue;
    for (const auto& d : b->reservation.demands) {
      for (const auto& l : d.links) {
        const OsmRelation* t = doc0.find_relation(l.target);
        if (!t || (t->tag(sc::kType) != sc::kLanelet && t->tag(sc::kType) != sc::kMultipolygon)) {
          throw Error(ErrorCode::invalid_argument,
                      "link target " + relation_ref(l.target).str() + " is not a lanelet or area");
        }
      }
    }
  }

  OsmDocument doc = map.document();
  std::vector<OsmId> left_ways;
  std::vector<OsmId> right_ways;
  for (const auto* l : lanes) {
    left_ways.push_back(l->left_bound);
    right_ways.push_back(l->right_bound);
  }

  std::vector<OsmMember> members;
  for (OsmId id : lanelets) members.push_back({ElementType::relation, id, std::string(sc::kRoleLanelet)});
  const OsmId along_entry = add_longitudinal_boundary(doc, *lanes.front(), LaneletEnd::start);
  members.push_back({ElementType::relation, add_behavior(doc, space.along, along_entry, left_ways, right_ways),
                     std::string(sc::kRoleAlong)});
  if (space.against) {
    const OsmId against_entry = add_longitudinal_boundary(doc, *lanes.back(), LaneletEnd::end);
    std::vector<OsmId> rl(right_ways.rbegin(), right_ways.rend());
    std::vector<OsmId> ll(left_ways.rbegin(), left_ways.rend());
    members.push_back({ElementType::relation, add_behavior(doc, *space.against, against_entry, rl, ll),
                       std::string(sc::kRoleAgainst)});
  }
  Tags tags{{std::string(sc::kType), std::string(sc::kBehaviorSpace)}};
  if (!name.empty()) tags["name"] = std::string(name);
  const OsmId space_id = add_relation(doc, std::move(tags), std::move(members));
  return {seal(std::move(doc), map.limits()), space_id};
}

CrossingPermission permission_from_linestring(const Tags& tags) {
  auto get = [&](std::string_view key) {
    auto it = tags.find(key);
    return it == tags.end() ? std::string_view{} : std::string_view(it->second);
  };
  const auto type = get("type");
  const auto subtype = get("subtype");
  if (type == "curbstone" || type == "curb" || type == "road_border" || type == "fence" || type == "guard_rail" ||
      type == "wall") {
    return CrossingPermission::not_possible;
  }
  if (type == "virtual") return CrossingPermission::allowed;
  if (type == "line_thin" || type == "line_thick") {
    if (subtype == "dashed" || subtype == "dashed_dashed") return CrossingPermission::allowed;
    return CrossingPermission::prohibited;  // solid, solid_solid, mixed lines, unknown
  }
  return CrossingPermission::prohibited;
}

DerivedSpec derive_defaults(const SceneryMap& map, OsmId lanelet, const DeriveContext& context) {
  const LaneElement& lane = require_lane(map, lanelet);
  const auto& doc = map.document();
  const auto left = permission_from_linestring(doc.ways.at(lane.left_bound).tags);
  const auto right = permission_from_linestring(doc.ways.at(lane.right_bound).tags);

  auto make = [&](Direction d, CrossingPermission l, CrossingPermission r) {
    Behavior b;
    b.direction = d;
    b.speed.demands.push_back({SpeedLimitKind::maximum, context.zone_speed_kmh, std::nullopt});
    b.boundary_long.demands.push_back({CrossingPermission::allowed, std::nullopt});
    b.boundary_left.demands.push_back({l, std::nullopt});
    b.boundary_right.demands.push_back({r, std::nullopt});
    b.reservation.demands.push_back({ReservationKind::own, {}, {}, std::nullopt});
    b.overtake.demands.push_back({true, std::nullopt});
    return b;
  };
  DerivedSpec out;
  out.along = make(Direction::along, left, right);
  if (!lane.one_directional) out.against = make(Direction::against, right, left);
  return out;
}

// ---------------------------------------------------------------------------
// Behavior-spec text

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

void put(Tags& tags, std::string_view key, std::string_view value, int line) {
  if (!tags.emplace(std::string(key), std::string(value)).second) {
    throw Error(ErrorCode::schema, "line " + std::to_string(line) + ": duplicate key " + std::string(key));
  }
}

std::vector<ReservationLink> parse_links(std::string_view value, LinkRole role, int line) {
  std::vector<ReservationLink> out;
  for (const auto& item : sc::split_list(value)) {
    OsmId id = 0;
    const auto res = std::from_chars(item.data(), item.data() + item.size(), id);
    if (res.ec != std::errc{} || res.ptr != item.data() + item.size()) {
      throw Error(ErrorCode::schema, "line " + std::to_string(line) + ": bad link id " + item);
    }
    out.push_back({id, role});
  }
  return out;
}

}  // namespace

Behavior parse_behavior_spec(std::string_view text) {
  Tags behavior_tags;
  Tags boundary_tags[3];
  struct PendingReservation {
    Tags tags;
    std::vector<ReservationLink> links;
  };
  std::vector<PendingReservation> reservations;

  static constexpr std::string_view kBoundaryPrefixes[3] = {"boundary_long:", "boundary_left:", "boundary_right:"};

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;

    std::string_view key;
    std::string_view value;
    if (const auto sep = line.find(": "); sep != std::string_view::npos) {
      key = trim(line.substr(0, sep));
      value = trim(line.substr(sep + 2));
    } else if (line.back() == ':') {
      key = trim(line.substr(0, line.size() - 1));
    } else {
      throw Error(ErrorCode::schema, "line " + std::to_string(line_no) + ": expected 'key: value'");
    }

    if (key == sc::kSpeedMax || key == sc::kSpeedMin || key == sc::kCondSpeedMax || key == sc::kCondSpeedMin ||
        key == sc::kOvertake || key == sc::kCondOvertake) {
      put(behavior_tags, key, value, line_no);
      continue;
    }
    bool handled = false;
    for (int i = 0; i < 3; ++i) {
      if (key.substr(0, kBoundaryPrefixes[i].size()) != kBoundaryPrefixes[i]) continue;
      const auto sub = key.substr(kBoundaryPrefixes[i].size());
      if (sub != sc::kCrossing && sub != sc::kCondition) break;
      put(boundary_tags[i], sub, value, line_no);
      handled = true;
    }
    if (handled) continue;
    if (key == sc::kReservation) {
      reservations.emplace_back();
      put(reservations.back().tags, sc::kReservation, value, line_no);
      continue;
    }
    if (reservations.empty() || (key != sc::kObject && key != "reservation:condition" &&
                                 key != "reservation:link" && key != "reservation:link:destination")) {
      throw Error(ErrorCode::schema, "line " + std::to_string(line_no) + ": unexpected key " + std::string(key));
    }
    auto& r = reservations.back();
    if (key == sc::kObject) {
      put(r.tags, sc::kObject, value, line_no);
    } else if (key == "reservation:condition") {
      put(r.tags, sc::kCondition, value, line_no);
    } else {
      const auto role = key == "reservation:link" ? LinkRole::origin : LinkRole::destination;
      auto links = parse_links(value, role, line_no);
      r.links.insert(r.links.end(), links.begin(), links.end());
    }
  }

  Behavior b;
  b.speed = sc::decode_speed(behavior_tags);
  b.overtake = sc::decode_overtake(behavior_tags);
  b.boundary_long.demands = sc::decode_crossing(boundary_tags[0]);
  b.boundary_left.demands = sc::decode_crossing(boundary_tags[1]);
  b.boundary_right.demands = sc::decode_crossing(boundary_tags[2]);
  for (auto& r : reservations) {
    auto d = sc::decode_reservation(r.tags);
    d.links = std::move(r.links);
    b.reservation.demands.push_back(std::move(d));
  }
  return b;
}

std::string format_behavior_spec(const Behavior& b) {
  std::ostringstream out;
  Tags tags;
  sc::encode_speed(b.speed, tags);
  sc::encode_overtake(b.overtake, tags);
  for (const auto& [k, v] : tags) out << k << ": " << v << "\n";
  const std::pair<std::string_view, const BoundaryAttribute*> boundaries[] = {
      {"boundary_long", &b.boundary_long}, {"boundary_left", &b.boundary_left}, {"boundary_right", &b.boundary_right}};
  for (const auto& [name, attr] : boundaries) {
    Tags bt;
    sc::encode_crossing(attr->demands, bt);
    for (const auto& [k, v] : bt) out << name << ":" << k << ": " << v << "\n";
  }
  for (const auto& d : b.reservation.demands) {
    out << "reservation: " << to_string(d.kind) << "\n";
    if (!d.entitled.empty()) out << "object: " << sc::participant_list(d.entitled) << "\n";
    if (d.condition) out << "reservation:condition: " << sc::condition_token(*d.condition) << "\n";
    std::vector<std::string> origin;
    std::vector<std::string> dest;
    for (const auto& l : d.links) (l.role == LinkRole::origin ? origin : dest).push_back(std::to_string(l.target));
    auto join = [](const std::vector<std::string>& v) {
      std::string s;
      for (const auto& x : v) s += (s.empty() ? "" : ";") + x;
      return s;
    };
    if (!origin.empty()) out << "reservation:link: " << join(origin) << "\n";
    if (!dest.empty()) out << "reservation:link:destination: " << join(dest) << "\n";
  }
  return out.str();
}

}  // namespace bssd
