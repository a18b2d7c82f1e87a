#include "bssd/describe.hpp"

#include "bssd/tag_schema.hpp"

namespace bssd {

namespace {

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += sep;
    out += p;
  }
  return out;
}

std::string suffix(const std::optional<Condition>& c) {
  return c ? " @ " + schema::condition_token(*c) : std::string();
}

}  // namespace

std::string display_name(const ParticipantType& p) {
  switch (p.kind()) {
    case ParticipantKind::motor_vehicle: return "motor_vehicles";
    case ParticipantKind::pedestrian: return "pedestrians";
    case ParticipantKind::bicycle: return "bicycles";
    case ParticipantKind::rail_vehicle: return "rail_vehicles";
    case ParticipantKind::other: return p.label();
  }
  return {};
}

std::string describe(const SpeedAttribute& attr) {
  std::vector<std::string> parts;
  for (const auto& d : attr.demands) {
    parts.push_back(std::string(to_string(d.limit)) + " " + schema::format_number(d.value_kmh) + " km/h" +
                    suffix(d.condition));
  }
  return join(parts, "; ");
}

std::string describe(const std::vector<CrossingDemand>& demands) {
  std::vector<std::string> parts;
  for (const auto& d : demands) {
    std::string s(to_string(d.permission));
    if (d.condition) s += " " + schema::condition_token(*d.condition);
    parts.push_back(std::move(s));
  }
  return join(parts, "; ");
}

std::string describe(const ReservationDemand& demand) {
  std::string s(to_string(demand.kind));
  if (!demand.entitled.empty()) {
    std::vector<std::string> names;
    for (const auto& p : demand.entitled) names.push_back(display_name(p));
    s += "/" + join(names, ",");
  }
  return s + suffix(demand.condition);
}

std::string describe(const ReservationAttribute& attr) {
  std::vector<std::string> parts;
  for (const auto& d : attr.demands) parts.push_back(describe(d));
  return join(parts, "; ");
}

std::string describe(const OvertakeAttribute& attr) {
  std::vector<std::string> parts;
  for (const auto& d : attr.demands) parts.push_back(std::string(d.permitted ? "yes" : "no") + suffix(d.condition));
  return join(parts, "; ");
}

std::string describe(const Behavior& behavior, Attribute attribute) {
  switch (attribute) {
    case Attribute::speed: return describe(behavior.speed);
    case Attribute::boundary_long: return describe(behavior.boundary_long.demands);
    case Attribute::boundary_left: return describe(behavior.boundary_left.demands);
    case Attribute::boundary_right: return describe(behavior.boundary_right.demands);
    case Attribute::reservation: return describe(behavior.reservation);
    case Attribute::overtake: return describe(behavior.overtake);
  }
  return {};
}

std::string demand_table(const Behavior& behavior) {
  std::string out;
  for (const auto attr : kAllAttributes) {
    out += std::string(to_string(attr)) + ": " + describe(behavior, attr) + "\n";
  }
  return out;
}

}  // namespace bssd
