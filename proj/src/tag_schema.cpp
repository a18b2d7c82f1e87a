#include "bssd/tag_schema.hpp"

#include "bssd/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>

namespace bssd::schema {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorCode::schema, msg); }

const std::string* find_tag(const Tags& tags, std::string_view key) {
  auto it = tags.find(key);
  return it == tags.end() ? nullptr : &it->second;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += sep;
    out += p;
  }
  return out;
}

std::optional<int> parse_hhmm(std::string_view s) {
  if (s.size() != 4 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    return std::nullopt;
  }
  const int hh = (s[0] - '0') * 10 + (s[1] - '0');
  const int mm = (s[2] - '0') * 10 + (s[3] - '0');
  if (hh > 23 || mm > 59) return std::nullopt;
  return hh * 60 + mm;
}

// "<value> @ <token>" entries of a condition:* list.
struct ConditionalEntry {
  std::string value;
  Condition condition;
};

std::vector<ConditionalEntry> parse_conditional_list(std::string_view key, std::string_view value) {
  std::vector<ConditionalEntry> out;
  for (const auto& item : split_list(value)) {
    const auto at = item.find('@');
    if (at == std::string::npos) fail(std::string(key) + ": entry without '@ <condition>': " + item);
    std::string v(trim(std::string_view(item).substr(0, at)));
    const auto token = trim(std::string_view(item).substr(at + 1));
    if (v.empty()) fail(std::string(key) + ": entry without value: " + item);
    out.push_back({std::move(v), parse_condition(token)});
  }
  return out;
}

double parse_speed_value(std::string_view key, std::string_view raw) {
  const auto v = parse_number(raw);
  if (!v) fail(std::string(key) + ": not a number: " + std::string(raw));
  return *v;
}

bool parse_yes_no(std::string_view key, std::string_view raw) {
  if (raw == "yes") return true;
  if (raw == "no") return false;
  fail(std::string(key) + ": expected yes|no, got " + std::string(raw));
}

}  // namespace

bool is_bssd_type(std::string_view type) {
  return type == kBehaviorSpace || type == kBehavior || type == kBoundary || type == kReservation;
}

std::vector<std::string> split_list(std::string_view value, char sep) {
  std::vector<std::string> out;
  while (true) {
    const auto pos = value.find(sep);
    const auto part = trim(value.substr(0, pos));
    if (!part.empty()) out.emplace_back(part);
    if (pos == std::string_view::npos) break;
    value.remove_prefix(pos + 1);
  }
  return out;
}

std::string condition_token(const Condition& c) {
  switch (c.kind()) {
    case ConditionKind::no_stagnant_traffic:
      return "no_stagnant_traffic";
    case ConditionKind::traffic_light:
      return c.light_state() == TrafficLightState::active ? "traffic_light:active" : "traffic_light:inactive";
    case ConditionKind::time_window: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "time:%02d%02d-%02d%02d", c.window_start() / 60, c.window_start() % 60,
                    c.window_end() / 60, c.window_end() % 60);
      return buf;
    }
    case ConditionKind::weather:
      return "weather:" + c.label();
    case ConditionKind::custom:
      return "custom:" + c.label();
  }
  return {};
}

Condition parse_condition(std::string_view token) {
  token = trim(token);
  if (token == "no_stagnant_traffic") return Condition::no_stagnant_traffic();
  if (token == "traffic_light:active") return Condition::traffic_light(TrafficLightState::active);
  if (token == "traffic_light:inactive") return Condition::traffic_light(TrafficLightState::inactive);
  const auto colon = token.find(':');
  if (colon == std::string_view::npos) fail("unknown condition token: " + std::string(token));
  const auto head = token.substr(0, colon);
  const auto rest = token.substr(colon + 1);
  try {
    if (head == "time") {
      const auto dash = rest.find('-');
      const auto start = dash == std::string_view::npos ? std::nullopt : parse_hhmm(rest.substr(0, dash));
      const auto end = dash == std::string_view::npos ? std::nullopt : parse_hhmm(rest.substr(dash + 1));
      if (!start || !end) fail("malformed time window: " + std::string(token));
      return Condition::time_window(*start, *end);
    }
    if (head == "weather") return Condition::weather(rest);
    if (head == "custom") return Condition::custom(rest);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::schema) throw;
    fail("invalid condition " + std::string(token) + ": " + e.what());
  }
  fail("unknown condition token: " + std::string(token));
}

std::optional<ConditionKind> parse_condition_kind(std::string_view name) {
  name = trim(name);
  if (name == "no_stagnant_traffic") return ConditionKind::no_stagnant_traffic;
  if (name == "traffic_light") return ConditionKind::traffic_light;
  if (name == "time" || name == "time_window") return ConditionKind::time_window;
  if (name == "weather") return ConditionKind::weather;
  if (name == "custom") return ConditionKind::custom;
  return std::nullopt;
}

std::string participant_token(const ParticipantType& p) {
  switch (p.kind()) {
    case ParticipantKind::motor_vehicle: return "motor_vehicle";
    case ParticipantKind::pedestrian: return "pedestrian";
    case ParticipantKind::bicycle: return "bicycle";
    case ParticipantKind::rail_vehicle: return "rail_vehicle";
    case ParticipantKind::other: return p.label();
  }
  return {};
}

ParticipantType parse_participant(std::string_view token) {
  token = trim(token);
  if (token == "motor_vehicle") return ParticipantType(ParticipantKind::motor_vehicle);
  if (token == "pedestrian") return ParticipantType(ParticipantKind::pedestrian);
  if (token == "bicycle") return ParticipantType(ParticipantKind::bicycle);
  if (token == "rail_vehicle") return ParticipantType(ParticipantKind::rail_vehicle);
  if (token.empty()) fail("empty participant");
  return ParticipantType::other(token);
}

std::string participant_list(const ParticipantSet& set) {
  std::vector<std::string> parts;
  for (const auto& p : set) parts.push_back(participant_token(p));
  return join(parts, ";");
}

ParticipantSet parse_participant_list(std::string_view value) {
  ParticipantSet out;
  for (const auto& item : split_list(value)) out.insert(parse_participant(item));
  return out;
}

std::optional<CrossingPermission> parse_permission(std::string_view s) {
  s = trim(s);
  if (s == "allowed") return CrossingPermission::allowed;
  if (s == "conditional") return CrossingPermission::conditional;
  if (s == "prohibited") return CrossingPermission::prohibited;
  if (s == "not_possible") return CrossingPermission::not_possible;
  return std::nullopt;
}

std::optional<ReservationKind> parse_reservation_kind(std::string_view s) {
  s = trim(s);
  if (s == "own") return ReservationKind::own;
  if (s == "externally") return ReservationKind::externally;
  if (s == "equally") return ReservationKind::equally;
  if (s == "none") return ReservationKind::none;
  return std::nullopt;
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::optional<double> parse_number(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

// ---------------------------------------------------------------------------

void encode_speed(const SpeedAttribute& attr, Tags& tags) {
  std::vector<std::string> cond_max;
  std::vector<std::string> cond_min;
  for (const auto& d : attr.demands) {
    const auto value = format_number(d.value_kmh);
    if (!d.condition) {
      const auto key = std::string(d.limit == SpeedLimitKind::maximum ? kSpeedMax : kSpeedMin);
      if (tags.count(key)) throw Error(ErrorCode::invariant_violation, "two unconditional " + key + " demands");
      tags[key] = value;
    } else {
      (d.limit == SpeedLimitKind::maximum ? cond_max : cond_min)
          .push_back(value + " @ " + condition_token(*d.condition));
    }
  }
  if (!cond_max.empty()) tags[std::string(kCondSpeedMax)] = join(cond_max, "; ");
  if (!cond_min.empty()) tags[std::string(kCondSpeedMin)] = join(cond_min, "; ");
}

SpeedAttribute decode_speed(const Tags& tags) {
  SpeedAttribute attr;
  if (const auto* v = find_tag(tags, kSpeedMax)) {
    attr.demands.push_back({SpeedLimitKind::maximum, parse_speed_value(kSpeedMax, *v), std::nullopt});
  }
  if (const auto* v = find_tag(tags, kSpeedMin)) {
    attr.demands.push_back({SpeedLimitKind::minimum, parse_speed_value(kSpeedMin, *v), std::nullopt});
  }
  for (const auto& [key, kind] : {std::pair{kCondSpeedMax, SpeedLimitKind::maximum},
                                  std::pair{kCondSpeedMin, SpeedLimitKind::minimum}}) {
    const auto* v = find_tag(tags, key);
    if (!v) continue;
    for (auto& e : parse_conditional_list(key, *v)) {
      attr.demands.push_back({kind, parse_speed_value(key, e.value), std::move(e.condition)});
    }
  }
  return attr;
}

void encode_overtake(const OvertakeAttribute& attr, Tags& tags) {
  std::vector<std::string> conditional;
  for (const auto& d : attr.demands) {
    const std::string value = d.permitted ? "yes" : "no";
    if (!d.condition) {
      if (tags.count(std::string(kOvertake))) {
        throw Error(ErrorCode::invariant_violation, "two unconditional overtake demands");
      }
      tags[std::string(kOvertake)] = value;
    } else {
      conditional.push_back(value + " @ " + condition_token(*d.condition));
    }
  }
  if (!conditional.empty()) tags[std::string(kCondOvertake)] = join(conditional, "; ");
}

OvertakeAttribute decode_overtake(const Tags& tags) {
  OvertakeAttribute attr;
  if (const auto* v = find_tag(tags, kOvertake)) {
    attr.demands.push_back({parse_yes_no(kOvertake, *v), std::nullopt});
  }
  if (const auto* v = find_tag(tags, kCondOvertake)) {
    for (auto& e : parse_conditional_list(kCondOvertake, *v)) {
      attr.demands.push_back({parse_yes_no(kCondOvertake, e.value), std::move(e.condition)});
    }
  }
  return attr;
}

void encode_crossing(const std::vector<CrossingDemand>& demands, Tags& tags) {
  std::vector<std::string> permissions;
  std::vector<std::string> conditions;
  for (const auto& d : demands) {
    throw_violations(check(d));
    permissions.emplace_back(to_string(d.permission));
    if (d.condition) conditions.push_back(condition_token(*d.condition));
  }
  if (!permissions.empty()) tags[std::string(kCrossing)] = join(permissions, ";");
  if (!conditions.empty()) tags[std::string(kCondition)] = join(conditions, ";");
}

std::vector<CrossingDemand> decode_crossing(const Tags& tags) {
  std::vector<CrossingDemand> out;
  const auto* crossing = find_tag(tags, kCrossing);
  if (!crossing) {
    if (find_tag(tags, kCondition)) fail("condition given without crossing");
    return out;
  }
  for (const auto& item : split_list(*crossing)) {
    const auto p = parse_permission(item);
    if (!p) fail("crossing: unknown permission " + item);
    out.push_back({*p, std::nullopt});
  }
  if (const auto* cond = find_tag(tags, kCondition)) {
    auto tokens = split_list(*cond);
    std::size_t next = 0;
    for (auto& d : out) {
      if (d.permission != CrossingPermission::conditional || next >= tokens.size()) continue;
      d.condition = parse_condition(tokens[next++]);
    }
    if (next != tokens.size()) fail("more conditions than conditional crossings");
  }
  return out;
}

void encode_reservation(const ReservationDemand& demand, Tags& tags) {
  tags[std::string(kReservation)] = std::string(to_string(demand.kind));
  if (!demand.entitled.empty()) tags[std::string(kObject)] = participant_list(demand.entitled);
  if (demand.condition) tags[std::string(kCondition)] = condition_token(*demand.condition);
}

ReservationDemand decode_reservation(const Tags& tags) {
  ReservationDemand d;
  const auto* kind = find_tag(tags, kReservation);
  if (!kind) fail("reservation relation without reservation tag");
  const auto k = parse_reservation_kind(*kind);
  if (!k) fail("reservation: unknown kind " + *kind);
  d.kind = *k;
  if (const auto* obj = find_tag(tags, kObject)) d.entitled = parse_participant_list(*obj);
  if (const auto* cond = find_tag(tags, kCondition)) d.condition = parse_condition(*cond);
  return d;
}

}  // namespace bssd::schema
