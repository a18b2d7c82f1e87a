#include "bssd/fingerprint.hpp"

#include "bssd/describe.hpp"
#include "bssd/error.hpp"
#include "bssd/tag_schema.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <tuple>

namespace bssd {

std::string_view to_string(Attribute a) {
  switch (a) {
    case Attribute::speed: return "speed";
    case Attribute::boundary_long: return "boundary_long";
    case Attribute::boundary_left: return "boundary_left";
    case Attribute::boundary_right: return "boundary_right";
    case Attribute::reservation: return "reservation";
    case Attribute::overtake: return "overtake";
  }
  return "?";
}

std::string Fingerprint::hex() const {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(digest.size() * 2);
  for (auto byte : digest) {
    out.push_back(kHex[byte >> 4]);
    out.push_back(kHex[byte & 0xf]);
  }
  return out;
}

namespace {

std::string cond_text(const std::optional<Condition>& c) { return c ? schema::condition_token(*c) : "-"; }

std::string sorted_section(std::string_view name, std::vector<std::string> items) {
  std::sort(items.begin(), items.end());
  std::string out(name);
  out += '[';
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ',';
    out += items[i];
  }
  out += ']';
  return out;
}

std::string crossing_section(std::string_view name, const BoundaryAttribute& b) {
  std::vector<std::string> items;
  for (const auto& d : b.demands) items.push_back(std::string(to_string(d.permission)) + "|" + cond_text(d.condition));
  return sorted_section(name, std::move(items));
}

}  // namespace

std::string canonical_demands(const Behavior& behavior) {
  std::vector<std::string> speed;
  for (const auto& d : behavior.speed.demands) {
    speed.push_back(std::string(to_string(d.limit)) + "|" + schema::format_number(d.value_kmh) + "|" +
                    cond_text(d.condition));
  }
  std::vector<std::string> reservation;
  for (const auto& d : behavior.reservation.demands) {
    reservation.push_back(std::string(to_string(d.kind)) + "|" + schema::participant_list(d.entitled) + "|" +
                          cond_text(d.condition));
  }
  std::vector<std::string> overtake;
  for (const auto& d : behavior.overtake.demands) {
    overtake.push_back(std::string(d.permitted ? "yes" : "no") + "|" + cond_text(d.condition));
  }
  return sorted_section("speed", std::move(speed)) + crossing_section("long", behavior.boundary_long) +
         crossing_section("left", behavior.boundary_left) + crossing_section("right", behavior.boundary_right) +
         sorted_section("reservation", std::move(reservation)) + sorted_section("overtake", std::move(overtake));
}

std::string canonical_demands(const AtomicBehaviorSpace& space) {
  std::string out = "along{" + canonical_demands(space.along) + "}";
  out += space.against ? "against{" + canonical_demands(*space.against) + "}" : "against-";
  return out;
}

Fingerprint behavior_space_fingerprint(const AtomicBehaviorSpace& space) {
  const std::string text = canonical_demands(space);
  Fingerprint fp;
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), fp.digest.data(), &len, EVP_sha256(), nullptr) != 1 ||
      len != fp.digest.size()) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  return fp;
}

// ---------------------------------------------------------------------------

namespace {

template <typename T>
bool same_multiset(std::vector<T> a, std::vector<T> b) {
  if (a.size() != b.size()) return false;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

using ReservationContent = std::tuple<ReservationKind, ParticipantSet, std::optional<Condition>>;

std::vector<ReservationContent> reservation_content(const ReservationAttribute& attr) {
  std::vector<ReservationContent> out;
  for (const auto& d : attr.demands) out.emplace_back(d.kind, d.entitled, d.condition);
  return out;
}

bool attribute_equal(const Behavior& a, const Behavior& b, Attribute attribute) {
  switch (attribute) {
    case Attribute::speed: return same_multiset(a.speed.demands, b.speed.demands);
    case Attribute::boundary_long: return same_multiset(a.boundary_long.demands, b.boundary_long.demands);
    case Attribute::boundary_left: return same_multiset(a.boundary_left.demands, b.boundary_left.demands);
    case Attribute::boundary_right: return same_multiset(a.boundary_right.demands, b.boundary_right.demands);
    case Attribute::reservation:
      return same_multiset(reservation_content(a.reservation), reservation_content(b.reservation));
    case Attribute::overtake: return same_multiset(a.overtake.demands, b.overtake.demands);
  }
  return false;
}

}  // namespace

bool AttributeDiff::all_equal() const {
  return std::all_of(attributes.begin(), attributes.end(), [](const auto& c) { return c.equal; });
}

std::vector<Attribute> AttributeDiff::equal_attributes() const {
  std::vector<Attribute> out;
  for (const auto& c : attributes) {
    if (c.equal) out.push_back(c.attribute);
  }
  return out;
}

std::vector<Attribute> AttributeDiff::different_attributes() const {
  std::vector<Attribute> out;
  for (const auto& c : attributes) {
    if (!c.equal) out.push_back(c.attribute);
  }
  return out;
}

AttributeDiff compare_behaviors(const Behavior& a, const Behavior& b) {
  AttributeDiff diff;
  diff.direction = a.direction;
  for (std::size_t i = 0; i < kAllAttributes.size(); ++i) {
    const auto attr = kAllAttributes[i];
    auto& c = diff.attributes[i];
    c.attribute = attr;
    c.equal = attribute_equal(a, b, attr);
    c.a = describe(a, attr);
    c.b = describe(b, attr);
  }
  return diff;
}

AttributeDiff compare_demands(const AtomicBehaviorSpace& a, const AtomicBehaviorSpace& b, Direction direction) {
  const Behavior* ba = a.behavior(direction);
  const Behavior* bb = b.behavior(direction);
  if (!ba || !bb) {
    const auto missing = !ba ? a.id : b.id;
    throw Error(ErrorCode::missing_direction,
                "behavior space " + std::to_string(missing) + " has no " + std::string(to_string(direction)) +
                    " behavior");
  }
  auto diff = compare_behaviors(*ba, *bb);
  diff.direction = direction;
  return diff;
}

}  // namespace bssd
