#pragma once

#include "bssd/model.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace bssd {

enum class Attribute : std::uint8_t { speed, boundary_long, boundary_left, boundary_right, reservation, overtake };

inline constexpr std::array<Attribute, 6> kAllAttributes = {
    Attribute::speed,          Attribute::boundary_long, Attribute::boundary_left,
    Attribute::boundary_right, Attribute::reservation,   Attribute::overtake,
};

std::string_view to_string(Attribute a);

/// SHA-256 over the canonical demand text of a behavior space.
struct Fingerprint {
  std::array<std::uint8_t, 32> digest{};

  std::string hex() const;
  auto operator<=>(const Fingerprint&) const = default;
};

/// Canonical text of the demand content: attribute values, conditions,
/// reservation kinds and entitled sets. Identifiers, geometry refs and link
/// targets are left out, and demand lists are compared as multisets.
std::string canonical_demands(const Behavior& behavior);
std::string canonical_demands(const AtomicBehaviorSpace& space);

Fingerprint behavior_space_fingerprint(const AtomicBehaviorSpace& space);

struct AttributeComparison {
  Attribute attribute = Attribute::speed;
  bool equal = true;
  std::string a;  // rendered value in the first behavior
  std::string b;
};

struct AttributeDiff {
  Direction direction = Direction::along;
  std::array<AttributeComparison, 6> attributes;

  bool all_equal() const;
  std::vector<Attribute> equal_attributes() const;
  std::vector<Attribute> different_attributes() const;
  const AttributeComparison& operator[](Attribute a) const { return attributes[static_cast<std::size_t>(a)]; }
};

AttributeDiff compare_behaviors(const Behavior& a, const Behavior& b);

/// Throws Error(missing_direction) if either space lacks the direction.
AttributeDiff compare_demands(const AtomicBehaviorSpace& a, const AtomicBehaviorSpace& b, Direction direction);

}  // namespace bssd
