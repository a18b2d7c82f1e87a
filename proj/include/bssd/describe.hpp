#pragma once

// Human-readable renderings of demands, shared by `inspect`, `compare` and
// the GeoJSON export. Multiple demands are joined with "; ".

#include "bssd/fingerprint.hpp"
#include "bssd/model.hpp"

#include <string>
#include <vector>

namespace bssd {

/// Plural display name: "pedestrians", "motor_vehicles"; other labels verbatim.
std::string display_name(const ParticipantType& p);

std::string describe(const SpeedAttribute& attr);                // "max 30 km/h"
std::string describe(const std::vector<CrossingDemand>& demands);  // "conditional no_stagnant_traffic"
std::string describe(const ReservationDemand& demand);           // "externally/pedestrians"
std::string describe(const ReservationAttribute& attr);
std::string describe(const OvertakeAttribute& attr);             // "yes"
std::string describe(const Behavior& behavior, Attribute attribute);

/// The six attribute rows printed by `inspect`, one "key: value" per line.
std::string demand_table(const Behavior& behavior);

}  // namespace bssd
